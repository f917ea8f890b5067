#pragma once

#include <cstdint>
#include <span>

#include "subpath/tree.hpp"

namespace subpath {

/// Random recursive tree: node i > 0 attaches to a uniformly chosen earlier
/// node, labels uniform over [0, sigma). Deterministic for a fixed seed.
/// Throws std::invalid_argument for n == 0 or sigma == 0.
Tree random_tree(std::size_t n, int sigma, std::uint64_t seed);

/// Single root-to-leaf chain with uniform random labels.
Tree path_tree(std::size_t n, int sigma, std::uint64_t seed);

/// Root with n - 1 leaf children, uniform random labels.
Tree star_tree(std::size_t n, int sigma, std::uint64_t seed);

/// Joins `parts` under a fresh root labeled `root_label`, in order.
Tree join_under_root(std::span<const Tree> parts, Label root_label);

}  // namespace subpath
