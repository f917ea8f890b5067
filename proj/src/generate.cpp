#include "subpath/generate.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace subpath {
namespace {

void check_args(std::size_t n, int sigma) {
  if (n == 0) throw std::invalid_argument("tree size must be positive");
  if (sigma <= 0) throw std::invalid_argument("label count must be positive");
}

std::vector<Label> random_labels(std::size_t n, int sigma, std::mt19937_64& rng) {
  std::uniform_int_distribution<Label> pick(0, sigma - 1);
  std::vector<Label> labels(n);
  for (auto& l : labels) l = pick(rng);
  return labels;
}

}  // namespace

Tree random_tree(std::size_t n, int sigma, std::uint64_t seed) {
  check_args(n, sigma);
  std::mt19937_64 rng(seed);
  std::vector<NodeId> parents(n, kNoNode);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(i) - 1);
    parents[i] = pick(rng);
  }
  const auto labels = random_labels(n, sigma, rng);
  return Tree::from_parents(labels, parents);
}

Tree path_tree(std::size_t n, int sigma, std::uint64_t seed) {
  check_args(n, sigma);
  std::mt19937_64 rng(seed);
  std::vector<NodeId> parents(n);
  for (std::size_t i = 0; i < n; ++i) parents[i] = static_cast<NodeId>(i) - 1;
  const auto labels = random_labels(n, sigma, rng);
  return Tree::from_parents(labels, parents);
}

Tree star_tree(std::size_t n, int sigma, std::uint64_t seed) {
  check_args(n, sigma);
  std::mt19937_64 rng(seed);
  std::vector<NodeId> parents(n, 0);
  parents[0] = kNoNode;
  const auto labels = random_labels(n, sigma, rng);
  return Tree::from_parents(labels, parents);
}

Tree join_under_root(std::span<const Tree> parts, Label root_label) {
  std::vector<Label> labels{root_label};
  std::vector<NodeId> parents{kNoNode};
  for (const Tree& part : parts) {
    const auto offset = static_cast<NodeId>(labels.size());
    for (std::size_t v = 0; v < part.size(); ++v) {
      const auto id = static_cast<NodeId>(v);
      labels.push_back(part.label(id));
      parents.push_back(part.parent(id) == kNoNode ? 0 : part.parent(id) + offset);
    }
  }
  return Tree::from_parents(labels, parents);
}

}  // namespace subpath
