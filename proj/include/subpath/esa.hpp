#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subpath/tree.hpp"

namespace subpath {

/// A tree or forest prepared for suffix sorting. Keys are positive symbol
/// ranks (0 is the end-of-suffix sentinel and never a key); every parent id is
/// smaller than its child's id.
struct LabeledForest {
  std::vector<std::int32_t> key;
  std::vector<NodeId> parent;
  std::vector<std::int32_t> depth;
  std::int32_t max_key = 0;

  std::size_t size() const { return key.size(); }

  /// Keys are the tree's labels shifted by one (compressed order-preservingly
  /// when the label range is much wider than the tree).
  static LabeledForest from_tree(const Tree& tree);

  /// Validates keys > 0 and parent[v] < v, and fills depth and max_key.
  static LabeledForest from_arrays(std::vector<std::int32_t> keys,
                                   std::vector<NodeId> parents);
};

/// Suffix array, lcp array and inverse for all node suffixes of a forest.
/// lcp[i] pairs ranks i and i + 1; lcp.back() is -1. Identical suffix strings
/// are ranked by ascending node id.
struct TreeSuffixArray {
  std::vector<NodeId> sa;
  std::vector<std::int32_t> lcp;
  std::vector<std::int32_t> rsa;
  std::vector<std::int32_t> suffix_len;

  std::size_t size() const { return sa.size(); }
  friend bool operator==(const TreeSuffixArray&, const TreeSuffixArray&) = default;
};

enum class EsaBuilder {
  kLinear,     // recursive skew construction
  kReference,  // multikey quicksort over parent chains
};

/// Labels on the path from v up to the root, v first.
std::vector<Label> suffix(const Tree& tree, NodeId v);

TreeSuffixArray build_esa_reference(const LabeledForest& forest);
TreeSuffixArray build_esa_reference(const Tree& tree);

TreeSuffixArray build_esa_linear(const LabeledForest& forest);
TreeSuffixArray build_esa_linear(const Tree& tree);

TreeSuffixArray build_esa(const LabeledForest& forest, EsaBuilder builder);

/// Longest common prefix of the suffixes of u and v, label by label.
std::int32_t naive_lcp(const Tree& tree, NodeId u, NodeId v);
std::int32_t naive_lcp(const LabeledForest& forest, NodeId u, NodeId v);

}  // namespace subpath
