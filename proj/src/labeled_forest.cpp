#include <algorithm>
#include <stdexcept>

#include "subpath/esa.hpp"

namespace subpath {

LabeledForest LabeledForest::from_tree(const Tree& tree) {
  std::vector<std::int32_t> keys(tree.labels().begin(), tree.labels().end());
  const std::int32_t max_label =
      keys.empty() ? 0 : *std::max_element(keys.begin(), keys.end());
  if (static_cast<std::size_t>(max_label) > 2 * keys.size()) {
    std::vector<std::int32_t> distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (auto& k : keys) {
      k = static_cast<std::int32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin());
    }
  }
  for (auto& k : keys) ++k;
  return from_arrays(std::move(keys),
                     std::vector<NodeId>(tree.parents().begin(), tree.parents().end()));
}

LabeledForest LabeledForest::from_arrays(std::vector<std::int32_t> keys,
                                         std::vector<NodeId> parents) {
  if (keys.size() != parents.size()) {
    throw std::invalid_argument("keys and parents differ in length");
  }
  LabeledForest f;
  f.depth.resize(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    if (keys[v] <= 0) throw std::invalid_argument("forest keys must be positive");
    const NodeId p = parents[v];
    if (p == kNoNode) {
      f.depth[v] = 0;
    } else if (p < 0 || static_cast<std::size_t>(p) >= v) {
      throw std::invalid_argument("forest parents must precede their children");
    } else {
      f.depth[v] = f.depth[p] + 1;
    }
    f.max_key = std::max(f.max_key, keys[v]);
  }
  f.key = std::move(keys);
  f.parent = std::move(parents);
  return f;
}

std::vector<Label> suffix(const Tree& tree, NodeId v) {
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(tree.depth(v)) + 1);
  for (; v != kNoNode; v = tree.parent(v)) out.push_back(tree.label(v));
  return out;
}

std::int32_t naive_lcp(const LabeledForest& forest, NodeId u, NodeId v) {
  std::int32_t n = 0;
  while (u != kNoNode && v != kNoNode && forest.key[u] == forest.key[v]) {
    ++n;
    u = forest.parent[u];
    v = forest.parent[v];
  }
  return n;
}

std::int32_t naive_lcp(const Tree& tree, NodeId u, NodeId v) {
  std::int32_t n = 0;
  while (u != kNoNode && v != kNoNode && tree.label(u) == tree.label(v)) {
    ++n;
    u = tree.parent(u);
    v = tree.parent(v);
  }
  return n;
}

TreeSuffixArray build_esa_reference(const Tree& tree) {
  return build_esa_reference(LabeledForest::from_tree(tree));
}

TreeSuffixArray build_esa_linear(const Tree& tree) {
  return build_esa_linear(LabeledForest::from_tree(tree));
}

TreeSuffixArray build_esa(const LabeledForest& forest, EsaBuilder builder) {
  return builder == EsaBuilder::kLinear ? build_esa_linear(forest)
                                        : build_esa_reference(forest);
}

}  // namespace subpath
