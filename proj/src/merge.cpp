#include <algorithm>
#include <stdexcept>

#include "subpath/kernel.hpp"

namespace subpath {

std::int32_t MergedTree::key_of(Label label) const {
  if (!distinct_labels.empty()) {
    auto it = std::lower_bound(distinct_labels.begin(), distinct_labels.end(), label);
    if (it == distinct_labels.end() || *it != label) return -1;
    return key_base + static_cast<std::int32_t>(it - distinct_labels.begin());
  }
  if (label < 0 || key_base + label > forest.max_key) return -1;
  return key_base + label;
}

MergedTree merge_trees(const Tree& t1, const Tree& t2) {
  const Tree* trees[] = {&t1, &t2};
  return merge_forest(trees);
}

MergedTree merge_forest(std::span<const Tree* const> trees) {
  MergedTree out;
  const std::size_t m = trees.size();
  out.components = m;
  out.key_base = static_cast<std::int32_t>(m) + 1;

  std::size_t total = m;
  Label max_label = 0;
  for (const Tree* t : trees) {
    if (t->empty()) throw std::invalid_argument("cannot merge an empty tree");
    total += t->size();
    for (Label l : t->labels()) max_label = std::max(max_label, l);
  }
  if (static_cast<std::size_t>(max_label) > 2 * total) {
    for (const Tree* t : trees) {
      out.distinct_labels.insert(out.distinct_labels.end(), t->labels().begin(),
                                 t->labels().end());
    }
    std::sort(out.distinct_labels.begin(), out.distinct_labels.end());
    out.distinct_labels.erase(
        std::unique(out.distinct_labels.begin(), out.distinct_labels.end()),
        out.distinct_labels.end());
  }

  std::vector<std::int32_t> keys;
  std::vector<NodeId> parents;
  keys.reserve(total);
  parents.reserve(total);
  out.source.reserve(total);
  for (std::size_t i = 0; i < m; ++i) {
    keys.push_back(static_cast<std::int32_t>(i) + 1);
    parents.push_back(kNoNode);
    out.source.push_back(static_cast<std::int32_t>(i));
  }
  // key_of() needs max_key for the uncompressed case.
  out.forest.max_key = out.key_base + max_label;
  for (std::size_t i = 0; i < m; ++i) {
    const Tree& t = *trees[i];
    const auto offset = static_cast<NodeId>(keys.size());
    out.offset.push_back(offset);
    for (std::size_t v = 0; v < t.size(); ++v) {
      const auto id = static_cast<NodeId>(v);
      keys.push_back(out.key_of(t.label(id)));
      parents.push_back(t.parent(id) == kNoNode ? static_cast<NodeId>(i)
                                                : t.parent(id) + offset);
      out.source.push_back(static_cast<std::int32_t>(i));
    }
  }
  out.forest = LabeledForest::from_arrays(std::move(keys), std::move(parents));
  return out;
}

TreeSuffixArray ordinary_suffix_array(const MergedTree& merged, EsaBuilder builder) {
  TreeSuffixArray full = build_esa(merged.forest, builder);
  const std::size_t m = merged.components;
  for (std::size_t i = 0; i < m; ++i) {
    if (full.sa[i] != static_cast<NodeId>(i)) {
      throw std::logic_error("terminal suffixes are not ranked first");
    }
  }
  full.sa.erase(full.sa.begin(), full.sa.begin() + static_cast<std::ptrdiff_t>(m));
  full.lcp.erase(full.lcp.begin(), full.lcp.begin() + static_cast<std::ptrdiff_t>(m));
  for (std::size_t v = 0; v < full.rsa.size(); ++v) {
    full.rsa[v] = v < m ? -1 : full.rsa[v] - static_cast<std::int32_t>(m);
  }
  return full;
}

}  // namespace subpath
