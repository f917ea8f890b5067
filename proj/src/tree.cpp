#include "subpath/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace subpath {

Alphabet Alphabet::with_symbols(int sigma) {
  Alphabet alphabet;
  for (int i = 0; i < sigma; ++i) {
    if (i < 26) {
      alphabet.intern(std::string(1, static_cast<char>('a' + i)));
    } else {
      alphabet.intern("s" + std::to_string(i));
    }
  }
  return alphabet;
}

Label Alphabet::intern(std::string_view name) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(name), static_cast<Label>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

Label Alphabet::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? -1 : it->second;
}

const std::string& Alphabet::name(Label id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size()) {
    throw std::out_of_range("label id " + std::to_string(id) +
                            " not in alphabet");
  }
  return names_[static_cast<std::size_t>(id)];
}

Tree Tree::from_parents(std::span<const Label> labels,
                        std::span<const NodeId> parents) {
  const std::size_t n = labels.size();
  if (n == 0) throw std::invalid_argument("tree must have at least one node");
  if (parents.size() != n) {
    throw std::invalid_argument("labels and parents differ in length");
  }

  NodeId root = kNoNode;
  std::vector<std::int32_t> count(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (labels[v] < 0) throw std::invalid_argument("negative label");
    const NodeId p = parents[v];
    if (p == kNoNode) {
      if (root != kNoNode) throw std::invalid_argument("more than one root");
      root = static_cast<NodeId>(v);
    } else if (p < 0 || static_cast<std::size_t>(p) >= n ||
               static_cast<std::size_t>(p) == v) {
      throw std::invalid_argument("parent index out of range");
    } else {
      ++count[static_cast<std::size_t>(p) + 1];
    }
  }
  if (root == kNoNode) throw std::invalid_argument("no root");

  // Children of the input in ascending input-id order (counting sort).
  for (std::size_t v = 0; v < n; ++v) count[v + 1] += count[v];
  std::vector<NodeId> kids(n > 0 ? n - 1 : 0);
  {
    std::vector<std::int32_t> fill(count.begin(), count.end() - 1);
    for (std::size_t v = 0; v < n; ++v) {
      const NodeId p = parents[v];
      if (p != kNoNode) {
        kids[static_cast<std::size_t>(fill[static_cast<std::size_t>(p)]++)] =
            static_cast<NodeId>(v);
      }
    }
  }

  // Iterative preorder; unreachable nodes mean a cycle.
  Tree t;
  t.labels_.resize(n);
  t.parent_.resize(n);
  t.depth_.resize(n);
  std::vector<NodeId> new_id(n, kNoNode);
  std::vector<NodeId> stack{root};
  NodeId next = 0;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    const NodeId id = next++;
    new_id[static_cast<std::size_t>(v)] = id;
    t.labels_[static_cast<std::size_t>(id)] = labels[static_cast<std::size_t>(v)];
    const NodeId p = parents[static_cast<std::size_t>(v)];
    if (p == kNoNode) {
      t.parent_[static_cast<std::size_t>(id)] = kNoNode;
      t.depth_[static_cast<std::size_t>(id)] = 0;
    } else {
      const NodeId np = new_id[static_cast<std::size_t>(p)];
      t.parent_[static_cast<std::size_t>(id)] = np;
      t.depth_[static_cast<std::size_t>(id)] =
          t.depth_[static_cast<std::size_t>(np)] + 1;
    }
    const auto b = count[static_cast<std::size_t>(v)];
    const auto e = count[static_cast<std::size_t>(v) + 1];
    for (auto k = e; k > b; --k) stack.push_back(kids[static_cast<std::size_t>(k - 1)]);
  }
  if (static_cast<std::size_t>(next) != n) {
    throw std::invalid_argument("parent array contains a cycle");
  }

  // Preorder ids: children of v appear in increasing id order already.
  t.child_begin_.assign(n + 1, 0);
  for (std::size_t v = 1; v < n; ++v) {
    ++t.child_begin_[static_cast<std::size_t>(t.parent_[v]) + 1];
  }
  for (std::size_t v = 0; v < n; ++v) t.child_begin_[v + 1] += t.child_begin_[v];
  t.child_list_.resize(n - 1);
  std::vector<std::int32_t> fill(t.child_begin_.begin(), t.child_begin_.end() - 1);
  for (std::size_t v = 1; v < n; ++v) {
    const auto p = static_cast<std::size_t>(t.parent_[v]);
    t.child_list_[static_cast<std::size_t>(fill[p]++)] = static_cast<NodeId>(v);
  }
  return t;
}

std::span<const NodeId> Tree::children(NodeId v) const {
  const auto b = static_cast<std::size_t>(child_begin_[static_cast<std::size_t>(v)]);
  const auto e = static_cast<std::size_t>(child_begin_[static_cast<std::size_t>(v) + 1]);
  return std::span<const NodeId>(child_list_).subspan(b, e - b);
}

std::size_t Tree::leaf_count() const {
  std::size_t leaves = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    if (child_begin_[v] == child_begin_[v + 1]) ++leaves;
  }
  return leaves;
}

std::int32_t Tree::height() const {
  if (depth_.empty()) return 0;
  return *std::max_element(depth_.begin(), depth_.end()) + 1;
}

}  // namespace subpath
