#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "subpath/predict.hpp"

namespace subpath {
namespace {

std::vector<const Tree*> tree_pointers(const SupportSet& support) {
  if (support.items.empty()) throw std::invalid_argument("support set is empty");
  std::vector<const Tree*> out;
  out.reserve(support.items.size());
  for (const auto& sv : support.items) {
    if (!std::isfinite(sv.alpha)) throw std::invalid_argument("non-finite alpha");
    out.push_back(&sv.tree);
  }
  return out;
}

std::size_t max_suffix_len(const TreeSuffixArray& esa) {
  return static_cast<std::size_t>(
      *std::max_element(esa.suffix_len.begin(), esa.suffix_len.end()));
}

}  // namespace

MasterIndex::MasterIndex(const SupportSet& support, const KernelParams& params)
    : master_(merge_forest(tree_pointers(support))),
      esa_(ordinary_suffix_array(master_, EsaBuilder::kLinear)),
      ancestors_(master_.forest.parent, master_.forest.depth),
      weights_(params, max_suffix_len(esa_)),
      bias_(support.bias) {
  alpha_.reserve(support.items.size());
  for (const auto& sv : support.items) alpha_.push_back(sv.alpha);
  build_intervals();
  build_links_and_values();
}

std::span<const std::int32_t> MasterIndex::children_of(std::int32_t node) const {
  const Node& u = nodes_[node];
  return std::span<const std::int32_t>(child_ids_)
      .subspan(static_cast<std::size_t>(u.child_begin),
               static_cast<std::size_t>(u.child_end - u.child_begin));
}

bool MasterIndex::is_leaf(std::int32_t node) const {
  return nodes_[node].child_begin == nodes_[node].child_end;
}

std::int32_t MasterIndex::child_by_key(std::int32_t node, std::int32_t key) const {
  const auto first = child_keys_.begin() + nodes_[node].child_begin;
  const auto last = child_keys_.begin() + nodes_[node].child_end;
  const auto it = std::lower_bound(first, last, key);
  if (it == last || *it != key) return -1;
  return child_ids_[static_cast<std::size_t>(it - child_keys_.begin())];
}

std::int32_t MasterIndex::key_at(NodeId v, std::int32_t offset) const {
  return master_.forest.key[ancestors_.ancestor(v, offset)];
}

std::int32_t MasterIndex::ancestor_at_depth(std::int32_t node, std::int32_t depth) const {
  // The answer is usually a node or two above; the jump table covers the rest.
  for (int step = 0; step < 4; ++step) {
    const std::int32_t up = nodes_[node].parent;
    if (up < 0 || nodes_[up].depth < depth) return node;
    node = up;
  }
  const std::size_t count = nodes_.size();
  for (int k = up_levels_ - 1; k >= 0; --k) {
    const std::int32_t a = up_[static_cast<std::size_t>(k) * count + static_cast<std::size_t>(node)];
    if (nodes_[a].depth >= depth) node = a;
  }
  return node;
}

void MasterIndex::build_intervals() {
  const auto n = static_cast<std::int32_t>(esa_.size());
  leaf_of_rank_.assign(esa_.size(), -1);
  nodes_.clear();
  nodes_.push_back(Node{0, n - 1, 0});
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // (parent, child)
  std::vector<std::int32_t> open{root()};

  const auto attach = [&](std::int32_t child, std::int32_t parent) {
    nodes_[child].parent = parent;
    edges.emplace_back(parent, child);
  };

  std::int32_t r = 0;
  while (r < n) {
    // A run of identical suffixes forms one leaf.
    const std::int32_t first = r;
    while (r + 1 < n && esa_.lcp[r] == esa_.suffix_len[esa_.sa[r]]) ++r;
    const auto leaf = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{first, r, esa_.suffix_len[esa_.sa[r]]});
    for (std::int32_t k = first; k <= r; ++k) leaf_of_rank_[k] = leaf;

    const std::int32_t h = r + 1 < n ? esa_.lcp[r] : 0;
    std::int32_t last = leaf;
    while (nodes_[open.back()].depth > h) {
      const std::int32_t top = open.back();
      open.pop_back();
      nodes_[top].rb = r;
      attach(last, top);
      last = top;
    }
    if (nodes_[open.back()].depth == h) {
      attach(last, open.back());
    } else {
      const auto inner = static_cast<std::int32_t>(nodes_.size());
      nodes_.push_back(Node{nodes_[last].lb, -1, h});
      attach(last, inner);
      open.push_back(inner);
    }
    ++r;
  }

  // Children in rank order, grouped per parent.
  const std::size_t count = nodes_.size();
  std::vector<std::int32_t> begin(count + 1, 0);
  for (const auto& e : edges) ++begin[static_cast<std::size_t>(e.first) + 1];
  for (std::size_t i = 0; i < count; ++i) begin[i + 1] += begin[i];
  child_ids_.assign(edges.size(), -1);
  std::vector<std::int32_t> fill(begin.begin(), begin.end() - 1);
  for (const auto& e : edges) child_ids_[fill[e.first]++] = e.second;
  for (std::size_t i = 0; i < count; ++i) {
    nodes_[i].child_begin = begin[i];
    nodes_[i].child_end = begin[i + 1];
    auto first_child = child_ids_.begin() + begin[i];
    std::sort(first_child, child_ids_.begin() + begin[i + 1],
              [&](std::int32_t a, std::int32_t b) { return nodes_[a].lb < nodes_[b].lb; });
  }
  child_keys_.resize(child_ids_.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::int32_t k = nodes_[i].child_begin; k < nodes_[i].child_end; ++k) {
      Node& c = nodes_[child_ids_[k]];
      c.branch_key = key_at(esa_.sa[c.lb], nodes_[i].depth);
      child_keys_[k] = c.branch_key;
    }
  }

  up_levels_ = std::max(1, static_cast<int>(std::bit_width(count)));
  up_.resize(static_cast<std::size_t>(up_levels_) * count);
  for (std::size_t i = 0; i < count; ++i) {
    up_[i] = nodes_[i].parent < 0 ? static_cast<std::int32_t>(i) : nodes_[i].parent;
  }
  for (int k = 1; k < up_levels_; ++k) {
    const std::int32_t* prev = up_.data() + static_cast<std::size_t>(k - 1) * count;
    std::int32_t* cur = up_.data() + static_cast<std::size_t>(k) * count;
    for (std::size_t i = 0; i < count; ++i) cur[i] = prev[prev[i]];
  }
}

void MasterIndex::build_links_and_values() {
  const std::size_t n = esa_.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    prefix[r + 1] = prefix[r] + alpha_[static_cast<std::size_t>(master_.source[esa_.sa[r]])];
  }
  const auto terminals = static_cast<NodeId>(master_.components);

  // Preorder over the interval tree so parents are finished first.
  std::vector<std::int32_t> stack{root()};
  while (!stack.empty()) {
    const std::int32_t u = stack.back();
    stack.pop_back();
    Node& node = nodes_[u];
    node.wv = prefix[node.rb + 1] - prefix[node.lb];
    if (u == root()) {
      node.val = 0.0;
      node.suffix_link = -1;
    } else {
      const Node& up = nodes_[node.parent];
      node.val = up.val + (weights_[node.depth] - weights_[up.depth]) * node.wv;
      const NodeId next = master_.forest.parent[esa_.sa[node.lb]];
      if (node.depth <= 1 || next < terminals) {
        node.suffix_link = root();
      } else {
        node.suffix_link =
            ancestor_at_depth(leaf_of_rank_[esa_.rsa[next]], node.depth - 1);
      }
    }
    for (std::int32_t c : children_of(u)) stack.push_back(c);
  }
}

MasterIndex build_master_index(const SupportSet& support, const KernelParams& params) {
  return MasterIndex(support, params);
}

}  // namespace subpath
