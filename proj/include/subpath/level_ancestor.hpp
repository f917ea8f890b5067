#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subpath/tree.hpp"

namespace subpath {

/// j-th ancestor queries with skew-binary jump pointers: one parent and one
/// jump pointer per node, O(n) construction, O(log n) query. Works on forests
/// (several kNoNode parents). Every parent must precede its children.
class LevelAncestorIndex {
 public:
  LevelAncestorIndex() = default;
  LevelAncestorIndex(std::span<const NodeId> parent,
                     std::span<const std::int32_t> depth);
  explicit LevelAncestorIndex(const Tree& tree)
      : LevelAncestorIndex(tree.parents(), tree.depths()) {}

  /// Node reached by j parent steps from v. Throws std::out_of_range if
  /// j > depth(v) or v is not a node.
  NodeId query(NodeId v, std::int32_t j) const;

  /// query() without argument checks.
  NodeId ancestor(NodeId v, std::int32_t j) const {
    const std::int32_t target = nodes_[static_cast<std::size_t>(v)].depth - j;
    while (nodes_[static_cast<std::size_t>(v)].depth > target) {
      const Node& u = nodes_[static_cast<std::size_t>(v)];
      v = nodes_[static_cast<std::size_t>(u.jump)].depth >= target ? u.jump : u.parent;
    }
    return v;
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    NodeId parent;
    NodeId jump;
    std::int32_t depth;
  };
  std::vector<Node> nodes_;
};

/// Convenience free function mirroring LevelAncestorIndex::query.
inline NodeId level_ancestor(const LevelAncestorIndex& index, NodeId v,
                             std::int32_t j) {
  return index.query(v, j);
}

}  // namespace subpath
