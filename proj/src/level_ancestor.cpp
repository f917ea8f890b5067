#include "subpath/level_ancestor.hpp"

#include <stdexcept>
#include <string>

namespace subpath {

LevelAncestorIndex::LevelAncestorIndex(std::span<const NodeId> parent,
                                       std::span<const std::int32_t> depth) {
  if (depth.size() != parent.size()) {
    throw std::invalid_argument("parent and depth arrays differ in length");
  }
  const std::size_t n = parent.size();
  nodes_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const NodeId p = parent[v];
    const auto self = static_cast<NodeId>(v);
    if (p == kNoNode) {
      nodes_[v] = {kNoNode, self, depth[v]};
      continue;
    }
    if (p >= self) throw std::invalid_argument("parent must precede child");
    // Jump twice as far as the parent's jump when the parent's two jumps
    // have equal length; otherwise jump to the parent.
    const Node& up = nodes_[static_cast<std::size_t>(p)];
    const Node& j1 = nodes_[static_cast<std::size_t>(up.jump)];
    const Node& j2 = nodes_[static_cast<std::size_t>(j1.jump)];
    const bool doubled = up.depth - j1.depth == j1.depth - j2.depth;
    nodes_[v] = {p, doubled ? j1.jump : p, depth[v]};
  }
}

NodeId LevelAncestorIndex::query(NodeId v, std::int32_t j) const {
  if (v < 0 || static_cast<std::size_t>(v) >= nodes_.size()) {
    throw std::out_of_range("node " + std::to_string(v) + " out of range");
  }
  if (j < 0 || j > nodes_[static_cast<std::size_t>(v)].depth) {
    throw std::out_of_range("ancestor distance " + std::to_string(j) +
                            " exceeds depth of node " + std::to_string(v));
  }
  return ancestor(v, j);
}

}  // namespace subpath
