#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subpath {

using NodeId = std::int32_t;
using Label = std::int32_t;

inline constexpr NodeId kNoNode = -1;

/// Interning table mapping label spellings to dense ids 0..size()-1 in order
/// of first appearance. Trees that are compared against each other must share
/// one Alphabet.
class Alphabet {
 public:
  Alphabet() = default;

  /// Alphabet pre-populated with `sigma` generated spellings
  /// ("a".."z", then "s26", "s27", ...), so ids 0..sigma-1 are printable.
  static Alphabet with_symbols(int sigma);

  Label intern(std::string_view name);
  /// Returns -1 if `name` was never interned.
  Label find(std::string_view name) const;
  const std::string& name(Label id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Label> ids_;
};

/// Rooted labeled tree with preorder node ids. The root is always node 0 and
/// every child id is greater than its parent's.
class Tree {
 public:
  Tree() = default;

  /// Builds a tree from an arbitrary parent array (exactly one entry equal to
  /// kNoNode) and renumbers nodes into preorder, visiting children in
  /// ascending order of their input ids. Throws std::invalid_argument if the
  /// parent array is not a single rooted tree.
  static Tree from_parents(std::span<const Label> labels,
                           std::span<const NodeId> parents);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  NodeId root() const { return 0; }

  Label label(NodeId v) const { return labels_[static_cast<std::size_t>(v)]; }
  NodeId parent(NodeId v) const { return parent_[static_cast<std::size_t>(v)]; }
  std::int32_t depth(NodeId v) const {
    return depth_[static_cast<std::size_t>(v)];
  }
  std::span<const NodeId> children(NodeId v) const;

  std::span<const Label> labels() const { return labels_; }
  std::span<const NodeId> parents() const { return parent_; }
  std::span<const std::int32_t> depths() const { return depth_; }

  /// Number of leaves (L).
  std::size_t leaf_count() const;
  /// Longest root-to-leaf node count, max depth + 1 (H).
  std::int32_t height() const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<NodeId> parent_;
  std::vector<std::int32_t> depth_;
  std::vector<std::int32_t> child_begin_;  // CSR offsets, size n + 1
  std::vector<NodeId> child_list_;
};

}  // namespace subpath
