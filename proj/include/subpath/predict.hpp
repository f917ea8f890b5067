#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subpath/kernel.hpp"
#include "subpath/level_ancestor.hpp"

namespace subpath {

struct SupportVector {
  Tree tree;
  double alpha = 0.0;
};

struct SupportSet {
  std::vector<SupportVector> items;
  double bias = 0.0;
};

enum class MatchStrategy {
  kSuffixLink,   // resume from the best child's locus through one suffix link
  kRootDescent,  // rematch every suffix from the root (differential oracle)
};

/// Per input node: length of the longest prefix of its suffix that occurs in
/// the master forest, and the suffix-tree node on whose incoming edge (or at
/// which) that match ends.
struct MatchStats {
  std::vector<std::int32_t> length;
  std::vector<std::int32_t> locus;
  /// Label comparisons, child lookups and suffix-link jumps performed.
  std::uint64_t work = 0;
};

/// Index over all support trees that answers f(T) = bias + sum_i alpha_i
/// K(T_i, T) in time independent of the number of support trees.
///
/// The suffix tree of the master forest is simulated by its lcp-interval
/// tree. Runs of identical suffixes collapse into one leaf. Each node keeps
/// its rank range, string depth, weighted count wv (sum of alpha over the
/// component of every rank in range), path value val, and suffix link.
class MasterIndex {
 public:
  struct Node {
    std::int32_t lb = 0;  // first rank
    std::int32_t rb = 0;  // last rank, inclusive
    std::int32_t depth = 0;
    std::int32_t parent = -1;
    std::int32_t suffix_link = -1;
    std::int32_t child_begin = 0;  // range in child arrays
    std::int32_t child_end = 0;
    std::int32_t branch_key = 0;  // first key on the incoming edge
    double wv = 0.0;
    double val = 0.0;
  };

  MasterIndex(const SupportSet& support, const KernelParams& params);

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const std::int32_t> children_of(std::int32_t node) const;
  static constexpr std::int32_t root() { return 0; }
  bool is_leaf(std::int32_t node) const;
  /// Child of `node` whose incoming edge starts with `key`, or -1.
  std::int32_t child_by_key(std::int32_t node, std::int32_t key) const;

  const MergedTree& master() const { return master_; }
  const TreeSuffixArray& esa() const { return esa_; }
  const WeightTable& weights() const { return weights_; }
  double bias() const { return bias_; }
  std::size_t support_size() const { return master_.components; }
  double alpha(std::size_t component) const { return alpha_[component]; }

  /// Master key at `offset` along the suffix of master node v.
  std::int32_t key_at(NodeId v, std::int32_t offset) const;

  /// Shallowest ancestor of `node` (inclusive) whose depth is >= `depth`.
  std::int32_t ancestor_at_depth(std::int32_t node, std::int32_t depth) const;

  /// Leaf holding rank r.
  std::int32_t leaf_of_rank(std::int32_t r) const { return leaf_of_rank_[r]; }

  /// Key a label maps to in the master, or -1.
  std::int32_t key_of(Label label) const { return master_.key_of(label); }

 private:
  void build_intervals();
  void build_links_and_values();

  MergedTree master_;
  TreeSuffixArray esa_;
  LevelAncestorIndex ancestors_;
  WeightTable weights_;
  std::vector<double> alpha_;
  double bias_ = 0.0;

  std::vector<Node> nodes_;
  std::vector<std::int32_t> child_ids_;
  std::vector<std::int32_t> child_keys_;
  std::vector<std::int32_t> leaf_of_rank_;
  std::vector<std::int32_t> up_;  // binary lifting over nodes_, level-major
  int up_levels_ = 0;
};

MasterIndex build_master_index(const SupportSet& support, const KernelParams& params);

MatchStats matching_statistics(const MasterIndex& index, const Tree& tree,
                               MatchStrategy strategy = MatchStrategy::kSuffixLink);

/// bias + sum over nodes i of the value of the matched prefix of suffix i.
double predict(const MasterIndex& index, const Tree& tree,
               MatchStrategy strategy = MatchStrategy::kSuffixLink);

/// bias + sum_i alpha_i * subpath_kernel(T_i, tree).
double predict_direct(const SupportSet& support, const Tree& tree,
                      const KernelParams& params);

}  // namespace subpath
