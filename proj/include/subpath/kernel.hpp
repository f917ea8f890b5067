#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subpath/esa.hpp"
#include "subpath/tree.hpp"

namespace subpath {

/// Decay applied per subpath label; must lie in (0, 1].
struct KernelParams {
  double lambda = 1.0;

  /// Throws std::invalid_argument when lambda is outside (0, 1].
  void validate() const;
};

/// Cumulative decay weights: w[0] = 0, w[n] = lambda + ... + lambda^n.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(const KernelParams& params, std::size_t max_len);

  double operator[](std::size_t n) const { return w_[n]; }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<double> w_;
};

inline WeightTable weight_table(const KernelParams& params, std::size_t max_len) {
  return WeightTable(params, max_len);
}

/// Several trees joined as one forest, each hung below its own terminal.
/// Terminal of component i is node i with key i + 1, so terminals sort below
/// every ordinary label and in component order. Ordinary nodes of component i
/// follow in that tree's preorder, components in order, which makes ascending
/// node id equal ascending (component, node id).
struct MergedTree {
  LabeledForest forest;
  std::vector<std::int32_t> source;  // component of every node (terminals too)
  std::vector<NodeId> offset;        // first ordinary node of each component
  std::size_t components = 0;

  /// Ordinary labels map to keys >= components + 1.
  std::int32_t key_base = 0;
  std::vector<Label> distinct_labels;  // non-empty only when labels were compressed

  /// Key of an ordinary label, or -1 if no component uses it.
  std::int32_t key_of(Label label) const;
  std::size_t ordinary_size() const { return forest.size() - components; }
};

MergedTree merge_trees(const Tree& t1, const Tree& t2);
MergedTree merge_forest(std::span<const Tree* const> trees);

/// ESA of a merged forest restricted to ordinary nodes: terminal suffixes are
/// the smallest strings, so dropping the first `components` ranks leaves the
/// remaining lcps untouched. rsa is -1 for terminals.
TreeSuffixArray ordinary_suffix_array(const MergedTree& merged, EsaBuilder builder);

/// Bottom-up lcp-interval sweep summing (W[depth] - W[parent depth]) *
/// leaves(T1) * leaves(T2) over the simulated suffix tree of a two-component
/// ordinary ESA.
double accumulate_common_prefixes(const TreeSuffixArray& esa,
                                  std::span<const std::int32_t> source,
                                  const WeightTable& weights);

double subpath_kernel(const Tree& t1, const Tree& t2, const KernelParams& params,
                      EsaBuilder builder = EsaBuilder::kLinear);

/// Direct evaluation by enumerating every prefix of every suffix. Meant for
/// small trees.
double subpath_kernel_oracle(const Tree& t1, const Tree& t2,
                             const KernelParams& params);

class GramMatrix {
 public:
  explicit GramMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

/// G[i][j] = K(T_i, T_j), optionally cosine-normalized (0/0 taken as 0).
/// Cells are split across `threads` workers; each cell is computed once and
/// mirrored, so the result does not depend on scheduling.
GramMatrix gram_matrix(std::span<const Tree> trees, const KernelParams& params,
                       bool normalize, unsigned threads = 1);

}  // namespace subpath
