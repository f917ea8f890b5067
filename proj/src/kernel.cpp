#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "subpath/kernel.hpp"

namespace subpath {

void KernelParams::validate() const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in (0, 1], got " +
                                std::to_string(lambda));
  }
}

WeightTable::WeightTable(const KernelParams& params, std::size_t max_len) {
  params.validate();
  w_.resize(max_len + 1);
  w_[0] = 0.0;
  double power = 1.0;
  for (std::size_t n = 1; n <= max_len; ++n) {
    power *= params.lambda;
    w_[n] = w_[n - 1] + power;
  }
}

double accumulate_common_prefixes(const TreeSuffixArray& esa,
                                  std::span<const std::int32_t> source,
                                  const WeightTable& w) {
  // Open lcp-intervals with their per-source leaf counts. Depths strictly
  // increase from the sentinel upward.
  struct Frame {
    std::int64_t l1;
    std::int64_t l2;
    std::int32_t h;
  };
  std::vector<Frame> stack{{0, 0, -1}};
  double kernel = 0.0;
  const std::size_t n = esa.size();
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = esa.sa[i];
    const std::int32_t len = esa.suffix_len[v];
    const std::int64_t in1 = source[v] == 0 ? 1 : 0;
    if (stack.back().h == len) {
      // Identical to the previous suffix.
      stack.back().l1 += in1;
      stack.back().l2 += 1 - in1;
    } else {
      stack.push_back({in1, 1 - in1, len});
    }
    const std::int32_t next = i + 1 < n ? esa.lcp[i] : -1;
    while (stack.back().h > next) {
      const Frame top = stack.back();
      stack.pop_back();
      const std::int32_t parent_h = std::max(stack.back().h, next);
      const double span = w[static_cast<std::size_t>(top.h)] -
                          w[static_cast<std::size_t>(std::max(parent_h, 0))];
      kernel += span * static_cast<double>(top.l1) * static_cast<double>(top.l2);
      if (stack.back().h >= next) {
        stack.back().l1 += top.l1;
        stack.back().l2 += top.l2;
      } else {
        stack.push_back({top.l1, top.l2, next});
      }
    }
  }
  return kernel + 0.0;  // never -0.0
}

double subpath_kernel(const Tree& t1, const Tree& t2, const KernelParams& params,
                      EsaBuilder builder) {
  params.validate();
  const MergedTree merged = merge_trees(t1, t2);
  const TreeSuffixArray esa = ordinary_suffix_array(merged, builder);
  const auto max_len = static_cast<std::size_t>(
      *std::max_element(esa.suffix_len.begin(), esa.suffix_len.end()));
  return accumulate_common_prefixes(esa, merged.source, WeightTable(params, max_len));
}

}  // namespace subpath
