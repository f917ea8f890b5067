#include <cmath>
#include <map>
#include <utility>

#include "subpath/kernel.hpp"

namespace subpath {
namespace {

void count_prefixes(const Tree& t, std::size_t side,
                    std::map<std::vector<Label>, std::pair<std::int64_t, std::int64_t>>& counts) {
  std::vector<Label> prefix;
  for (std::size_t v = 0; v < t.size(); ++v) {
    prefix.clear();
    for (NodeId u = static_cast<NodeId>(v); u != kNoNode; u = t.parent(u)) {
      prefix.push_back(t.label(u));
      auto& c = counts[prefix];
      (side == 0 ? c.first : c.second) += 1;
    }
  }
}

}  // namespace

double subpath_kernel_oracle(const Tree& t1, const Tree& t2,
                             const KernelParams& params) {
  params.validate();
  std::map<std::vector<Label>, std::pair<std::int64_t, std::int64_t>> counts;
  count_prefixes(t1, 0, counts);
  count_prefixes(t2, 1, counts);
  double k = 0.0;
  for (const auto& [prefix, c] : counts) {
    if (c.first == 0 || c.second == 0) continue;
    k += std::pow(params.lambda, static_cast<double>(prefix.size())) *
         static_cast<double>(c.first) * static_cast<double>(c.second);
  }
  return k;
}

}  // namespace subpath
