#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// None of them use the ESA builders or the kernel sweep.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "subpath/esa.hpp"
#include "subpath/generate.hpp"
#include "subpath/predict.hpp"
#include "subpath/tree.hpp"

namespace oracle {

using subpath::NodeId;
using subpath::Tree;

inline std::vector<std::int32_t> key_string(const subpath::LabeledForest& f, NodeId v) {
  std::vector<std::int32_t> s;
  for (; v != subpath::kNoNode; v = f.parent[v]) s.push_back(f.key[v]);
  return s;
}

inline std::int32_t common_prefix(const std::vector<std::int32_t>& a,
                                  const std::vector<std::int32_t>& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return static_cast<std::int32_t>(k);
}

/// Sorts materialized suffix strings; ties by node id.
inline subpath::TreeSuffixArray sorted_suffixes(const subpath::LabeledForest& f) {
  const std::size_t n = f.size();
  std::vector<std::vector<std::int32_t>> str(n);
  for (std::size_t v = 0; v < n; ++v) str[v] = key_string(f, static_cast<NodeId>(v));
  subpath::TreeSuffixArray out;
  out.sa.resize(n);
  for (std::size_t v = 0; v < n; ++v) out.sa[v] = static_cast<NodeId>(v);
  std::sort(out.sa.begin(), out.sa.end(), [&](NodeId a, NodeId b) {
    if (str[a] != str[b]) return str[a] < str[b];
    return a < b;
  });
  out.lcp.assign(n, -1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.lcp[i] = common_prefix(str[out.sa[i]], str[out.sa[i + 1]]);
  }
  out.rsa.resize(n);
  out.suffix_len.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.rsa[out.sa[i]] = static_cast<std::int32_t>(i);
  for (std::size_t v = 0; v < n; ++v) out.suffix_len[v] = static_cast<std::int32_t>(str[v].size());
  return out;
}

/// Longest prefix of each suffix of `input` that is a prefix of some suffix of
/// some support tree, by comparing label strings directly.
inline std::vector<std::int32_t> longest_matches(const subpath::SupportSet& support,
                                                 const Tree& input) {
  std::vector<std::vector<subpath::Label>> master;
  for (const auto& sv : support.items) {
    for (std::size_t v = 0; v < sv.tree.size(); ++v) {
      master.push_back(subpath::suffix(sv.tree, static_cast<NodeId>(v)));
    }
  }
  std::vector<std::int32_t> out(input.size(), 0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto s = subpath::suffix(input, static_cast<NodeId>(i));
    for (const auto& m : master) {
      std::size_t k = 0;
      while (k < s.size() && k < m.size() && s[k] == m[k]) ++k;
      out[i] = std::max(out[i], static_cast<std::int32_t>(k));
    }
  }
  return out;
}

/// Random tree whose nodes attach to one of the `window` most recent nodes,
/// giving height around n / window.
inline Tree deep_tree(std::size_t n, int sigma, std::uint64_t seed, std::size_t window) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(0, sigma - 1);
  std::vector<subpath::Label> labels(n);
  std::vector<NodeId> parents(n, subpath::kNoNode);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = label(rng);
    if (i > 0) {
      const std::size_t lo = i > window ? i - window : 0;
      parents[i] = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(lo, i - 1)(rng));
    }
  }
  return Tree::from_parents(labels, parents);
}

/// Mix of shapes used by the randomized suites.
inline Tree any_tree(std::size_t n, int sigma, std::uint64_t seed) {
  switch (seed % 4) {
    case 0: return subpath::random_tree(n, sigma, seed);
    case 1: return deep_tree(n, sigma, seed, 2);
    case 2: return deep_tree(n, sigma, seed, 6);
    default: return seed % 8 == 3 ? subpath::path_tree(n, sigma, seed)
                                  : subpath::star_tree(n, sigma, seed);
  }
}

inline bool close(double a, double b, double scale, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), scale});
}

/// Theorem-style traversal budget 2|T| + (L - 1) * H, with H the longest
/// suffix length.
inline double work_budget(const Tree& t) {
  return 2.0 * static_cast<double>(t.size()) +
         static_cast<double>(t.leaf_count() - 1) * static_cast<double>(t.height());
}

}  // namespace oracle
