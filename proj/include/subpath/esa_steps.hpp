#pragma once

// Individual stages of the recursive (skew) ESA construction, exposed so each
// can be tested on its own. build_esa_linear() is the composition.
//
// Terminology: nodes whose depth is congruent to d (mod 3) are "nonsample";
// all others are "sample". Every sample node's third ancestor is sample too,
// so the sample nodes form a contracted forest whose symbols stand for label
// triples.
//
// Besides sa and lcp every level reports, for each adjacent pair of ranks,
// the symbols that follow their common prefix (0 where a suffix ended). The
// parent level turns these into exact label lcps without level-ancestor
// lookups.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "subpath/esa.hpp"

namespace subpath::esa_steps {

/// Forests this small are handed to the reference builder.
inline constexpr std::size_t kBaseCaseSize = 16;

/// lcp of each adjacent rank pair plus the symbol after it on either side.
struct AdjacentLcp {
  std::vector<std::int32_t> lcp;         // lcp[i] pairs ranks i and i + 1; back() is -1
  std::vector<std::int32_t> next_left;   // symbol of rank i at offset lcp[i]
  std::vector<std::int32_t> next_right;  // symbol of rank i + 1 at offset lcp[i]
};

struct SortedLevel {
  TreeSuffixArray esa;  // esa.lcp equals adjacent.lcp
  AdjacentLcp adjacent;
};

/// The residue class holding the most nodes (smallest d on ties).
int choose_depth_class(const LabeledForest& forest);

struct SampleRanks {
  /// Dense rank (>= 1) of the label triple at each sample node; 0 for
  /// nonsample nodes. Missing ancestors count as a symbol below every key.
  std::vector<std::int32_t> name;
  std::int32_t distinct = 0;
  std::size_t sample_count = 0;
  /// Keys spelled by each name; entry 0 is the all-zero end marker.
  std::vector<std::array<std::int32_t, 3>> triple;
};

SampleRanks rank_sample_triples(const LabeledForest& forest, int d);

struct ContractedForest {
  LabeledForest forest;               // parent = third ancestor, key = triple rank
  std::vector<NodeId> to_original;    // contracted id -> original id
  std::vector<NodeId> to_contracted;  // original id -> contracted id or kNoNode
  std::vector<std::int32_t> label_len;  // suffix length in original labels
};

ContractedForest build_contracted(const LabeledForest& forest, int d,
                                  const SampleRanks& ranks);

/// Sorted contracted forest read directly off distinct triple ranks.
SortedLevel sort_distinct_ranks(const ContractedForest& contracted);

/// Sorted forest by bucketing on the first key and ordering each bucket by
/// walking up the suffixes. Gives up once the walks exceed `budget` steps.
std::optional<SortedLevel> sort_few_ties(const LabeledForest& forest, std::size_t budget);

/// Equal-string class of each sample node, named by one plus the first
/// contracted rank holding that string; 0 for nonsample nodes.
std::vector<std::int32_t> sample_classes(const TreeSuffixArray& contracted_esa,
                                         const ContractedForest& contracted,
                                         std::size_t n);

/// Nonsample nodes (class 0) ordered by (key, class of parent), ties by
/// node id.
std::vector<NodeId> sort_nonsample(const LabeledForest& forest,
                                   std::span<const std::int32_t> classes);

/// Two-finger merge of the sample order (original ids) and nonsample order.
std::vector<NodeId> merge_sample_nonsample(const LabeledForest& forest, int d,
                                           std::span<const NodeId> sample_sa,
                                           std::span<const NodeId> nonsample_sa,
                                           std::span<const std::int32_t> classes);

/// Adjacent lcps of the sample order measured in original labels, with the
/// labels that follow them.
AdjacentLcp sample_label_lcp(const SortedLevel& contracted_sorted,
                             const ContractedForest& contracted,
                             const SampleRanks& ranks);

/// Adjacent lcps of the full order: skip up to two leading labels so both
/// suffixes sit on sample nodes, then take a range minimum over the sample
/// label lcps. The symbols after the prefix come from the leftmost and
/// rightmost minimum positions.
AdjacentLcp lift_lcp(const LabeledForest& forest, const ContractedForest& contracted,
                     const TreeSuffixArray& contracted_esa,
                     const AdjacentLcp& sample_lcp, std::span<const NodeId> sa);

/// Recursive construction without renumbering; identical suffixes are
/// ranked by node id.
SortedLevel sort_level(const LabeledForest& forest);

/// Base case: reference sort plus next symbols by direct walks.
SortedLevel sort_level_reference(const LabeledForest& forest);

}  // namespace subpath::esa_steps
