#include <gtest/gtest.h>

#include "oracles.hpp"
#include "subpath/esa_steps.hpp"
#include "subpath/rmq.hpp"
#include "subpath/tree_io.hpp"

using namespace subpath;
namespace steps = subpath::esa_steps;

namespace {

Tree parse(const char* text) {
  Alphabet alpha = Alphabet::with_symbols(26);
  return parse_tree(text, alpha);
}

}  // namespace

TEST(Suffix, ReadsLabelsUpToTheRoot) {
  const Tree t = parse("a(b(c))");
  EXPECT_EQ(suffix(t, 2), (std::vector<Label>{2, 1, 0}));
  EXPECT_EQ(suffix(t, 0), (std::vector<Label>{0}));
}

TEST(Esa, SmallExamples) {
  for (EsaBuilder b : {EsaBuilder::kLinear, EsaBuilder::kReference}) {
    const auto e1 = build_esa(LabeledForest::from_tree(parse("a(b)")), b);
    EXPECT_EQ(e1.sa, (std::vector<NodeId>{0, 1}));
    EXPECT_EQ(e1.lcp, (std::vector<std::int32_t>{0, -1}));
    const auto e2 = build_esa(LabeledForest::from_tree(parse("a(b,b)")), b);
    EXPECT_EQ(e2.sa, (std::vector<NodeId>{0, 1, 2}));
    EXPECT_EQ(e2.lcp, (std::vector<std::int32_t>{0, 2, -1}));
    EXPECT_EQ(e2.rsa, (std::vector<std::int32_t>{0, 1, 2}));
    EXPECT_EQ(e2.suffix_len, (std::vector<std::int32_t>{1, 2, 2}));
  }
}

TEST(Esa, BuildersMatchSortedSuffixes) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int sigma = std::array{1, 2, 3, 5, 26}[seed % 5];
    const Tree t = oracle::any_tree(1 + seed % 120, sigma, seed);
    const auto f = LabeledForest::from_tree(t);
    const auto expected = oracle::sorted_suffixes(f);
    ASSERT_EQ(build_esa_reference(f), expected) << "seed " << seed;
    ASSERT_EQ(build_esa_linear(f), expected) << "seed " << seed;
  }
}

TEST(Esa, LinearMatchesReferenceOnLargerTrees) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Tree t = oracle::any_tree(500 + 97 * seed, 1 + static_cast<int>(seed % 4), seed);
    ASSERT_EQ(build_esa_linear(t), build_esa_reference(t)) << "seed " << seed;
  }
}

TEST(Esa, ForestsWithSeveralRoots) {
  const auto f = LabeledForest::from_arrays({1, 2, 3, 3, 3, 3}, {kNoNode, kNoNode, 0, 1, 2, 3});
  EXPECT_EQ(build_esa_linear(f), oracle::sorted_suffixes(f));
  EXPECT_EQ(build_esa_reference(f), oracle::sorted_suffixes(f));
  EXPECT_THROW(LabeledForest::from_arrays({1, 0}, {kNoNode, 0}), std::invalid_argument);
  EXPECT_THROW(LabeledForest::from_arrays({1, 1}, {1, kNoNode}), std::invalid_argument);
}

TEST(Esa, LcpIsRangeMinimumOverRanks) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Tree t = oracle::any_tree(32, 2, seed);
    const auto esa = build_esa_linear(t);
    const RmqIndex idx(esa.lcp);
    for (NodeId u = 0; u < 32; ++u) {
      for (NodeId v = 0; v < 32; ++v) {
        if (u == v) continue;
        const auto [lo, hi] = std::minmax(esa.rsa[u], esa.rsa[v]);
        EXPECT_EQ(naive_lcp(t, u, v), rmq(idx, static_cast<std::size_t>(lo),
                                          static_cast<std::size_t>(hi - 1)));
      }
    }
  }
}

// lcp and following symbols of every adjacent pair in `sa`, by walking up.
void expect_adjacent(const LabeledForest& f, const std::vector<NodeId>& sa,
                     const steps::AdjacentLcp& adj) {
  ASSERT_EQ(adj.lcp.size(), sa.size());
  for (std::size_t i = 0; i + 1 < sa.size(); ++i) {
    NodeId x = sa[i], y = sa[i + 1];
    std::int32_t k = 0;
    while (x != kNoNode && y != kNoNode && f.key[x] == f.key[y]) {
      x = f.parent[x];
      y = f.parent[y];
      ++k;
    }
    EXPECT_EQ(adj.lcp[i], k) << "rank " << i;
    EXPECT_EQ(adj.next_left[i], x == kNoNode ? 0 : f.key[x]) << "rank " << i;
    EXPECT_EQ(adj.next_right[i], y == kNoNode ? 0 : f.key[y]) << "rank " << i;
  }
  if (!sa.empty()) {
    EXPECT_EQ(adj.lcp.back(), -1);
  }
}

// The individual stages of the linear builder, checked against direct
// definitions on one mid-sized forest per seed.
class LinearSteps : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(LinearSteps, EachStageMatchesItsDefinition) {
  const std::uint64_t seed = GetParam();
  const Tree t = oracle::any_tree(200, 1 + static_cast<int>(seed % 3), seed);
  const auto f = LabeledForest::from_tree(t);
  const std::size_t n = f.size();

  const int d = steps::choose_depth_class(f);
  std::array<std::size_t, 3> count{};
  for (auto dep : f.depth) ++count[static_cast<std::size_t>(dep % 3)];
  EXPECT_EQ(count[static_cast<std::size_t>(d)], *std::max_element(count.begin(), count.end()));

  // Triple names order sample nodes by (key, key of parent, key of grandparent).
  const auto ranks = steps::rank_sample_triples(f, d);
  const auto triple = [&](NodeId v) {
    std::array<std::int32_t, 3> k{};
    for (int j = 0; j < 3 && v != kNoNode; ++j, v = f.parent[v]) k[j] = f.key[v];
    return k;
  };
  std::vector<NodeId> sample;
  for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) {
    const bool is_sample = f.depth[v] % 3 != d;
    EXPECT_EQ(ranks.name[v] > 0, is_sample);
    if (is_sample) sample.push_back(v);
  }
  EXPECT_EQ(ranks.sample_count, sample.size());
  for (NodeId a : sample) {
    EXPECT_EQ(ranks.triple[static_cast<std::size_t>(ranks.name[a])], triple(a));
    for (NodeId b : sample) {
      EXPECT_EQ(triple(a) < triple(b), ranks.name[a] < ranks.name[b]);
    }
  }
  EXPECT_EQ(ranks.triple.size(), static_cast<std::size_t>(ranks.distinct) + 1);

  // Contracted forest: third ancestors, keys are names.
  const auto c = steps::build_contracted(f, d, ranks);
  ASSERT_EQ(c.forest.size(), sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const NodeId v = c.to_original[i];
    EXPECT_EQ(v, sample[i]);
    EXPECT_EQ(c.forest.key[i], ranks.name[v]);
    EXPECT_EQ(c.label_len[i], f.depth[v] + 1);
    const NodeId up = f.depth[v] >= 3 ? f.parent[f.parent[f.parent[v]]] : kNoNode;
    EXPECT_EQ(c.forest.parent[i], up == kNoNode ? kNoNode : c.to_contracted[up]);
  }

  // Full pipeline on the contracted forest through the reference builder.
  const auto sub = steps::sort_level_reference(c.forest);
  expect_adjacent(c.forest, sub.esa.sa, sub.adjacent);
  const auto& ce = sub.esa;
  const auto classes = steps::sample_classes(ce, c, n);
  const auto full = oracle::sorted_suffixes(f);
  const auto str = [&](NodeId v) { return oracle::key_string(f, v); };
  for (NodeId a : sample) {
    for (NodeId b : sample) {
      EXPECT_EQ(str(a) < str(b), classes[a] < classes[b]);
      EXPECT_EQ(str(a) == str(b), classes[a] == classes[b]);
    }
  }

  std::vector<NodeId> sample_sa;
  for (NodeId v : ce.sa) sample_sa.push_back(c.to_original[v]);
  std::vector<NodeId> nonsample_expected;
  for (NodeId v : full.sa) {
    if (f.depth[v] % 3 == d) nonsample_expected.push_back(v);
  }
  const auto nonsample = steps::sort_nonsample(f, classes);
  EXPECT_EQ(nonsample, nonsample_expected);

  const auto merged = steps::merge_sample_nonsample(f, d, sample_sa, nonsample, classes);
  EXPECT_EQ(merged, full.sa);

  const auto sample_lcp = steps::sample_label_lcp(sub, c, ranks);
  expect_adjacent(f, sample_sa, sample_lcp);

  const auto lifted = steps::lift_lcp(f, c, ce, sample_lcp, merged);
  EXPECT_EQ(lifted.lcp, full.lcp);
  expect_adjacent(f, merged, lifted);

  const auto level = steps::sort_level(f);
  EXPECT_EQ(level.esa, build_esa_reference(f));
  expect_adjacent(f, level.esa.sa, level.adjacent);
}

INSTANTIATE_TEST_SUITE_P(Seeds, LinearSteps, ::testing::Range<std::uint64_t>(0, 12));

TEST(LinearSteps, DistinctNamesReadOrderDirectly) {
  // A path with all-distinct labels has all-distinct triples.
  std::vector<std::int32_t> keys;
  std::vector<NodeId> parents;
  for (int i = 0; i < 40; ++i) {
    keys.push_back(1 + (i * 17) % 40);
    parents.push_back(i == 0 ? kNoNode : i - 1);
  }
  const auto f = LabeledForest::from_arrays(keys, parents);
  const int d = steps::choose_depth_class(f);
  const auto ranks = steps::rank_sample_triples(f, d);
  EXPECT_EQ(static_cast<std::size_t>(ranks.distinct), ranks.sample_count);
  const auto c = steps::build_contracted(f, d, ranks);
  const auto level = steps::sort_distinct_ranks(c);
  EXPECT_EQ(level.esa, build_esa_reference(c.forest));
  expect_adjacent(c.forest, level.esa.sa, level.adjacent);
}

TEST(LinearSteps, FewTiesMatchReferenceOrGiveUp) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Tree t = oracle::any_tree(1 + seed % 150, 1 + static_cast<int>(seed % 6), seed);
    const auto f = LabeledForest::from_tree(t);
    const auto sorted = steps::sort_few_ties(f, f.size() * f.size());
    ASSERT_TRUE(sorted.has_value());
    EXPECT_EQ(sorted->esa, build_esa_reference(f)) << "seed " << seed;
    expect_adjacent(f, sorted->esa.sa, sorted->adjacent);
  }
  // Equal keys all the way up: no budget short of the path length suffices.
  const auto path = LabeledForest::from_arrays(std::vector<std::int32_t>(50, 1), [] {
    std::vector<NodeId> p(50);
    for (int i = 0; i < 50; ++i) p[static_cast<std::size_t>(i)] = i - 1;
    return p;
  }());
  EXPECT_FALSE(steps::sort_few_ties(path, 10).has_value());
  EXPECT_TRUE(steps::sort_few_ties(path, 50 * 50 * 50).has_value());
}
