#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "subpath/model_io.hpp"
#include "subpath/predict.hpp"
#include "subpath/tree_io.hpp"

using namespace subpath;

namespace {

Alphabet g_alpha = Alphabet::with_symbols(26);

Tree parse(const char* text) { return parse_tree(text, g_alpha); }

SupportSet random_support(std::uint64_t seed, std::size_t m, std::size_t max_n, int sigma) {
  std::mt19937_64 rng(seed);
  SupportSet s;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = 1 + rng() % max_n;
    const double alpha = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    s.items.push_back({oracle::any_tree(n, sigma, rng()), alpha});
  }
  s.bias = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  return s;
}

// Magnitude of the terms summed by the direct evaluation.
double term_scale(const SupportSet& s, const Tree& t, const KernelParams& p) {
  double scale = std::fabs(s.bias);
  for (const auto& sv : s.items) scale += std::fabs(sv.alpha) * subpath_kernel(sv.tree, t, p);
  return scale;
}

// String of an interval node: the first `depth` keys of its first rank.
std::vector<std::int32_t> node_string(const MasterIndex& idx, std::int32_t u) {
  const auto& node = idx.nodes()[u];
  std::vector<std::int32_t> s;
  for (std::int32_t k = 0; k < node.depth; ++k) s.push_back(idx.key_at(idx.esa().sa[node.lb], k));
  return s;
}

}  // namespace

TEST(MasterIndex, SingleNodeSupport) {
  SupportSet s;
  s.items.push_back({parse("a"), 1.0});
  const MasterIndex idx(s, KernelParams{1.0});
  ASSERT_EQ(idx.nodes().size(), 2u);
  // The leaf spells the label followed by the component terminal.
  EXPECT_EQ(idx.nodes()[1].depth, 2);
  EXPECT_EQ(idx.nodes()[1].parent, 0);
  EXPECT_DOUBLE_EQ(idx.nodes()[1].wv, 1.0);
  EXPECT_DOUBLE_EQ(idx.nodes()[0].wv, 1.0);
}

TEST(MasterIndex, RejectsEmptyOrNonFinite) {
  EXPECT_THROW(MasterIndex(SupportSet{}, KernelParams{1.0}), std::invalid_argument);
  SupportSet s;
  s.items.push_back({parse("a"), std::nan("")});
  EXPECT_THROW(MasterIndex(s, KernelParams{1.0}), std::invalid_argument);
}

TEST(MasterIndex, StructuralInvariants) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SupportSet s = random_support(seed, 1 + seed % 8, 30, 1 + static_cast<int>(seed % 3));
    const MasterIndex idx(s, KernelParams{0.8});
    const auto nodes = idx.nodes();
    const auto& esa = idx.esa();
    const auto n = esa.size();
    EXPECT_LE(nodes.size(), 2 * n);

    double total = 0;
    for (const auto& sv : s.items) total += sv.alpha * static_cast<double>(sv.tree.size());
    EXPECT_NEAR(nodes[0].wv, total, 1e-9 * (1 + std::fabs(total)));

    for (std::size_t u = 0; u < nodes.size(); ++u) {
      const auto& node = nodes[u];
      // wv by direct scan of the rank range.
      double wv = 0;
      for (std::int32_t r = node.lb; r <= node.rb; ++r) {
        wv += idx.alpha(static_cast<std::size_t>(idx.master().source[esa.sa[r]]));
      }
      EXPECT_NEAR(node.wv, wv, 1e-9 * (1 + std::fabs(wv)));

      // Children tile the range at greater depth, sorted by branch key.
      const auto kids = idx.children_of(static_cast<std::int32_t>(u));
      if (!kids.empty()) {
        std::int32_t next = node.lb;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          const auto& c = nodes[kids[i]];
          EXPECT_EQ(c.lb, next);
          next = c.rb + 1;
          EXPECT_GT(c.depth, node.depth);
          EXPECT_EQ(c.parent, static_cast<std::int32_t>(u));
          if (i > 0) {
            EXPECT_LT(nodes[kids[i - 1]].branch_key, c.branch_key);
          }
          EXPECT_EQ(idx.child_by_key(static_cast<std::int32_t>(u), c.branch_key), kids[i]);
        }
        EXPECT_EQ(next, node.rb + 1);
      }

      // Suffix link target spells the string without its first key.
      // Leaves spelling one label plus the terminal link to the root: the
      // terminal-only suffixes are not part of the index.
      const bool label_then_terminal = node.depth == 2 && idx.is_leaf(static_cast<std::int32_t>(u)) &&
                                       idx.master().forest.depth[esa.sa[node.lb]] == 1;
      if (label_then_terminal) {
        EXPECT_EQ(node.suffix_link, MasterIndex::root());
      } else if (u != 0) {
        const auto& link = nodes[node.suffix_link];
        EXPECT_EQ(link.depth, node.depth - 1);
        auto s1 = node_string(idx, static_cast<std::int32_t>(u));
        s1.erase(s1.begin());
        EXPECT_EQ(node_string(idx, node.suffix_link), s1);
      }
    }
  }
}

TEST(MasterIndex, ZeroAlphasGiveZeroValues) {
  SupportSet s = random_support(3, 5, 20, 2);
  for (auto& sv : s.items) sv.alpha = 0.0;
  const MasterIndex idx(s, KernelParams{1.0});
  for (const auto& node : idx.nodes()) {
    EXPECT_EQ(node.wv, 0.0);
    EXPECT_EQ(node.val, 0.0);
  }
  EXPECT_EQ(predict(idx, parse("a(b)")), s.bias);
}

TEST(MatchingStatistics, IdenticalInputMatchesFully) {
  SupportSet s;
  s.items.push_back({parse("a(b(c,a),c(a(b)))"), 1.0});
  const MasterIndex idx(s, KernelParams{1.0});
  const Tree& t = s.items[0].tree;
  const auto ms = matching_statistics(idx, t);
  for (NodeId v = 0; v < static_cast<NodeId>(t.size()); ++v) EXPECT_EQ(ms.length[v], t.depth(v) + 1);
  const auto disjoint = matching_statistics(idx, parse("x(y,z(w))"));
  for (auto l : disjoint.length) EXPECT_EQ(l, 0);
}

TEST(MatchingStatistics, MatchesNaiveSearchAndBounds) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int sigma = 1 + static_cast<int>(seed % 4);
    const SupportSet s = random_support(seed, 1 + seed % 10, 40, sigma);
    const MasterIndex idx(s, KernelParams{1.0});
    const Tree t = oracle::any_tree(1 + seed % 64, sigma + 1, seed + 77);
    const auto want = oracle::longest_matches(s, t);
    for (MatchStrategy strategy : {MatchStrategy::kSuffixLink, MatchStrategy::kRootDescent}) {
      const auto ms = matching_statistics(idx, t, strategy);
      ASSERT_EQ(ms.length, want) << "seed " << seed;
    }
    const auto ms = matching_statistics(idx, t);
    for (NodeId v = 0; v < static_cast<NodeId>(t.size()); ++v) {
      for (NodeId c : t.children(v)) EXPECT_GE(ms.length[v], ms.length[c] - 1);
    }
    EXPECT_LE(static_cast<double>(ms.work), 2.0 * oracle::work_budget(t));
  }
}

TEST(Predict, HandExample) {
  SupportSet s;
  s.items.push_back({parse("a(b)"), 1.0});
  s.items.push_back({parse("a"), 2.0});
  const KernelParams p{1.0};
  const MasterIndex idx(s, p);
  EXPECT_DOUBLE_EQ(predict(idx, parse("a(b)")), 5.0);
  EXPECT_DOUBLE_EQ(predict_direct(s, parse("a(b)"), p), 5.0);
}

TEST(Predict, MatchesDirectEvaluation) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int sigma = 1 + static_cast<int>(seed % 5);
    const double lambda = std::array{0.3, 0.75, 1.0}[seed % 3];
    const SupportSet s = random_support(seed, 1 + seed % 30, 50, sigma);
    const KernelParams p{lambda};
    const MasterIndex idx(s, p);
    const Tree t = oracle::any_tree(1 + seed % 64, sigma, seed + 555);
    const double want = predict_direct(s, t, p);
    const double scale = term_scale(s, t, p);
    EXPECT_TRUE(oracle::close(predict(idx, t), want, scale)) << "seed " << seed;
    EXPECT_TRUE(oracle::close(predict(idx, t, MatchStrategy::kRootDescent), want, scale));
  }
}

TEST(Predict, SingleSupportEqualsKernel) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SupportSet s;
    s.items.push_back({oracle::any_tree(30, 3, seed), 1.0});
    const Tree t = oracle::any_tree(25, 3, seed + 1);
    const KernelParams p{0.6};
    const MasterIndex idx(s, p);
    EXPECT_TRUE(oracle::close(predict(idx, t), subpath_kernel(s.items[0].tree, t, p), 0.0));
  }
}

TEST(ModelIo, ReadsAndWrites) {
  Alphabet alpha;
  std::istringstream in("lambda 0.5\nbias -1.25\n1\ta(b)\n-0.5\tc\n");
  const Model m = read_model(in, alpha);
  EXPECT_EQ(m.params.lambda, 0.5);
  EXPECT_EQ(m.support.bias, -1.25);
  ASSERT_EQ(m.support.items.size(), 2u);
  EXPECT_EQ(m.support.items[1].alpha, -0.5);
  std::ostringstream out;
  write_model(out, m, alpha);
  std::istringstream again(out.str());
  const Model m2 = read_model(again, alpha);
  EXPECT_EQ(m2.support.items[0].tree, m.support.items[0].tree);
  EXPECT_EQ(m2.support.bias, m.support.bias);
}

TEST(ModelIo, BiasIsOptionalAndErrorsCarryLines) {
  Alphabet alpha;
  std::istringstream no_bias("lambda 1\n2\ta\n");
  EXPECT_EQ(read_model(no_bias, alpha).support.bias, 0.0);
  for (const char* bad : {"", "bias 1\n", "lambda 1\n", "lambda x\n1\ta\n", "lambda 1\n1\ta(\n",
                          "lambda 1\nnope\ta\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_model(in, alpha), ParseError) << bad;
  }
  std::istringstream bad_line("lambda 1\n1\ta\n1\tb(\n");
  try {
    read_model(bad_line, alpha);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ModelIo, FormatsSeventeenDigits) {
  EXPECT_EQ(format_real(5.0), "5");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-0.0), "0");
}
