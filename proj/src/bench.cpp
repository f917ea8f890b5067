#include "subpath/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "subpath/generate.hpp"
#include "subpath/model_io.hpp"
#include "subpath/predict.hpp"

namespace subpath {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

volatile double g_sink = 0.0;

std::vector<Tree> support_pool(const PredictBenchConfig& c, std::size_t count,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(c.min_nodes, c.max_nodes);
  std::vector<Tree> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_tree(size(rng), c.sigma, rng()));
  return out;
}

SupportSet first_support(const std::vector<Tree>& pool, std::size_t m) {
  SupportSet s;
  for (std::size_t i = 0; i < m; ++i) s.items.push_back({pool[i], 1.0});
  return s;
}

}  // namespace

double median_seconds(const std::function<void()>& fn, int runs,
                      double min_sample_seconds) {
  auto start = Clock::now();
  fn();
  const double warm = seconds_since(start);
  const long reps = warm >= min_sample_seconds
                        ? 1
                        : static_cast<long>(std::ceil(min_sample_seconds / std::max(warm, 1e-7)));
  std::vector<double> samples;
  for (int r = 0; r < runs; ++r) {
    start = Clock::now();
    for (long k = 0; k < reps; ++k) fn();
    samples.push_back(seconds_since(start) / static_cast<double>(reps));
  }
  std::nth_element(samples.begin(), samples.begin() + runs / 2, samples.end());
  return samples[static_cast<std::size_t>(runs / 2)];
}

std::vector<double> interleaved_median_seconds(const std::vector<std::function<void()>>& fns,
                                               int runs, double min_sample_seconds) {
  std::vector<long> reps;
  for (const auto& fn : fns) {
    const auto start = Clock::now();
    fn();
    const double warm = seconds_since(start);
    reps.push_back(warm >= min_sample_seconds
                       ? 1
                       : static_cast<long>(std::ceil(min_sample_seconds / std::max(warm, 1e-7))));
  }
  std::vector<std::vector<double>> samples(fns.size());
  for (int r = 0; r < runs; ++r) {
    for (std::size_t i = 0; i < fns.size(); ++i) {
      const auto start = Clock::now();
      for (long k = 0; k < reps[i]; ++k) fns[i]();
      samples[i].push_back(seconds_since(start) / static_cast<double>(reps[i]));
    }
  }
  std::vector<double> out;
  for (auto& s : samples) {
    std::nth_element(s.begin(), s.begin() + runs / 2, s.end());
    out.push_back(s[static_cast<std::size_t>(runs / 2)]);
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope needs at least two matching points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double BenchReport::slope(std::size_t s) const {
  return loglog_slope(sizes, median_seconds[s]);
}

double BenchReport::spread(std::size_t s) const {
  const auto [lo, hi] = std::minmax_element(median_seconds[s].begin(), median_seconds[s].end());
  return *hi / *lo;
}

void BenchReport::write(std::ostream& out) const {
  out << "# " << title << " (median of " << runs << " runs, seconds per call)\n";
  out << size_label;
  for (const auto& s : series) out << '\t' << s;
  out << '\n';
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out << static_cast<std::uint64_t>(sizes[i]);
    for (std::size_t s = 0; s < series.size(); ++s) {
      out << '\t' << format_real(median_seconds[s][i]);
    }
    out << '\n';
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "slope\t" << series[s] << '\t' << format_real(slope(s)) << '\n';
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "spread\t" << series[s] << '\t' << format_real(spread(s)) << '\n';
  }
}

BenchReport bench_kernel(const KernelBenchConfig& c) {
  BenchReport report;
  report.title = "kernel evaluation, random tree pairs, sigma=" + std::to_string(c.sigma);
  report.size_label = "nodes_per_tree";
  report.series = {"proposed"};
  if (c.include_reference) report.series.push_back("multikey");
  const std::size_t series = report.series.size();
  report.median_seconds.resize(series);
  report.runs = c.runs;
  const KernelParams params{1.0};
  std::vector<std::pair<Tree, Tree>> pairs;
  for (int e = c.min_exp; e <= c.max_exp; ++e) {
    const std::size_t n = std::size_t{1} << e;
    pairs.emplace_back(random_tree(n, c.sigma, c.seed + 2 * static_cast<std::uint64_t>(e)),
                       random_tree(n, c.sigma, c.seed + 2 * static_cast<std::uint64_t>(e) + 1));
    report.sizes.push_back(static_cast<double>(n));
  }
  const EsaBuilder builders[] = {EsaBuilder::kLinear, EsaBuilder::kReference};
  std::vector<std::function<void()>> fns;
  for (const auto& [a, b] : pairs) {
    for (std::size_t s = 0; s < series; ++s) {
      fns.push_back([&a, &b, &params, builder = builders[s]] {
        g_sink = g_sink + subpath_kernel(a, b, params, builder);
      });
    }
  }
  const auto medians = interleaved_median_seconds(fns, c.runs);
  for (std::size_t i = 0; i < medians.size(); ++i) {
    report.median_seconds[i % series].push_back(medians[i]);
  }
  return report;
}

PredictBenchResult bench_predict(const PredictBenchConfig& c) {
  PredictBenchResult result;
  const KernelParams params{1.0};
  const std::size_t pool_size =
      std::max(c.fixed_support,
               *std::max_element(c.support_counts.begin(), c.support_counts.end()));
  const auto pool = support_pool(c, pool_size, c.seed);

  // Fixed input: support-like trees joined under one root.
  const auto parts = support_pool(c, c.input_parts, c.seed + 1);
  const Tree input = join_under_root(parts, 0);

  auto& by_m = result.by_support;
  by_m.title = "prediction vs support count, input nodes=" + std::to_string(input.size());
  by_m.size_label = "support_trees";
  by_m.series = {"predict", "direct"};
  by_m.median_seconds.resize(2);
  by_m.runs = c.runs;
  std::vector<SupportSet> supports;
  std::vector<MasterIndex> indexes;
  supports.reserve(c.support_counts.size());
  indexes.reserve(c.support_counts.size());
  for (std::size_t m : c.support_counts) {
    supports.push_back(first_support(pool, m));
    indexes.emplace_back(supports.back(), params);
    by_m.sizes.push_back(static_cast<double>(m));
  }
  std::vector<std::function<void()>> fns;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    fns.push_back([&, i] { g_sink = g_sink + predict(indexes[i], input); });
    fns.push_back([&, i] { g_sink = g_sink + predict_direct(supports[i], input, params); });
  }
  const auto by_m_medians = interleaved_median_seconds(fns, c.runs);
  for (std::size_t i = 0; i < by_m_medians.size(); ++i) {
    by_m.median_seconds[i % 2].push_back(by_m_medians[i]);
  }

  auto& by_n = result.by_input;
  by_n.title = "prediction vs input size, support trees=" + std::to_string(c.fixed_support);
  by_n.size_label = "input_nodes";
  by_n.series = {"predict"};
  by_n.runs = c.runs;
  const SupportSet support = first_support(pool, c.fixed_support);
  const MasterIndex index(support, params);
  std::vector<Tree> inputs;
  for (std::size_t n : c.input_sizes) {
    inputs.push_back(random_tree(n, c.sigma, c.seed + 1000 + n));
    by_n.sizes.push_back(static_cast<double>(n));
  }
  fns.clear();
  for (const Tree& t : inputs) {
    fns.push_back([&index, &t] { g_sink = g_sink + predict(index, t); });
  }
  by_n.median_seconds.push_back(interleaved_median_seconds(fns, c.runs));
  return result;
}

}  // namespace subpath
