#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace subpath {

/// Median wall time of one call to `fn` in seconds. One warm-up call is
/// discarded; each of the `runs` samples repeats `fn` enough times to last at
/// least `min_sample_seconds` and reports the per-call average.
double median_seconds(const std::function<void()>& fn, int runs = 5,
                      double min_sample_seconds = 0.02);

/// Medians of several functions measured round-robin: every one of the
/// `runs` rounds samples each function once, so slow drift of the host
/// affects all of them alike.
std::vector<double> interleaved_median_seconds(const std::vector<std::function<void()>>& fns,
                                               int runs = 5, double min_sample_seconds = 0.02);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Timings of several series over one size ladder.
struct BenchReport {
  std::string title;
  std::string size_label;
  std::vector<std::string> series;
  std::vector<double> sizes;
  std::vector<std::vector<double>> median_seconds;  // [series][size]
  int runs = 0;

  double slope(std::size_t series_index) const;
  /// max / min of one series across the ladder.
  double spread(std::size_t series_index) const;
  void write(std::ostream& out) const;
};

struct KernelBenchConfig {
  int min_exp = 12;
  int max_exp = 17;
  int sigma = 5;
  std::uint64_t seed = 1;
  int runs = 5;
  bool include_reference = true;
};

/// Kernel time on pairs of random trees of each size with the linear
/// ("proposed") and reference ("multikey") builders.
BenchReport bench_kernel(const KernelBenchConfig& config);

struct PredictBenchConfig {
  std::vector<std::size_t> support_counts{100, 250, 500, 750, 1000};
  std::vector<std::size_t> input_sizes{1024, 2048, 4096, 8192, 16384, 32768};
  std::size_t fixed_support = 100;
  std::size_t input_parts = 100;  // support-like trees joined into the fixed input
  std::size_t min_nodes = 5;      // support tree size range
  std::size_t max_nodes = 25;
  int sigma = 5;
  std::uint64_t seed = 7;
  int runs = 5;
};

struct PredictBenchResult {
  BenchReport by_support;  // series: predict, direct
  BenchReport by_input;    // series: predict
};

PredictBenchResult bench_predict(const PredictBenchConfig& config);

}  // namespace subpath
