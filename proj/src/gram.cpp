#include <algorithm>
#include <cmath>
#include <thread>

#include "subpath/kernel.hpp"

namespace subpath {

GramMatrix gram_matrix(std::span<const Tree> trees, const KernelParams& params,
                       bool normalize, unsigned threads) {
  params.validate();
  const std::size_t n = trees.size();
  GramMatrix g(n);

  // Upper-triangle cells in row-major order; worker w takes every
  // threads-th cell.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
  }
  const auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t c = first; c < cells.size(); c += stride) {
      const auto [i, j] = cells[c];
      g(i, j) = subpath_kernel(trees[i], trees[j], params);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run, w, threads);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  }

  if (normalize) {
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = g(i, i);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double denom = std::sqrt(diag[i] * diag[j]);
        g(i, j) = denom == 0.0 ? 0.0 : g(i, j) / denom;
      }
    }
  }
  return g;
}

}  // namespace subpath
