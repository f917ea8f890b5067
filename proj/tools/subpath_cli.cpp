#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subpath/bench.hpp"
#include "subpath/esa.hpp"
#include "subpath/generate.hpp"
#include "subpath/kernel.hpp"
#include "subpath/model_io.hpp"
#include "subpath/predict.hpp"
#include "subpath/tree_io.hpp"

using namespace subpath;

namespace {

constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Tree> load_trees(const std::string& path, Alphabet& alphabet) {
  try {
    return read_corpus_file(path, alphabet);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

int cmd_kernel(const std::string& a, const std::string& b, double lambda, bool oracle) {
  Alphabet alphabet;
  const auto left = load_trees(a, alphabet);
  const auto right = load_trees(b, alphabet);
  if (left.size() != right.size()) {
    throw InputError("tree files differ in length: " + std::to_string(left.size()) +
                     " vs " + std::to_string(right.size()));
  }
  const KernelParams params{lambda};
  params.validate();
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double k = oracle ? subpath_kernel_oracle(left[i], right[i], params)
                            : subpath_kernel(left[i], right[i], params);
    std::cout << format_real(k) << '\n';
  }
  return 0;
}

int cmd_gram(const std::string& file, double lambda, bool normalize, unsigned threads) {
  Alphabet alphabet;
  const auto trees = load_trees(file, alphabet);
  const KernelParams params{lambda};
  params.validate();
  const GramMatrix g = gram_matrix(trees, params, normalize, threads);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (j > 0) std::cout << '\t';
      std::cout << format_real(g(i, j));
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_esa_dump(const std::string& file) {
  Alphabet alphabet;
  const auto trees = load_trees(file, alphabet);
  for (std::size_t t = 0; t < trees.size(); ++t) {
    if (trees.size() > 1) std::cout << "# tree " << t << '\n';
    const TreeSuffixArray esa = build_esa_linear(trees[t]);
    for (std::size_t i = 0; i < esa.size(); ++i) {
      std::cout << i << '\t' << esa.sa[i] << '\t' << esa.lcp[i] << '\t';
      const auto s = suffix(trees[t], esa.sa[i]);
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (k > 0) std::cout << '/';
        std::cout << alphabet.name(s[k]);
      }
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& file) {
  Alphabet alphabet;
  Model model;
  try {
    model = read_model_file(model_path, alphabet);
    model.params.validate();
  } catch (const ParseError& e) {
    throw InputError(model_path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(model_path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  const auto inputs = load_trees(file, alphabet);
  const MasterIndex index(model.support, model.params);
  for (const Tree& t : inputs) std::cout << format_real(predict(index, t)) << '\n';
  return 0;
}

int cmd_gen(std::size_t n, int sigma, std::uint64_t seed, std::size_t count) {
  const Alphabet alphabet = Alphabet::with_symbols(sigma);
  for (std::size_t i = 0; i < count; ++i) {
    std::cout << serialize_tree(random_tree(n, sigma, seed + i), alphabet) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subpath tree kernels: evaluation, Gram matrices, prediction and benchmarks"};
  app.require_subcommand(1);

  double lambda = 1.0;
  std::string file_a, file_b;
  bool oracle = false;
  auto* kernel = app.add_subcommand("kernel", "Kernel value of zipped tree pairs, one per line");
  kernel->add_option("--lambda", lambda, "Decay in (0, 1]")->required();
  kernel->add_flag("--oracle", oracle, "Use the brute-force evaluator");
  kernel->add_option("a", file_a, "First tree file")->required();
  kernel->add_option("b", file_b, "Second tree file")->required();

  bool normalize = false;
  unsigned threads = 1;
  auto* gram = app.add_subcommand("gram", "Lower-triangular Gram matrix");
  gram->add_option("--lambda", lambda, "Decay in (0, 1]")->required();
  gram->add_flag("--normalize", normalize, "Cosine-normalize entries");
  gram->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  gram->add_option("file", file_a, "Tree file")->required();

  auto* esa_dump = app.add_subcommand("esa-dump", "Suffix array, lcp and suffixes of each tree");
  esa_dump->add_option("file", file_a, "Tree file")->required();

  std::string model_path;
  auto* pred = app.add_subcommand("predict", "Decision value of each input tree");
  pred->add_option("--model", model_path, "Model file")->required();
  pred->add_option("trees", file_a, "Tree file")->required();

  std::size_t n = 16, count = 1;
  int sigma = 5;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Random trees in bracket form");
  gen->add_option("--n", n, "Nodes per tree")->check(CLI::PositiveNumber);
  gen->add_option("--sigma", sigma, "Alphabet size")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Seed of the first tree");
  gen->add_option("--count", count, "Number of trees");

  KernelBenchConfig kb;
  auto* bench_k = app.add_subcommand("bench-kernel", "Kernel time vs tree size for both builders");
  bench_k->add_option("--min-exp", kb.min_exp, "Smallest size as a power of two");
  bench_k->add_option("--max-exp", kb.max_exp, "Largest size as a power of two");
  bench_k->add_option("--sigma", kb.sigma);
  bench_k->add_option("--seed", kb.seed);
  bench_k->add_option("--runs", kb.runs)->check(CLI::PositiveNumber);

  PredictBenchConfig pb;
  auto* bench_p = app.add_subcommand("bench-predict", "Prediction time vs support count and input size");
  bench_p->add_option("--support", pb.support_counts, "Support-count ladder");
  bench_p->add_option("--inputs", pb.input_sizes, "Input-size ladder");
  bench_p->add_option("--sigma", pb.sigma);
  bench_p->add_option("--seed", pb.seed);
  bench_p->add_option("--runs", pb.runs)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*kernel) return cmd_kernel(file_a, file_b, lambda, oracle);
    if (*gram) return cmd_gram(file_a, lambda, normalize, threads);
    if (*esa_dump) return cmd_esa_dump(file_a);
    if (*pred) return cmd_predict(model_path, file_a);
    if (*gen) return cmd_gen(n, sigma, seed, count);
    if (*bench_k) {
      bench_kernel(kb).write(std::cout);
      return 0;
    }
    if (*bench_p) {
      const auto r = bench_predict(pb);
      r.by_support.write(std::cout);
      r.by_input.write(std::cout);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
