#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("subpath_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  Result invoke(const std::string& args) {
    const std::string err = (dir_ / "stderr").string();
    const std::string cmd = std::string(SUBPATH_CLI) + " " + args + " 2>" + err;
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t k = fread(buf, 1, sizeof buf, pipe)) out.append(buf, k);
    const int raw = pclose(pipe);
    std::ifstream e(err);
    stderr_.assign(std::istreambuf_iterator<char>(e), {});
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
  }

  fs::path dir_;
  std::string stderr_;
};

}  // namespace

TEST_F(Cli, KernelPrintsOneValuePerPair) {
  const auto a = file("a", "a\na(b,b)\n");
  const auto b = file("b", "a\na(b)\n");
  const Result r = invoke("kernel --lambda 1 " + a + " " + b);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1\n5\n");
  EXPECT_EQ(invoke("kernel --oracle --lambda 1 " + a + " " + b).out, r.out);
}

TEST_F(Cli, KernelInputErrors) {
  const auto a = file("a", "a\nb\n");
  const auto b = file("b", "a\n");
  EXPECT_EQ(invoke("kernel --lambda 1 " + a + " " + b).status, 2);
  const auto bad = file("bad", "a\nb(\n");
  EXPECT_EQ(invoke("kernel --lambda 1 " + bad + " " + bad).status, 2);
  EXPECT_NE(stderr_.find("line 2"), std::string::npos) << stderr_;
  EXPECT_EQ(invoke("kernel --lambda 2 " + a + " " + a).status, 2);
  EXPECT_EQ(invoke("kernel --lambda 1 " + (dir_ / "missing").string() + " " + a).status, 2);
}

TEST_F(Cli, GramIsLowerTriangular) {
  const auto f = file("t", "a(b)\nc\na(b,b)\n");
  const Result r = invoke("gram --lambda 1 " + f);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "3\n0\t1\n5\t0\t9\n");
  const Result n = invoke("gram --lambda 1 --normalize --threads 2 " + f);
  EXPECT_EQ(n.out.substr(0, 2), "1\n");
}

TEST_F(Cli, EsaDump) {
  const auto f = file("t", "a(b,b)\n");
  EXPECT_EQ(invoke("esa-dump " + f).out, "0\t0\t0\ta\n1\t1\t2\tb/a\n2\t2\t-1\tb/a\n");
}

TEST_F(Cli, PredictWithModel) {
  const auto m = file("m", "lambda 1\nbias 0\n1\ta(b)\n2\ta\n");
  const auto t = file("t", "a(b)\nz\n");
  const Result r = invoke("predict --model " + m + " " + t);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "5\n0\n");
  const auto bad = file("bad", "lambda 1\n1\ta(\n");
  EXPECT_EQ(invoke("predict --model " + bad + " " + t).status, 2);
  EXPECT_NE(stderr_.find("line 2"), std::string::npos) << stderr_;
}

TEST_F(Cli, GenIsDeterministic) {
  const Result a = invoke("gen --n 20 --sigma 3 --seed 9 --count 4");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, invoke("gen --n 20 --sigma 3 --seed 9 --count 4").out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
  const auto f = file("g", a.out);
  EXPECT_EQ(invoke("gram --lambda 0.5 " + f).status, 0);
}

TEST_F(Cli, BenchCommandsReportSlopes) {
  const Result k = invoke("bench-kernel --min-exp 6 --max-exp 9 --runs 1");
  EXPECT_EQ(k.status, 0);
  EXPECT_NE(k.out.find("slope\tproposed"), std::string::npos);
  const Result p = invoke("bench-predict --support 2 4 6 8 --inputs 64 128 256 512 --runs 1");
  EXPECT_EQ(p.status, 0);
  EXPECT_NE(p.out.find("spread\tpredict"), std::string::npos);
}
