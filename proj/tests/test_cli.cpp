#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  static int counter = 0;
  const fs::path capture = fs::temp_directory_path() / ("cmvbeta_cli_out_" + std::to_string(::getpid()) + "_" +
                                                         std::to_string(counter++));
  const std::string cmd = std::string(CMVBETA_CLI) + " " + args + " > " + capture.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(capture);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cmvbeta_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EvalOutputs) {
  auto r = run("eval partition --n 2 --beta 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
  r = run("eval selberg --n 2 --x 1 --y 1 --z 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 1.0 / 6.0, 1e-14);
  r = run("eval selberg --n 1 --x 2 --y 3 --z 0");
  EXPECT_NEAR(std::stod(r.out), 1.0 / 12.0, 1e-14);
  r = run("eval charpoly --n 1 --beta 2 --b 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x - 0.666666666666667\n");
  r = run("eval dirichlet --p 1 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 1.0 / 6.0, 1e-14);
}

TEST_F(Cli, SampleIsByteIdenticalAcrossRunsAndThreads) {
  const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
  EXPECT_EQ(run("sample circular --n 4 --beta 1.5 --count 100 --seed 42 --out " + a.string()).code, 0);
  EXPECT_EQ(run("sample circular --n 4 --beta 1.5 --count 100 --seed 42 --threads 3 --out " + b.string()).code, 0);
  const std::string sa = slurp(a);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, slurp(b));
  EXPECT_EQ(sa.substr(0, sa.find('\n')), "draw,theta_1,theta_2,theta_3,theta_4");
}

TEST_F(Cli, SampleDefaultsToOutputDirAndHistogramReadsIt) {
  const std::string env = "CMVBETA_OUTPUT_DIR=" + dir_.string() + " ";
  const std::string cmd = std::string("env ") + env + CMVBETA_CLI +
                          " sample jacobi --n 3 --beta 2 --a 0.5 --count 50 --seed 7 --format jsonl > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const fs::path f = dir_ / "samples_jacobi_n3_seed7.jsonl";
  ASSERT_TRUE(fs::exists(f));
  const auto r = run("hist " + f.string() + " --stat eigenvalue --bins 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "bin_left,bin_right,count,density");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("sample circular --n 0 --beta 2").code, 2);
  EXPECT_EQ(run("sample jacobi --n 2 --beta 2 --a -1").code, 2);
  EXPECT_EQ(run("eval partition --n 2").code, 2);
  EXPECT_EQ(run("validate nosuchsuite").code, 2);
  EXPECT_EQ(run("hist " + (dir_ / "missing.csv").string()).code, 3);
  {
    std::ofstream bad(dir_ / "bad.csv");
    bad << "draw,theta_1\n0,notanumber\n";
  }
  EXPECT_EQ(run("hist " + (dir_ / "bad.csv").string()).code, 3);
  EXPECT_EQ(run("sample circular --n 2 --beta 2 --count 1 --out " + (dir_ / "no/such/dir/x.csv").string()).code, 3);
  EXPECT_EQ(run("validate jacobians --tol jacobian_complex_pm_i=0").code, 1);
  EXPECT_EQ(run("validate jacobians").code, 0);
}

TEST_F(Cli, ExportJacobi) {
  const auto r = run("export jacobi --re 0 -1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"b\""), std::string::npos);
}
