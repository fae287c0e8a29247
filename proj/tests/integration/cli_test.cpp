#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Output capture files are per test so ctest can run tests in parallel.
Result run(const std::string& args) {
  const std::string stem =
      std::string("cli_") +
      ::testing::UnitTest::GetInstance()->current_test_info()->name();
  const std::string cmd = std::string(QDRIVE_CLI_PATH) + " " + args + " > " +
                          stem + ".stdout 2> " + stem + ".stderr";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(stem + ".stdout"),
          slurp(stem + ".stderr")};
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

TEST(Cli, Fig1Defaults) {
  const Result r = run("fig1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,p_mub,p_dm_0.15,p_dm_0.8");
  EXPECT_NE(r.out.find("\n1,0.5,0,0\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n2,0.75,0.85,0.19999999999999996\n"), std::string::npos);
}

TEST(Cli, JsonFormatAndOutFile) {
  const Result r = run("fig1 --max-n 2 --format json --out cli_fig1.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string json = slurp("cli_fig1.json");
  EXPECT_EQ(json.rfind("{\"columns\":[\"N\",\"p_mub\"", 0), 0u) << json;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("fig1 --format xml").code, 2);
  EXPECT_EQ(run("fig1 --threads 0").code, 2);
  EXPECT_EQ(run("fig2 --gt-points 1").code, 2);
  EXPECT_EQ(run("fig1 --q0 2").code, 2);
  EXPECT_EQ(run("mc --protocol mub -N 19 --trials 10").code, 2);
  EXPECT_EQ(run("sweep").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, NumericalFailureExitCode) {
  const Result r = run("fig2 --mean-n 100 --gt-points 3 --w-points 2 "
                    "--term-cap 5");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("nan"), std::string::npos);
  EXPECT_NE(r.out.find("invalid"), std::string::npos);
}

TEST(Cli, IoFailureExitCode) {
  EXPECT_EQ(run("fig1 --out /nonexistent-dir/x.csv").code, 4);
  EXPECT_EQ(run("sweep /nonexistent-dir/spec.ini").code, 4);
}

TEST(Cli, MonteCarloPassAndFail) {
  const Result ok = run("mc --q0 1 --qt 0.15 -N 2 --trials 100000 --seed 42");
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find(",1,100000,42\n"), std::string::npos) << ok.out;
  // A 0-sigma gate fails unless the estimate is exact.
  EXPECT_EQ(run("mc --q0 1 --qt 0.15 -N 2 --trials 1000 --sigmas 0").code, 5);
  EXPECT_EQ(run("mc --protocol mub --c 0.5 -N 3 --trials 50000").code, 0);
  EXPECT_EQ(run("mc --model dephasing --gt 0.5 --w 0.3 --mean-n 1 -N 3 "
                "--trials 50000").code,
            0);
  EXPECT_EQ(run("mc --model jc --gt 1 --w 0.5 --mean-n 1 -N 2 "
                "--trials 50000").code,
            0);
  EXPECT_EQ(run("mc --qt 0.2 --qt 0.4 --trials 50000").code, 0);
}

TEST(Cli, ProtocolTie) {
  const Result r = run("protocol --qt 0.25 --max-n 2");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("equal,equal,1"), std::string::npos) << r.out;
  EXPECT_NE(r.err.find("two_step = 0.75"), std::string::npos) << r.err;
  EXPECT_EQ(run("protocol --equal-measurements --max-n 9").code, 0);
  EXPECT_EQ(run("protocol --max-n 1").code, 2);
}

TEST(Cli, SweepSpecAndOverrides) {
  write("cli_sweep.ini",
        "[sweep]\nfunction = crossover_threshold\nout = cli_sweep.csv\n"
        "[axis:N]\nmin = 2\nmax = 4\npoints = 3\n");
  const Result r = run("sweep cli_sweep.ini");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp("cli_sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "N,value");
  EXPECT_NE(csv.find("\n2,0.25\n"), std::string::npos) << csv;

  const Result j = run("sweep cli_sweep.ini --out cli_sweep.json --format json");
  ASSERT_EQ(j.code, 0) << j.err;
  EXPECT_EQ(slurp("cli_sweep.json").front(), '{');

  write("cli_bad.ini",
        "[sweep]\nfunction = no_such_function\n"
        "[axis:x]\nmin = 0\nmax = 1\npoints = 2\n");
  EXPECT_EQ(run("sweep cli_bad.ini").code, 6);
  write("cli_bad2.ini", "[sweep]\nfunction = laguerre\n");
  EXPECT_EQ(run("sweep cli_bad2.ini").code, 2);

  const Result list = run("sweep --list");
  ASSERT_EQ(list.code, 0);
  EXPECT_NE(list.out.find("jc_diagonal\n"), std::string::npos);
}

TEST(Cli, ConfigFile) {
  // Subcommand options live in a section named after the subcommand.
  write("cli_config2.ini", "format = \"json\"\n[fig1]\nmax-n = 3\n");
  const Result r = run("--config cli_config2.ini fig1");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.front(), '{');
  EXPECT_NE(r.out.find("[3,"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("[4,"), std::string::npos) << r.out;

  const Result over = run("--config cli_config2.ini fig1 --format csv");
  ASSERT_EQ(over.code, 0) << over.err;
  EXPECT_EQ(over.out.rfind("N,", 0), 0u);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  for (const std::string cmd :
       {"fig1 --mc-trials 20000 --seed 9", "fig2 --gt-points 30 --w-points 12",
        "fig3 --gt-points 30 --n-points 11",
        "mc --protocol mub -N 4 --trials 300000 --seed 11"}) {
    const Result one = run(cmd + " --threads 1");
    const Result eight = run(cmd + " --threads 8");
    ASSERT_EQ(one.code, 0) << cmd << one.err;
    ASSERT_EQ(eight.code, 0) << cmd << eight.err;
    EXPECT_EQ(one.out, eight.out) << cmd;
  }
}

TEST(Cli, ExactFloats) {
  const Result e = run("fig1 --max-n 2 --qt 0.1 --exact-floats");
  ASSERT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("0.90000000000000002"), std::string::npos) << e.out;
}

}  // namespace
