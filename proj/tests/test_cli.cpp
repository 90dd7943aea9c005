#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" TENTDYN_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST(Cli, KneadingGolden) {
  auto r = run("kneading --slope golden --depth 9");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has_line(r.out, "kneading: 101101101")) << r.out;
  EXPECT_TRUE(has_line(r.out, "exact: (101)"));
  EXPECT_TRUE(has_line(r.out, "m: 3"));
  EXPECT_TRUE(has_line(r.out, "accessible_side: LEFT_OF_C"));
}

TEST(Cli, HeaderCarriesConfig) {
  auto r = run("kneading --slope golden --depth 9 --seed 7");
  EXPECT_TRUE(has_line(r.out, "command: kneading"));
  EXPECT_TRUE(has_line(r.out, "config.slope: golden"));
  EXPECT_TRUE(has_line(r.out, "config.precision: 256"));
  EXPECT_TRUE(has_line(r.out, "config.seed: 7"));
  EXPECT_TRUE(has_line(r.out, "config.depth: 9"));
  EXPECT_EQ(r.out.rfind("tentdyn: ", 0), 0u);
}

TEST(Cli, AdmissibleStrict) {
  auto r = run("admissible --slope 'kneading:100(110)' --seq '(110)' --depth 60");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has_line(r.out, "status: STRICT")) << r.out;
  EXPECT_TRUE(has_line(r.out, "shifts_checked: 60"));
}

TEST(Cli, CounterexampleCertificate) {
  auto r = run("counterexample --k 2 --depth 60");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has_line(r.out, "recomputed_matches: true"));
  EXPECT_TRUE(has_line(r.out, "shadow_criterion.0.01: NOT_FOUND (horizon=10000)"));
  for (const char* d : {"0.05", "0.02", "0.01"}) {
    EXPECT_TRUE(has_line(r.out, std::string("ict.") + d + ": YES (uncertain_edges=0)"));
  }
  int cases = 0;
  for (const char* h : {"000", "001", "010", "011", "100", "101", "110", "111"}) {
    cases += r.out.find(std::string("\n") + h + ": ") != std::string::npos;
  }
  EXPECT_EQ(cases, 8);
  EXPECT_NE(r.out.find("110: EXCLUDED_B"), std::string::npos);
}

TEST(Cli, ShadowCriterion) {
  auto r = run("shadow-criterion --slope golden --epsilon 0.01");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has_line(r.out, "status: SATISFIED(3)"));
}

TEST(Cli, ChainChecks) {
  auto a = run("ict-check --net core --resolution 0.02");
  EXPECT_TRUE(has_line(a.out, "verdict: YES")) << a.out;
  auto b = run("wi-check --net interval:0:0.05+interval:0.6:0.65 --resolution 0.005");
  EXPECT_TRUE(has_line(b.out, "verdict: REFUTED")) << b.out;
  EXPECT_NE(b.out.find("witness.0:"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("kneading --precision 32").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("admissible --seq '1(0'").status, 1);
  EXPECT_EQ(run("slope-find --seq '(1011)' --precision 128").status, 2);
  // Address of a point 1e-25 from c cannot be decided at the default tolerance.
  EXPECT_EQ(run("itinerary --slope 1.8 --x 0.5000000000000000000000001 --depth 4").status, 2);
}

TEST(Cli, PrecisionFromEnvironment) {
  auto r = run("kneading --depth 9", "TENT_PRECISION=128");
  EXPECT_TRUE(has_line(r.out, "config.precision: 128")) << r.out;
  auto s = run("kneading --depth 9 --precision 96", "TENT_PRECISION=128");
  EXPECT_TRUE(has_line(s.out, "config.precision: 96"));
}

TEST(Cli, PlotDataIsCsv) {
  auto r = run("plot-data --kind orbit --slope 1.8 --x 0.3 --n 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("# tentdyn: ", 0), 0u);
  EXPECT_TRUE(has_line(r.out, "index,value"));
  EXPECT_TRUE(has_line(r.out, "0,0.3"));
}

TEST(Cli, OutputFile) {
  std::string path = ::testing::TempDir() + "tentdyn_cli_out.txt";
  auto r = run("kneading --depth 9 -o '" + path + "'");
  EXPECT_EQ(r.status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(has_line(ss.str(), "kneading: 101101101"));
  std::remove(path.c_str());
}

TEST(Cli, Deterministic) {
  for (const char* args : {"shadow-point --epsilon 0.05 --delta 0.001 --length 50 --seed 5",
                           "omega-approx --x 0.3 --slope 1.8",
                           "construct-omega --stages 2 --burn-in 100 --samples 1000"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}
