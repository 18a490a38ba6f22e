#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LIELAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("lielab_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, AlgebraPrintsDimensions) {
  const auto c3 = run("algebra C 3 7");
  EXPECT_EQ(c3.code, 0);
  EXPECT_NE(c3.out.find("n = 21"), std::string::npos);
  EXPECT_NE(c3.out.find("m = 9"), std::string::npos);
  const auto a2 = run("algebra A 2 7");
  EXPECT_NE(a2.out.find("n = 8"), std::string::npos);
  EXPECT_NE(a2.out.find("m = 3"), std::string::npos);
}

TEST(Cli, AlgebraWritesStructureConstants) {
  const auto d = fresh_dir("algebra");
  EXPECT_EQ(run("algebra A 2 7 --out " + (d / "a2.txt").string()).code, 0);
  EXPECT_FALSE(slurp(d / "a2.txt").empty());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("algebra A 2 5").code, 2);
  EXPECT_EQ(run("algebra B 2 7").code, 2);
  EXPECT_EQ(run("check everything").code, 2);
  EXPECT_EQ(run("check g --chi q=1").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, CheckCasimirPasses) {
  const auto r = run("check casimir --family A --rank 1 --p 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"status\":\"pass\""), std::string::npos);
}

TEST(Cli, CheckBasisReachesFullImageRank) {
  const auto r = run("check basis --family A --rank 1 --p 7 --chi h1=1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"rank\":49"), std::string::npos);
  EXPECT_NE(r.out.find("\"target\":49"), std::string::npos);
}

TEST(Cli, InfeasibleModulesExitZero) {
  const auto r = run("check modules --family C --rank 3 --p 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"status\":\"infeasible\""), std::string::npos);
}

TEST(Cli, RecordsAreByteIdenticalAcrossRuns) {
  const auto d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
  const auto a = run("check all --family A --rank 1 --p 7 --seed 3 --out " + d1.string());
  const auto b = run("check all --family A --rank 1 --p 7 --seed 3 --out " + d2.string());
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto file = "all-A1-p7-s3.jsonl";
  EXPECT_EQ(slurp(d1 / file), a.out);
  EXPECT_EQ(slurp(d1 / file), slurp(d2 / file));
}

TEST(Cli, ReportSummarizesAndReflectsFailures) {
  const auto empty = fresh_dir("empty");
  const auto e = run("report " + empty.string());
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out, "lielab-summary v1\nclaims=0 failed_records=0\n");

  const auto d = fresh_dir("report");
  run("check jacobi --family A --rank 2 --p 7 --out " + d.string());
  const auto ok = run("report " + d.string());
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(run("report " + d.string()).out, ok.out);

  std::ofstream(d / "zz.jsonl")
      << R"({"anchor":"chevalley-basis","claim":"structure.jacobi","params":{},"status":"fail","witness":{}})" << "\n";
  const auto bad = run("report " + d.string());
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("FAIL structure.jacobi"), std::string::npos);

  std::ofstream(d / "zzz.jsonl") << "garbage\n";
  EXPECT_EQ(run("report " + d.string()).code, 3);
  EXPECT_EQ(run("report /nonexistent/lielab").code, 3);
}
