#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kaleido/cli.hpp"

using namespace kaleido;

namespace {

struct result {
  int code;
  std::string out, err;
};

result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "kaleidocircle_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, GenerateCountsClassesAndIsDeterministic) {
  auto a = run({"generate", "--depth", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  // header plus 2^3 classes
  EXPECT_EQ(lines(a.out), 1u + 8u);
  EXPECT_NE(a.out.find("1/7"), std::string::npos);
  EXPECT_EQ(run({"generate", "--depth", "3"}).out, a.out);
}

TEST(Cli, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("generate"), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, exit_usage);
  EXPECT_EQ(run({"frobnicate"}).code, exit_usage);
  EXPECT_EQ(run({"generate"}).code, exit_usage);
  EXPECT_EQ(run({"generate", "--depth", "-1"}).code, exit_usage);
  EXPECT_EQ(run({"verify", "nonsense"}).code, exit_usage);
  EXPECT_EQ(run({"element", "rotation", "--at", "1/3", "--depth", "3"}).code, exit_usage);
  EXPECT_EQ(run({"element", "witness", "--omega", "pow:0", "--depth", "3"}).code, exit_usage);
}

TEST(Cli, ResourceLimitExitsTwo) { EXPECT_EQ(run({"generate", "--depth", "40"}).code, exit_resource); }

TEST(Cli, VerifySuitesPass) {
  for (std::string suite : {"unlinked", "forward", "orbits", "dt2"}) {
    auto r = run({"verify", suite, "--depth", "5", "--samples", "3"});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("seed=1"), std::string::npos);
  }
}

TEST(Cli, ColorThenVerifyColoring) {
  auto file = scratch("coloring.txt");
  auto c = run({"color", "--depth", "6", "--points", "8", "--window", "8", "--out", file.string()});
  ASSERT_EQ(c.code, 0) << c.err;
  auto v = run({"verify", "coloring", "--depth", "6", "--coloring", file.string(), "--window-points", "8"});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_EQ(lines(v.out), 3u);
}

TEST(Cli, CorruptedColoringFailsVerification) {
  auto file = scratch("bad_coloring.txt");
  {
    std::ofstream f(file);
    f << "#kaleidocircle-coloring v1\n1/7\t1,3,2\n";
  }
  auto v = run({"verify", "coloring", "--depth", "4", "--coloring", file.string(), "--window-points", "2"});
  EXPECT_EQ(v.code, exit_verification) << v.out << v.err;
}

TEST(Cli, ElementActRenderPipeline) {
  auto elem = scratch("rot.txt"), homeo = scratch("rot.homeo");
  ASSERT_EQ(run({"element", "rotation", "--at", "1/7", "--depth", "6", "--out", elem.string()}).code, 0);
  ASSERT_EQ(run({"act", "--element", elem.string(), "--depth", "4", "--out", homeo.string()}).code, 0);
  auto h1 = slurp(homeo);
  ASSERT_EQ(run({"act", "--element", elem.string(), "--depth", "4", "--out", homeo.string()}).code, 0);
  EXPECT_EQ(slurp(homeo), h1);
  EXPECT_EQ(h1.rfind("#kaleidocircle-homeo v1 depth=4", 0), 0u);
  auto v = run({"verify", "lamination-preserved", "--depth", "4", "--homeo", homeo.string()});
  EXPECT_EQ(v.code, 0) << v.out;
  auto s = run({"verify", "semiconjugacy", "--depth", "4", "--element", elem.string()});
  EXPECT_EQ(s.code, 0) << s.out;
  auto svg = run({"render", "homeo", "--homeo", homeo.string()});
  EXPECT_EQ(svg.code, 0);
  EXPECT_NE(svg.out.find("<svg"), std::string::npos);
}

TEST(Cli, TransporterFromFileRoundTrip) {
  auto a = run({"element", "transporter", "--from", "1/7", "--to", "1/14", "--depth", "5"});
  ASSERT_EQ(a.code, 0) << a.err;
  auto file = scratch("tr.txt");
  {
    std::ofstream f(file);
    f << a.out;
  }
  auto b = run({"element", "fromfile", "--in", file.string(), "--depth", "5"});
  EXPECT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.out, a.out);
}

TEST(Cli, MeasureModulusLinearPasses) {
  auto r = run({"measure", "modulus", "--omega", "pow:1", "--stages", "3", "--depth", "6"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(lines(r.out), 4u);
}

TEST(Cli, RenderLaminationCountsChords) {
  auto r = run({"render", "lamination", "--depth", "2"});
  ASSERT_EQ(r.code, 0);
  std::size_t n = 0;
  for (auto p = r.out.find("class=\"chord\""); p != std::string::npos; p = r.out.find("class=\"chord\"", p + 1)) ++n;
  // four triangles, three chords each
  EXPECT_EQ(n, 12u);
}

TEST(Cli, GenerateSpecExamples) {
  EXPECT_EQ(lines(run({"generate", "--depth", "2"}).out), 1u + 4u);
  EXPECT_EQ(lines(run({"generate", "--depth", "0"}).out), 1u + 1u);
}

TEST(Cli, CorruptedElementFileIsAUsageError) {
  auto file = scratch("corrupt_element.txt");
  {
    std::ofstream f(file);
    f << "#kaleidocircle-element v1\n1/7\tnot-an-angle\t0\n";
  }
  auto r = run({"verify", "semiconjugacy", "--depth", "4", "--element", file.string()});
  EXPECT_EQ(r.code, exit_usage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"element", "fromfile", "--in", scratch("missing.txt").string()}).code, exit_usage);
}

TEST(Cli, BudgetBelowDepthIsRejected) {
  EXPECT_EQ(run({"element", "rotation", "--depth", "6", "--budget", "5"}).code, exit_usage);
  setenv("KALEIDO_MAX_DEPTH", "3", 1);
  int capped = run({"element", "rotation", "--depth", "6"}).code;
  unsetenv("KALEIDO_MAX_DEPTH");
  EXPECT_EQ(capped, exit_resource);
}
