#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" FLATSCAN_CLI "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("flatscan_cli_" + std::to_string(::getpid()) + "_" +
                                      ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, ScanTorus) {
  auto r = run("scan " FLATSCAN_DATA "/torus.surf --radius 1.5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "hol_x,hol_y,length,angle,start_cone,end_cone");
  EXPECT_EQ(count_lines(r.out), 9u);
}

TEST_F(Cli, UnfoldThenSystole) {
  ASSERT_EQ(run("unfold --angles 1/2 1/8 3/8 --normalize --out " + path("t.surf")).code, 0);
  auto r = run("systole " + path("t.surf"));
  ASSERT_EQ(r.code, 0);
  double len = 0;
  ASSERT_EQ(std::sscanf(r.out.c_str(), "systole %lf", &len), 1) << r.out;
  EXPECT_GT(len, 0.0);
  EXPECT_LE(len, 1.12838);
}

TEST_F(Cli, BuildRoundTrip) {
  ASSERT_EQ(run("build --preset octagon --out " + path("a.surf")).code, 0);
  ASSERT_EQ(run("build --in " + path("a.surf") + " --out " + path("b.surf")).code, 0);
  EXPECT_EQ(slurp(path("a.surf")), slurp(path("b.surf")));
  EXPECT_EQ(slurp(path("a.surf")), slurp(FLATSCAN_DATA "/octagon.surf"));
}

TEST_F(Cli, PlotWritesSvg) {
  ASSERT_EQ(run("plot " FLATSCAN_DATA "/octagon_unit.surf --radius 7 --out " + path("o.svg")).code, 0);
  std::string svg = slurp(path("o.svg"));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, DeformAndMeasure) {
  ASSERT_EQ(run("deform " FLATSCAN_DATA "/torus.surf --gt 0.5 --rot pi/7 --out " + path("d.surf")).code, 0);
  auto r = run("measure " + path("d.surf") + " --radius 10 --out " + path("m.csv") + " --cells " + path("c.csv"));
  ASSERT_EQ(r.code, 0);
  std::string rep = slurp(path("m.csv"));
  EXPECT_EQ(rep.substr(0, rep.find('\n')), "statistic,R,value");
  EXPECT_NE(rep.find("connections,10,"), std::string::npos);
  EXPECT_EQ(count_lines(slurp(path("c.csv"))), 17u);
}

TEST_F(Cli, CylindersAndCircleIntegral) {
  auto c = run("cylinders " FLATSCAN_DATA "/octagon.surf --direction 0");
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("2 cylinders"), std::string::npos) << c.out;
  auto ci = run("circle-integral " FLATSCAN_DATA "/torus.surf --delta 0.1 --T 0 --nodes 32");
  ASSERT_EQ(ci.code, 0);
  double v = 0;
  ASSERT_EQ(std::sscanf(ci.out.c_str(), "integral %lf", &v), 1) << ci.out;
  EXPECT_NEAR(v, 2 * 3.14159265358979, 1e-9);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("scan --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("scan " FLATSCAN_DATA "/torus.surf --radius -1").code, 1);
  EXPECT_EQ(run("scan /nonexistent.surf --radius 2").code, 1);
  EXPECT_EQ(run("unfold --angles 1/2 1/3 1/3").code, 1);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  auto a = run("scan " FLATSCAN_DATA "/octagon_unit.surf --radius 8", "FLATSCAN_THREADS=1");
  auto b = run("scan " FLATSCAN_DATA "/octagon_unit.surf --radius 8", "FLATSCAN_THREADS=3");
  ASSERT_EQ(a.code, 0);
  EXPECT_GT(count_lines(a.out), 100u);
  EXPECT_EQ(a.out, b.out);
}
