#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "asyncbcd/app/commands.hpp"
#include "asyncbcd/trace_io.hpp"

using namespace asyncbcd;
using namespace asyncbcd::app;
namespace fs = std::filesystem;

namespace {

class Commands : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("asyncbcd_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text << "[output]\ndirectory = " << (dir_ / "out").string() << "\nemit-svg = true\n";
    return p;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kQuadratic = "[objective]\neigenvalues = 1,2,3,4\n[partition]\nn = 2\n[schedule]\nB = 3\n"
                         "mode = uniform-random\nseed = 4\n[run]\nhorizon = 120\nx0 = ones\ndiagnostics = true\n";

}  // namespace

TEST_F(Commands, RunWritesOutputsAndPasses) {
  EXPECT_EQ(cmd_run(write("q.ini", kQuadratic), std::nullopt, out_, err_), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "trace.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "convergence.svg"));
  EXPECT_NE(out_.str().find("bound=pass"), std::string::npos) << out_.str();
  EXPECT_EQ(read_trace_csv(dir_ / "out" / "trace.csv").size(), 120u);
}

TEST_F(Commands, RunRejectsZeroDelayBound) {
  EXPECT_EQ(cmd_run(write("b.ini", "[schedule]\nB = 0\n"), std::nullopt, out_, err_), kExitConfig);
  EXPECT_NE(err_.str().find("schedule.B"), std::string::npos);
}

TEST_F(Commands, RunFlagsDivergence) {
  EXPECT_EQ(cmd_run(write("d.ini", "[objective]\neigenvalues = 1,2\n[run]\ngamma = 1e6\nx0 = ones\n"), std::nullopt,
                    out_, err_),
            kExitRun);
  EXPECT_NE(err_.str().find("gamma"), std::string::npos);
}

TEST_F(Commands, LargeGammaIsInformational) {
  EXPECT_EQ(cmd_run(write("g.ini", "[objective]\neigenvalues = 1,2\n[run]\ngamma = 0.3\nx0 = ones\n"), std::nullopt,
                    out_, err_),
            kExitOk);
  EXPECT_NE(out_.str().find("informational"), std::string::npos) << out_.str();
}

TEST_F(Commands, SweepOrdersByValueAndRejectsEmptyList) {
  const auto cfg = write("s.ini", kQuadratic);
  EXPECT_EQ(cmd_sweep(cfg, "B", {}, out_, err_), kExitConfig);
  EXPECT_EQ(cmd_sweep(cfg, "B", {"1", "0"}, out_, err_), kExitConfig);
  EXPECT_EQ(cmd_sweep(cfg, "B", {"5", "2", "2"}, out_, err_), kExitConfig);
  out_.str("");
  ASSERT_EQ(cmd_sweep(cfg, "B", {"5", "1", "2"}, out_, err_), kExitOk) << err_.str();
  std::ifstream summary(dir_ / "out" / "sweep_summary.csv");
  std::string header, a, b, c;
  std::getline(summary, header);
  std::getline(summary, a);
  std::getline(summary, b);
  std::getline(summary, c);
  EXPECT_EQ(a.substr(0, 4), "B=1,");
  EXPECT_EQ(b.substr(0, 4), "B=2,");
  EXPECT_EQ(c.substr(0, 4), "B=5,");
  EXPECT_TRUE(fs::exists(dir_ / "out" / "sweep.svg"));
}

TEST_F(Commands, SeedSweepGivesDistinctConvergentCurves) {
  const auto cfg = write("s.ini", "[objective]\neigenvalues = 1,2,3,4\n[partition]\nn = 4\n[schedule]\nB = 4\n"
                                  "mode = uniform-random\n[run]\nhorizon = 400\ngamma = 0.05\nx0 = ones\n");
  ASSERT_EQ(cmd_sweep(cfg, "seed", {"1", "2", "3", "4", "5"}, out_, err_), kExitOk) << err_.str();
  std::ifstream in(dir_ / "out" / "sweep_trace.csv");
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::vector<std::string>> rows;
  while (std::getline(in, line)) rows[line.substr(0, line.find(','))].push_back(line.substr(line.find(',')));
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& [id, r] : rows) {
    for (const auto& [other, s] : rows)
      if (other != id) {
        EXPECT_NE(r, s) << id << " vs " << other;
      }
    std::istringstream last(r.back().substr(1));
    std::string t, f, gap;
    std::getline(last, t, ',');
    std::getline(last, f, ',');
    std::getline(last, gap, ',');
    EXPECT_LT(std::stod(gap), 1e-3 * 5.0) << id;
  }
}

TEST_F(Commands, ReportRendersSweepCsv) {
  const auto cfg = write("s.ini", kQuadratic);
  ASSERT_EQ(cmd_sweep(cfg, "n", {"1", "2"}, out_, err_), kExitOk) << err_.str();
  const auto svg = dir_ / "plot.svg";
  EXPECT_EQ(cmd_report(dir_ / "out" / "sweep_trace.csv", svg, out_, err_), kExitOk) << err_.str();
  std::ifstream in(svg);
  std::stringstream s;
  s << in.rdbuf();
  std::size_t lines = 0;
  for (auto pos = s.str().find("<polyline"); pos != std::string::npos; pos = s.str().find("<polyline", pos + 1))
    ++lines;
  EXPECT_EQ(lines, 2u);
  EXPECT_EQ(cmd_report(dir_ / "missing.csv", svg, out_, err_), kExitConfig);
}

TEST_F(Commands, SvgDoesNotChangeCsv) {
  const auto with = write("a.ini", kQuadratic);
  ASSERT_EQ(cmd_run(with, dir_ / "a", out_, err_), kExitOk);
  {
    std::ofstream(dir_ / "b.ini") << kQuadratic << "[output]\nemit-svg = false\n";
  }
  ASSERT_EQ(cmd_run(dir_ / "b.ini", dir_ / "b", out_, err_), kExitOk);
  std::ifstream a(dir_ / "a" / "trace.csv"), b(dir_ / "b" / "trace.csv");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_FALSE(fs::exists(dir_ / "b" / "convergence.svg"));
}
