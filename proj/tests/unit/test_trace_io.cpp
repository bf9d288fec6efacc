#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "asyncbcd/builtins.hpp"
#include "asyncbcd/report.hpp"
#include "asyncbcd/trace_io.hpp"

using namespace asyncbcd;

TEST(TraceIo, HeaderAndBlankColumns) {
  TraceRecord r;
  r.t = 3;
  r.f_true = 0.1;
  r.s_norm_sq = 2;
  const auto csv = format_trace_csv({r});
  EXPECT_EQ(csv, std::string(kTraceHeader) + "\n3,0.10000000000000001,,,2,0,,,,,,\n");
}

TEST(TraceIo, RoundTripIsExact) {
  const auto obj = make_builtin(PlSineParams{4});
  const auto p = make_partition(4, EqualSplit{2});
  ScheduleStream s({2, 40, 4, ScheduleMode::uniform_random, 1, 1});
  const auto trace = run(obj, p, s, {1, -2, 0.3, 4}, 0.01, {.diagnostics = true});
  std::istringstream in(format_trace_csv(trace.records));
  const auto back = parse_trace_csv(in);
  EXPECT_EQ(back, trace.records);
}

TEST(TraceIo, ExtraLeadingColumnIsIgnored) {
  std::istringstream in("run_id," + std::string(kTraceHeader) + "\n7,0,1.5,0.5,,0.25,1,,,,,,\n");
  const auto rows = parse_trace_csv(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].f_true, 1.5);
  EXPECT_EQ(rows[0].gap.value(), 0.5);
  EXPECT_FALSE(rows[0].grad_norm_sq);
}

TEST(TraceIo, MalformedRowNamesLine) {
  std::istringstream in(std::string(kTraceHeader) + "\n0,1,,,0,0,,,,,,\n1,zz,,,0,0,,,,,,\n");
  try {
    parse_trace_csv(in, "trace.csv");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("trace.csv:3"), std::string::npos);
  }
}

TEST(Report, JsonCarriesRequiredKeys) {
  BoundReportInput in;
  in.gamma = 1e-3;
  in.constants = compute_constants(1, 1, 1, 1, 1e-3);
  in.series = WindowSeries{1, {1, 0.5, 0.25}, {0, 0.1, 0.05}, 1.0};
  in.bound = check_theorem_bound(*in.series, 1, 1e-3);
  const auto json = bound_report_json(in);
  for (const char* key : {"\"gamma0\"", "\"constants\"", "\"eta\"", "\"windows\"", "\"slack\"", "\"pass\": true"})
    EXPECT_NE(json.find(key), std::string::npos) << key;
}
