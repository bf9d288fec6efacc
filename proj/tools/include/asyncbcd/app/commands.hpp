#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asyncbcd/app/config.hpp"
#include "asyncbcd/report.hpp"

namespace asyncbcd::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRun = 2;
inline constexpr int kExitCheck = 3;

enum class BoundStatus { unavailable, pass, fail, informational_pass, informational_fail };

const char* to_string(BoundStatus s);

struct RunOutcome {
  SimulationTrace trace;
  BoundReportInput report;
  BoundStatus status = BoundStatus::unavailable;
  double initial_gap = 0.0;
  int exit_code = kExitOk;
};

/// Simulates one problem and evaluates the theorem bound and, with diagnostics, the lemmas.
RunOutcome execute(const Problem& problem);

/// One line: objective, steps, final gap, fitted rate, bound status.
std::string summarize(const RunOutcome& outcome);

int cmd_run(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
            std::ostream& out, std::ostream& err);

/// Parameters a sweep may vary.
const std::vector<std::string>& sweep_params();

/// Applies one sweep value to a copy of the base config. Throws ConfigError.
RunConfig apply_sweep_value(RunConfig base, const std::string& param, const std::string& value);

int cmd_sweep(const std::filesystem::path& config, const std::string& param, const std::vector<std::string>& values,
              std::ostream& out, std::ostream& err);

/// Renders a trace CSV, or a combined sweep CSV with a leading run_id column, as SVG.
int cmd_report(const std::filesystem::path& in, const std::filesystem::path& svg, std::ostream& out,
               std::ostream& err);

}  // namespace asyncbcd::app
