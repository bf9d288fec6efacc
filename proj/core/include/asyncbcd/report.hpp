#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "asyncbcd/analysis.hpp"

namespace asyncbcd {

struct BoundReportInput {
  double gamma = 0.0;
  std::optional<TheoremConstants> constants;
  std::optional<WindowSeries> series;
  std::optional<BoundReport> bound;
  std::optional<LemmaReport> lemmas;
  std::optional<ContractionFit> fit;
  /// Set when gamma exceeds gamma0, so a failed bound is not an error.
  bool informational = false;
  std::string note;
};

/// JSON object with keys gamma, gamma0, constants, eta, windows (per-window slack), pass.
std::string bound_report_json(const BoundReportInput& in);
void write_bound_report(const BoundReportInput& in, const std::filesystem::path& path);

}  // namespace asyncbcd
