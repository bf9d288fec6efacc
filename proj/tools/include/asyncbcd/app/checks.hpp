#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asyncbcd/analysis.hpp"
#include "asyncbcd/builtins.hpp"
#include "asyncbcd/schedule.hpp"

namespace asyncbcd::app {

struct NamedObjective {
  std::string name;
  ObjectiveInstance objective;
};

/// diag(1,2,3,4), pl-sine in 4 dimensions, and a rank-2 3x4 least-squares problem with b in range(A).
std::vector<NamedObjective> grid_objectives();

/// The three grid objectives plus a small synthetic logistic problem.
std::vector<NamedObjective> all_builtins();

struct GridCase {
  std::size_t objective = 0;
  std::size_t n = 1;
  std::size_t B = 1;
  ScheduleMode mode = ScheduleMode::periodic;
  std::uint64_t seed = 0;
};

/// objective x n in {1,2,4} x B in {1,2,5} x {periodic, uniform-random, adversarial-max} x 5 seeds.
std::vector<GridCase> theorem_grid();

inline constexpr std::size_t kGridWindows = 40;

struct GridOutcome {
  GridCase c;
  std::string label;
  double gamma = 0.0;
  double mu = 0.0;
  std::size_t steps = 0;
  bool diverged = false;
  BoundReport bound;
  LemmaReport lemmas;
  std::optional<ContractionFit> fit;
};

/// Runs kGridWindows * B steps with gamma = 0.99 gamma0 and diagnostics on.
GridOutcome run_grid_case(const std::vector<NamedObjective>& objectives, const GridCase& c);

std::vector<GridOutcome> run_theorem_grid();

struct ScheduleTrial {
  ScheduleSpec spec;
  ScheduleReport report;
  std::size_t max_staleness = 0;
};

/// count random (mode, seed, n, B, horizon) draws, each validated.
std::vector<ScheduleTrial> run_schedule_trials(std::size_t count, std::uint64_t seed);

const std::vector<std::string>& check_suites();

/// Prints one line per case and returns 0 when every case passes, 3 otherwise.
int run_check_suite(const std::string& suite, std::ostream& out);

}  // namespace asyncbcd::app
