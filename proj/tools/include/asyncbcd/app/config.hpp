#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asyncbcd/builtins.hpp"
#include "asyncbcd/schedule.hpp"
#include "asyncbcd/simulator.hpp"

namespace asyncbcd::app {

/// Raised for anything wrong with a configuration; key() names the offending section.key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what) : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ObjectiveConfig {
  std::string kind = "diagonal-quadratic";
  Vector eigenvalues{1.0};
  std::size_t dimension = 1;
  /// Row-major; rows separated by ';' in the file.
  std::vector<Vector> matrix;
  Vector rhs;
  bool certify = true;
  /// "synthetic" or a path to a sparse text file.
  std::string dataset = "synthetic";
  std::size_t samples = 2000;
  std::size_t features = 200;
  double separation = 1.0;
  std::size_t latent_rank = 0;
  std::uint64_t data_seed = 1;
  double lambda = 0.01;
  bool preprocess = true;

  friend bool operator==(const ObjectiveConfig&, const ObjectiveConfig&) = default;
};

struct PartitionConfig {
  std::size_t n = 1;
  /// When nonempty, explicit block sizes; n must then equal sizes.size().
  std::vector<std::size_t> sizes;

  friend bool operator==(const PartitionConfig&, const PartitionConfig&) = default;
};

struct ScheduleConfig {
  std::size_t B = 1;
  std::string mode = "synchronous";
  /// 0 means B.
  std::size_t period = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;
};

struct RunSection {
  std::size_t horizon = 100;
  /// Empty means auto: 0.99 * gamma0.
  std::optional<double> gamma;
  /// zeros, ones or gaussian(<seed>).
  std::string x0 = "zeros";
  std::size_t record_every = 1;
  bool diagnostics = false;
  bool margin_cache = false;
  /// Stop once gap <= stop_ratio * gap(0).
  std::optional<double> stop_ratio;

  friend bool operator==(const RunSection&, const RunSection&) = default;
};

struct OutputConfig {
  std::string directory = "out";
  bool emit_csv = true;
  bool emit_svg = false;
  bool emit_report = true;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  ObjectiveConfig objective;
  PartitionConfig partition;
  ScheduleConfig schedule;
  RunSection run;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const RunConfig& config);

/// Everything a simulation needs, built from a validated config.
struct Problem {
  ObjectiveInstance objective;
  BlockPartition partition;
  ScheduleSpec schedule;
  Vector x0;
  double gamma = 0.0;
  /// Set when gamma was given explicitly and exceeds gamma0, or gamma0 is unknown.
  bool beyond_gamma0 = false;
  std::optional<double> gamma0;
  SimulationOptions options;
};

/// Throws ConfigError naming the key responsible for any inconsistency.
Problem build_problem(const RunConfig& config);

Vector make_x0(const std::string& spec, std::size_t m);

}  // namespace asyncbcd::app
