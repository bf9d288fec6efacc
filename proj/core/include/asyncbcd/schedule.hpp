#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "asyncbcd/sampling.hpp"

namespace asyncbcd {

enum class ScheduleMode { synchronous, periodic, uniform_random, adversarial_max };

const char* to_string(ScheduleMode mode);
/// Accepts "synchronous", "periodic", "uniform-random", "adversarial-max".
ScheduleMode parse_schedule_mode(const std::string& name);

struct ScheduleSpec {
  std::size_t processors = 1;
  std::size_t horizon = 1;
  std::size_t delay_bound = 1;
  ScheduleMode mode = ScheduleMode::synchronous;
  /// Only used by periodic; must satisfy 1 <= period <= delay_bound.
  std::size_t period = 1;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for zero sizes, horizon < delay_bound, or a bad period.
void validate_spec(const ScheduleSpec& spec);

/// Activations and staleness at one time step. Staleness values are stored raw and clamped to
/// the admissible floor on read, which keeps per-step work independent of the processor count.
struct ScheduleSlice {
  std::size_t t = 0;
  std::size_t n = 0;
  /// Every view is current: tau(i, j) = t.
  bool fresh = false;
  /// max(t - B + 1, 0).
  std::size_t floor = 0;
  std::vector<std::uint8_t> active;
  std::vector<std::size_t> raw;

  bool is_active(std::size_t i) const { return active[i] != 0; }
  std::size_t tau(std::size_t i, std::size_t j) const {
    if (fresh || i == j) return t;
    const std::size_t r = raw[i * n + j];
    return r > floor ? r : floor;
  }
};

/// Sequential access to a schedule, one step at a time.
class ScheduleSource {
 public:
  virtual ~ScheduleSource() = default;
  virtual std::size_t processors() const = 0;
  virtual std::size_t delay_bound() const = 0;
  virtual std::size_t horizon() const = 0;
  /// Steps must be requested in order 0, 1, 2, ...; asking for the current step again is allowed.
  virtual const ScheduleSlice& slice(std::size_t t) = 0;
};

/// Generates a schedule lazily from its spec, so long horizons need no tables.
class ScheduleStream final : public ScheduleSource {
 public:
  explicit ScheduleStream(ScheduleSpec spec);

  std::size_t processors() const override { return spec_.processors; }
  std::size_t delay_bound() const override { return spec_.delay_bound; }
  std::size_t horizon() const override { return spec_.horizon; }
  const ScheduleSlice& slice(std::size_t t) override;
  const ScheduleSpec& spec() const { return spec_; }

 private:
  void advance();

  ScheduleSpec spec_;
  Rng rng_;
  ScheduleSlice slice_;
  bool started_ = false;
  std::vector<std::size_t> next_activation_;
  std::vector<std::size_t> last_activation_;
};

/// Fully materialized activation and staleness tables.
class AsyncSchedule {
 public:
  /// Starts as the synchronous schedule: every slot active and every view current.
  AsyncSchedule(std::size_t processors, std::size_t horizon, std::size_t delay_bound);

  std::size_t processors() const { return n_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t delay_bound() const { return delay_bound_; }
  ScheduleMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

  bool active(std::size_t i, std::size_t t) const { return active_[t * n_ + i] != 0; }
  std::size_t tau(std::size_t i, std::size_t j, std::size_t t) const { return tau_[(t * n_ + i) * n_ + j]; }
  void set_active(std::size_t i, std::size_t t, bool on) { active_.at(t * n_ + i) = on ? 1 : 0; }
  void set_tau(std::size_t i, std::size_t j, std::size_t t, std::size_t value) { tau_.at((t * n_ + i) * n_ + j) = value; }

  /// Largest t - tau(i, j, t) over active slots.
  std::size_t max_active_staleness() const;

  friend bool operator==(const AsyncSchedule&, const AsyncSchedule&) = default;

 private:
  friend AsyncSchedule generate_schedule(const ScheduleSpec& spec);

  std::size_t n_;
  std::size_t horizon_;
  std::size_t delay_bound_;
  ScheduleMode mode_ = ScheduleMode::synchronous;
  std::uint64_t seed_ = 0;
  std::vector<std::uint8_t> active_;
  std::vector<std::size_t> tau_;
};

/// Materializes ScheduleStream(spec).
AsyncSchedule generate_schedule(const ScheduleSpec& spec);

/// Replays a materialized schedule through the ScheduleSource interface.
class TableScheduleSource final : public ScheduleSource {
 public:
  explicit TableScheduleSource(const AsyncSchedule& schedule);

  std::size_t processors() const override { return schedule_->processors(); }
  std::size_t delay_bound() const override { return schedule_->delay_bound(); }
  std::size_t horizon() const override { return schedule_->horizon(); }
  const ScheduleSlice& slice(std::size_t t) override;

 private:
  const AsyncSchedule* schedule_;
  ScheduleSlice slice_;
};

enum class ScheduleViolation { none, activation_gap, staleness_out_of_range, staleness_regression };

const char* to_string(ScheduleViolation v);

struct ScheduleReport {
  bool pass = true;
  ScheduleViolation violation = ScheduleViolation::none;
  std::size_t i = 0;
  std::size_t j = 0;
  /// For activation_gap, the start of the window without an activation.
  std::size_t t = 0;
  std::string message;
};

/// Checks every length-B window that fits inside the horizon for an activation, t - B < tau <= t
/// at active slots, and tau nondecreasing in t. Returns the first violation in time order.
ScheduleReport validate_schedule(const AsyncSchedule& s);

/// Columns t, i, active, tau_0 ... tau_{n-1}.
void write_schedule_csv(const AsyncSchedule& s, const std::filesystem::path& path);

}  // namespace asyncbcd
