#include "asyncbcd/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace asyncbcd {

const char* to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::synchronous: return "synchronous";
    case ScheduleMode::periodic: return "periodic";
    case ScheduleMode::uniform_random: return "uniform-random";
    case ScheduleMode::adversarial_max: return "adversarial-max";
  }
  return "unknown";
}

ScheduleMode parse_schedule_mode(const std::string& name) {
  for (auto mode : {ScheduleMode::synchronous, ScheduleMode::periodic, ScheduleMode::uniform_random,
                    ScheduleMode::adversarial_max})
    if (name == to_string(mode)) return mode;
  throw std::invalid_argument("unknown schedule mode '" + name +
                              "' (expected synchronous, periodic, uniform-random or adversarial-max)");
}

void validate_spec(const ScheduleSpec& spec) {
  if (spec.processors == 0) throw std::invalid_argument("schedule needs at least one processor");
  if (spec.delay_bound == 0) throw std::invalid_argument("delay bound B must be at least 1");
  if (spec.horizon < spec.delay_bound)
    throw std::invalid_argument("horizon " + std::to_string(spec.horizon) + " is shorter than B = " +
                                std::to_string(spec.delay_bound));
  if (spec.mode == ScheduleMode::periodic && (spec.period == 0 || spec.period > spec.delay_bound))
    throw std::invalid_argument("period " + std::to_string(spec.period) + " must lie in [1, B = " +
                                std::to_string(spec.delay_bound) + "]");
}

ScheduleStream::ScheduleStream(ScheduleSpec spec) : spec_(spec), rng_(spec.seed) {
  validate_spec(spec_);
  const std::size_t n = spec_.processors;
  slice_.n = n;
  slice_.active.assign(n, 0);
  slice_.raw.assign(n * n, 0);
  slice_.fresh = spec_.mode == ScheduleMode::synchronous;
  last_activation_.assign(n, 0);
  if (spec_.mode == ScheduleMode::uniform_random) {
    next_activation_.resize(n);
    for (auto& a : next_activation_) a = uniform_int(rng_, 0, spec_.delay_bound - 1);
  }
}

const ScheduleSlice& ScheduleStream::slice(std::size_t t) {
  if (t >= spec_.horizon)
    throw std::out_of_range("step " + std::to_string(t) + " is past the horizon " + std::to_string(spec_.horizon));
  if (!started_) {
    if (t != 0) throw std::logic_error("schedule stream must start at step 0");
    started_ = true;
    slice_.t = 0;
    advance();
  } else if (t == slice_.t + 1) {
    slice_.t = t;
    advance();
  } else if (t != slice_.t) {
    throw std::logic_error("schedule stream steps must be requested in order");
  }
  return slice_;
}

void ScheduleStream::advance() {
  const std::size_t n = spec_.processors;
  const std::size_t B = spec_.delay_bound;
  const std::size_t t = slice_.t;
  slice_.floor = t + 1 >= B ? t + 1 - B : 0;
  auto& active = slice_.active;
  auto& raw = slice_.raw;

  switch (spec_.mode) {
    case ScheduleMode::synchronous:
      std::fill(active.begin(), active.end(), 1);
      break;

    case ScheduleMode::periodic:
      for (std::size_t j = 0; j < n; ++j) {
        active[j] = t % spec_.period == j % spec_.period;
        if (!active[j]) continue;
        last_activation_[j] = t;
        for (std::size_t i = 0; i < n; ++i) raw[i * n + j] = t;
      }
      break;

    case ScheduleMode::uniform_random:
      for (std::size_t j = 0; j < n; ++j) {
        active[j] = next_activation_[j] == t;
        if (active[j]) last_activation_[j] = t;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          const std::size_t lo = slice_.floor;
          const std::size_t hi = std::max(last_activation_[j], lo);
          auto& r = raw[i * n + j];
          r = std::max<std::size_t>(r, uniform_int(rng_, lo, hi));
        }
        next_activation_[i] = t + 1 + uniform_int(rng_, 0, B - 1);
      }
      break;

    case ScheduleMode::adversarial_max:
      for (std::size_t i = 0; i < n; ++i) active[i] = t % B == B - 1;
      break;
  }
}

AsyncSchedule::AsyncSchedule(std::size_t processors, std::size_t horizon, std::size_t delay_bound)
    : n_(processors), horizon_(horizon), delay_bound_(delay_bound) {
  if (n_ == 0 || horizon_ == 0 || delay_bound_ == 0) throw std::invalid_argument("schedule sizes must be positive");
  active_.assign(horizon_ * n_, 1);
  tau_.resize(horizon_ * n_ * n_);
  for (std::size_t t = 0; t < horizon_; ++t)
    std::fill_n(tau_.begin() + static_cast<std::ptrdiff_t>(t * n_ * n_), n_ * n_, t);
}

std::size_t AsyncSchedule::max_active_staleness() const {
  std::size_t worst = 0;
  for (std::size_t t = 0; t < horizon_; ++t)
    for (std::size_t i = 0; i < n_; ++i) {
      if (!active(i, t)) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t v = tau(i, j, t);
        if (v <= t) worst = std::max(worst, t - v);
      }
    }
  return worst;
}

AsyncSchedule generate_schedule(const ScheduleSpec& spec) {
  ScheduleStream stream(spec);
  AsyncSchedule s(spec.processors, spec.horizon, spec.delay_bound);
  s.mode_ = spec.mode;
  s.seed_ = spec.seed;
  const std::size_t n = spec.processors;
  for (std::size_t t = 0; t < spec.horizon; ++t) {
    const auto& sl = stream.slice(t);
    for (std::size_t i = 0; i < n; ++i) {
      s.active_[t * n + i] = sl.active[i];
      for (std::size_t j = 0; j < n; ++j) s.tau_[(t * n + i) * n + j] = sl.tau(i, j);
    }
  }
  return s;
}

TableScheduleSource::TableScheduleSource(const AsyncSchedule& schedule) : schedule_(&schedule) {
  const std::size_t n = schedule.processors();
  slice_.n = n;
  slice_.active.assign(n, 0);
  slice_.raw.assign(n * n, 0);
  slice_.t = std::numeric_limits<std::size_t>::max();
}

const ScheduleSlice& TableScheduleSource::slice(std::size_t t) {
  if (t >= schedule_->horizon())
    throw std::out_of_range("step " + std::to_string(t) + " is past the horizon " + std::to_string(schedule_->horizon()));
  if (t == slice_.t) return slice_;
  const std::size_t n = slice_.n;
  slice_.t = t;
  slice_.floor = 0;
  for (std::size_t i = 0; i < n; ++i) {
    slice_.active[i] = schedule_->active(i, t);
    for (std::size_t j = 0; j < n; ++j) slice_.raw[i * n + j] = schedule_->tau(i, j, t);
  }
  return slice_;
}

const char* to_string(ScheduleViolation v) {
  switch (v) {
    case ScheduleViolation::none: return "none";
    case ScheduleViolation::activation_gap: return "activation-gap";
    case ScheduleViolation::staleness_out_of_range: return "staleness-out-of-range";
    case ScheduleViolation::staleness_regression: return "staleness-regression";
  }
  return "unknown";
}

ScheduleReport validate_schedule(const AsyncSchedule& s) {
  const std::size_t n = s.processors();
  const std::size_t T = s.horizon();
  const std::size_t B = s.delay_bound();

  // next_on[i * (T + 1) + t]: first active slot of processor i at or after t, T when none.
  std::vector<std::size_t> next_on(n * (T + 1), T);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = T; t-- > 0;) next_on[i * (T + 1) + t] = s.active(i, t) ? t : next_on[i * (T + 1) + t + 1];

  auto fail = [](ScheduleViolation v, std::size_t i, std::size_t j, std::size_t t, std::string msg) {
    return ScheduleReport{false, v, i, j, t, std::move(msg)};
  };

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (t + B <= T && next_on[i * (T + 1) + t] >= t + B)
        return fail(ScheduleViolation::activation_gap, i, i, t,
                    "processor " + std::to_string(i) + " has no activation in steps [" + std::to_string(t) + ", " +
                        std::to_string(t + B - 1) + "]");
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t v = s.tau(i, j, t);
        if (i == j) {
          if (v != t)
            return fail(ScheduleViolation::staleness_out_of_range, i, j, t,
                        "own block of processor " + std::to_string(i) + " is stale at step " + std::to_string(t));
          continue;
        }
        if (s.active(i, t) && (v > t || v + B <= t))
          return fail(ScheduleViolation::staleness_out_of_range, i, j, t,
                      "tau(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + std::to_string(v) +
                          " at step " + std::to_string(t) + " is outside (t - B, t] with B = " + std::to_string(B));
        if (t > 0 && v < s.tau(i, j, t - 1))
          return fail(ScheduleViolation::staleness_regression, i, j, t,
                      "tau(" + std::to_string(i) + ", " + std::to_string(j) + ") decreases at step " + std::to_string(t));
      }
    }
  }
  return {};
}

void write_schedule_csv(const AsyncSchedule& s, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path.string());
  std::fputs("t,i,active", f);
  for (std::size_t j = 0; j < s.processors(); ++j) std::fprintf(f, ",tau_%zu", j);
  std::fputc('\n', f);
  for (std::size_t t = 0; t < s.horizon(); ++t)
    for (std::size_t i = 0; i < s.processors(); ++i) {
      std::fprintf(f, "%zu,%zu,%d", t, i, s.active(i, t) ? 1 : 0);
      for (std::size_t j = 0; j < s.processors(); ++j) std::fprintf(f, ",%zu", s.tau(i, j, t));
      std::fputc('\n', f);
    }
  std::fclose(f);
}

}  // namespace asyncbcd
