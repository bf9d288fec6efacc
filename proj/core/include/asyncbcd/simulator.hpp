#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "asyncbcd/objective.hpp"
#include "asyncbcd/partition.hpp"
#include "asyncbcd/schedule.hpp"

namespace asyncbcd {

struct LemmaPair {
  double lhs = 0.0;
  double rhs = 0.0;

  friend bool operator==(const LemmaPair&, const LemmaPair&) = default;
};

/// Quantities at step t, all measured on the true state x(t).
struct TraceRecord {
  std::size_t t = 0;
  double f_true = 0.0;
  std::optional<double> gap;
  std::optional<double> grad_norm_sq;
  /// Sum over processors active at t of |grad_i f(x^i(t))|^2.
  double s_norm_sq = 0.0;
  std::size_t max_staleness = 0;
  /// max_i |x^i(t) - x(t)| against gamma * sum_{tau=t-B}^{t-1} |s(tau)|.
  std::optional<LemmaPair> lemma1;
  /// f(x(t+B)) - f(x(t)) against its bound; only at multiples of B.
  std::optional<LemmaPair> lemma2;
  /// |x(t+1) - x(t)|^2 against its bound.
  std::optional<LemmaPair> lemma3;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct SimulationTrace {
  std::string objective;
  std::size_t processors = 0;
  std::size_t delay_bound = 0;
  std::size_t horizon = 0;
  double gamma = 0.0;
  std::optional<double> f_star;
  std::optional<double> lipschitz;

  std::vector<TraceRecord> records;
  /// f(x(kB)) for every kB reached.
  std::vector<double> window_values;
  /// sum_{tau=kB}^{kB+B-1} |s(tau)|^2 for every complete window.
  std::vector<double> window_s_sums;

  /// Number of steps executed; x(steps) is final_state.
  std::size_t steps = 0;
  Vector final_state;
  double final_value = 0.0;
  bool diverged = false;
  bool stopped_early = false;
};

struct SimulationOptions {
  /// Evaluate the full gradient and the lemma 1 and 3 pairs at every recorded step.
  bool diagnostics = false;
  std::size_t record_every = 1;
  /// Keep per-block partial margins in the history. Needs an objective with a margin model.
  bool margin_cache = false;
  /// Stop at the first recorded step whose gap is at most this value.
  std::optional<double> stop_gap;
  double divergence_gap = 1e12;
};

/// Logical-time engine: processor i owns block i, reads the other blocks as they were at
/// tau^i_j(t), and updates its block with a gradient step on that view.
class Simulator {
 public:
  /// Throws std::invalid_argument on dimension or processor-count mismatch and when gamma <= 0.
  Simulator(const ObjectiveInstance& obj, const BlockPartition& partition, ScheduleSource& schedule, Vector x0,
            double gamma, SimulationOptions options = {});

  std::size_t time() const { return t_; }
  bool finished() const;
  const Vector& true_state() const { return x_; }
  /// x^i(t) as processor i sees it at the current step.
  Vector local_view(std::size_t i);

  /// Advances one step. Returns the record for the step just taken when one was kept.
  std::optional<TraceRecord> step();
  /// Steps until the horizon, divergence, or the stopping gap.
  SimulationTrace run();

  const SimulationTrace& trace() const { return trace_; }

 private:
  struct Entry {
    std::size_t since;
    Vector values;
    Vector margins;
  };

  const Entry& lookup(std::size_t j, std::size_t tau) const;
  void assemble_view(const ScheduleSlice& sl, std::size_t i, Vector& view) const;
  void block_gradient(const ScheduleSlice& sl, std::size_t i, std::span<double> out);
  double true_value() const;
  void prune();
  void finalize();

  const ObjectiveInstance& obj_;
  const BlockPartition& partition_;
  ScheduleSource& schedule_;
  const MarginModel* margins_ = nullptr;
  SimulationOptions options_;
  double gamma_;
  std::size_t n_;
  std::size_t B_;
  std::size_t t_ = 0;
  bool stopped_ = false;
  bool finalized_ = false;

  Vector x_;
  std::vector<std::deque<Entry>> history_;
  std::vector<Vector> grads_;
  Vector view_;
  Vector margin_buf_;
  std::vector<const double*> margin_src_;
  std::deque<double> recent_s_;
  double window_acc_ = 0.0;
  SimulationTrace trace_;
};

/// Runs a fresh simulation for horizon steps (capped by the schedule's own horizon).
SimulationTrace run(const ObjectiveInstance& obj, const BlockPartition& partition, ScheduleSource& schedule,
                    const Vector& x0, double gamma, SimulationOptions options = {});
SimulationTrace run(const ObjectiveInstance& obj, const BlockPartition& partition, const AsyncSchedule& schedule,
                    const Vector& x0, double gamma, SimulationOptions options = {});

/// Right-hand side coefficients of the lemma 2 and 3 bounds.
struct LemmaCoefficients {
  double lemma2_past = 0.0;
  double lemma2_current = 0.0;
  double lemma3_past = 0.0;
  double lemma3_gradient = 0.0;
};

LemmaCoefficients lemma_coefficients(double L, std::size_t n, std::size_t B, double gamma);

}  // namespace asyncbcd
