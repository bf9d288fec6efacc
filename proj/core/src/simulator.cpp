#include "asyncbcd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asyncbcd {

LemmaCoefficients lemma_coefficients(double L, std::size_t n, std::size_t B, double gamma) {
  const double nn = static_cast<double>(n);
  const double bb = static_cast<double>(B);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  LemmaCoefficients c;
  c.lemma2_past = (L / 2.0) * g2 * nn * bb;
  c.lemma2_current = g2 * L * (bb * (nn + 1.0) / 2.0 + 1.0) - gamma;
  c.lemma3_past = nn * nn * bb * g4 * L * L + g2 * L * nn;
  c.lemma3_gradient = g2 + g4 * L * nn * bb;
  return c;
}

Simulator::Simulator(const ObjectiveInstance& obj, const BlockPartition& partition, ScheduleSource& schedule, Vector x0,
                     double gamma, SimulationOptions options)
    : obj_(obj),
      partition_(partition),
      schedule_(schedule),
      options_(options),
      gamma_(gamma),
      n_(partition.blocks()),
      B_(schedule.delay_bound()),
      x_(std::move(x0)) {
  if (!obj_.fn) throw std::invalid_argument("objective instance has no function");
  if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw std::invalid_argument("stepsize gamma must be positive and finite");
  if (x_.size() != obj_.dimension())
    throw std::invalid_argument("x0 has dimension " + std::to_string(x_.size()) + ", objective expects " +
                                std::to_string(obj_.dimension()));
  if (partition_.dimension() != obj_.dimension())
    throw std::invalid_argument("partition covers " + std::to_string(partition_.dimension()) +
                                " coordinates, objective has " + std::to_string(obj_.dimension()));
  if (schedule_.processors() != n_)
    throw std::invalid_argument("schedule has " + std::to_string(schedule_.processors()) + " processors, partition has " +
                                std::to_string(n_) + " blocks");
  if (options_.record_every == 0) throw std::invalid_argument("record_every must be positive");
  if (options_.margin_cache) {
    margins_ = obj_.fn->margin_model();
    if (margins_ == nullptr) throw std::invalid_argument("objective '" + obj_.name() + "' has no margin model");
    margin_buf_.resize(margins_->samples());
  }

  history_.resize(n_);
  grads_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Entry e{0, Vector(partition_.block(std::span<const double>(x_), j).begin(),
                      partition_.block(std::span<const double>(x_), j).end()),
            {}};
    if (margins_) {
      e.margins.resize(margins_->samples());
      margins_->block_margins(partition_.offset(j), e.values, e.margins);
    }
    history_[j].push_back(std::move(e));
    grads_[j].resize(partition_.size(j));
  }
  view_.resize(x_.size());

  trace_.objective = obj_.name();
  trace_.processors = n_;
  trace_.delay_bound = B_;
  trace_.horizon = schedule_.horizon();
  trace_.gamma = gamma_;
  trace_.f_star = obj_.f_star;
  trace_.lipschitz = obj_.lipschitz;
}

bool Simulator::finished() const { return stopped_ || t_ >= schedule_.horizon(); }

const Simulator::Entry& Simulator::lookup(std::size_t j, std::size_t tau) const {
  if (tau > t_ || tau + B_ <= t_)
    throw std::logic_error("staleness tau = " + std::to_string(tau) + " for block " + std::to_string(j) + " at step " +
                           std::to_string(t_) + " is outside the delay window");
  const auto& h = history_[j];
  if (h.empty() || h.front().since > tau)
    throw std::logic_error("history underflow for block " + std::to_string(j) + " at tau = " + std::to_string(tau));
  auto it = std::upper_bound(h.begin(), h.end(), tau, [](std::size_t v, const Entry& e) { return v < e.since; });
  return *std::prev(it);
}

void Simulator::assemble_view(const ScheduleSlice& sl, std::size_t i, Vector& view) const {
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t off = partition_.offset(j);
    if (j == i || sl.fresh) {
      std::copy_n(x_.begin() + static_cast<std::ptrdiff_t>(off), partition_.size(j),
                  view.begin() + static_cast<std::ptrdiff_t>(off));
    } else {
      const Entry& e = lookup(j, sl.tau(i, j));
      std::copy(e.values.begin(), e.values.end(), view.begin() + static_cast<std::ptrdiff_t>(off));
    }
  }
}

Vector Simulator::local_view(std::size_t i) {
  if (i >= n_) throw std::out_of_range("processor index " + std::to_string(i) + " out of range");
  if (finished()) throw std::logic_error("simulation has finished");
  Vector view(x_.size());
  assemble_view(schedule_.slice(t_), i, view);
  return view;
}

void Simulator::block_gradient(const ScheduleSlice& sl, std::size_t i, std::span<double> out) {
  if (margins_) {
    margin_src_.clear();
    for (std::size_t j = 0; j < n_; ++j) {
      const Entry& e = j == i ? history_[j].back() : lookup(j, sl.fresh ? t_ : sl.tau(i, j));
      margin_src_.push_back(e.margins.data());
    }
    const std::size_t count = margin_buf_.size();
    constexpr std::size_t kChunk = 256;
    for (std::size_t k0 = 0; k0 < count; k0 += kChunk) {
      const std::size_t k1 = std::min(count, k0 + kChunk);
      double* dst = margin_buf_.data();
      std::copy(margin_src_[0] + k0, margin_src_[0] + k1, dst + k0);
      for (std::size_t j = 1; j < n_; ++j) {
        const double* src = margin_src_[j];
        for (std::size_t k = k0; k < k1; ++k) dst[k] += src[k];
      }
    }
    margins_->block_gradient_from_margins(margin_buf_, partition_.offset(i), partition_.block(std::span<const double>(x_), i),
                                          out);
    return;
  }
  if (sl.fresh) {
    obj_.fn->partial_gradient(x_, partition_.offset(i), out);
    return;
  }
  assemble_view(sl, i, view_);
  obj_.fn->partial_gradient(view_, partition_.offset(i), out);
}

double Simulator::true_value() const {
  if (!margins_) return obj_.fn->value(x_);
  Vector total(margins_->samples(), 0.0);
  for (const auto& h : history_) {
    const auto& m = h.back().margins;
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += m[k];
  }
  return margins_->value_from_margins(total, squared_norm(x_));
}

void Simulator::prune() {
  const std::size_t floor = t_ + 1 >= B_ ? t_ + 1 - B_ : 0;
  for (auto& h : history_)
    while (h.size() > 1 && h[1].since <= floor) h.pop_front();
}

std::optional<TraceRecord> Simulator::step() {
  if (finished()) throw std::logic_error("step past the end of the simulation");
  const ScheduleSlice& sl = schedule_.slice(t_);

  double s_sq = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!sl.is_active(i)) continue;
    block_gradient(sl, i, grads_[i]);
    s_sq += squared_norm(grads_[i]);
  }

  const bool boundary = t_ % B_ == 0;
  const bool keep = t_ % options_.record_every == 0 || options_.diagnostics;
  std::optional<TraceRecord> rec;
  double f = 0.0;
  if (boundary || keep) {
    f = true_value();
    if (boundary) trace_.window_values.push_back(f);
  }
  if (keep) {
    rec.emplace();
    rec->t = t_;
    rec->f_true = f;
    if (obj_.f_star) rec->gap = f - *obj_.f_star;
    rec->s_norm_sq = s_sq;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) rec->max_staleness = std::max(rec->max_staleness, t_ - sl.tau(i, j));
    if (options_.diagnostics) {
      Vector g(x_.size());
      obj_.fn->gradient(x_, g);
      rec->grad_norm_sq = squared_norm(g);

      double worst = 0.0;
      Vector view(x_.size());
      for (std::size_t i = 0; i < n_; ++i) {
        assemble_view(sl, i, view);
        worst = std::max(worst, std::sqrt(squared_distance(view, x_)));
      }
      double past_norms = 0.0;
      double past_sq = 0.0;
      for (double v : recent_s_) {
        past_norms += std::sqrt(v);
        past_sq += v;
      }
      rec->lemma1 = LemmaPair{worst, gamma_ * past_norms};
      if (obj_.lipschitz) {
        const auto c = lemma_coefficients(*obj_.lipschitz, n_, B_, gamma_);
        rec->lemma3 = LemmaPair{0.0, c.lemma3_past * past_sq + c.lemma3_gradient * *rec->grad_norm_sq};
      }
    }
  }

  const double scale = std::abs(obj_.f_star ? f - *obj_.f_star : f);
  if ((boundary || keep) && (!std::isfinite(f) || scale > options_.divergence_gap)) {
    trace_.diverged = true;
    stopped_ = true;
  } else if (keep && options_.stop_gap && rec->gap && *rec->gap <= *options_.stop_gap) {
    trace_.stopped_early = true;
    stopped_ = true;
  }
  if (stopped_) {
    if (rec) trace_.records.push_back(*rec);
    finalize();
    return rec;
  }

  double moved = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!sl.is_active(i)) continue;
    auto xb = partition_.block(std::span<double>(x_), i);
    Entry e{t_ + 1, Vector(xb.size()), {}};
    for (std::size_t c = 0; c < xb.size(); ++c) {
      const double next = xb[c] - gamma_ * grads_[i][c];
      const double d = next - xb[c];
      moved += d * d;
      xb[c] = next;
      e.values[c] = next;
    }
    if (margins_) {
      e.margins.resize(margins_->samples());
      margins_->block_margins(partition_.offset(i), e.values, e.margins);
    }
    history_[i].push_back(std::move(e));
  }
  if (rec && rec->lemma3) rec->lemma3->lhs = moved;

  window_acc_ += s_sq;
  if ((t_ + 1) % B_ == 0) {
    trace_.window_s_sums.push_back(window_acc_);
    window_acc_ = 0.0;
  }
  if (options_.diagnostics) {
    recent_s_.push_back(s_sq);
    if (recent_s_.size() > B_) recent_s_.pop_front();
  }

  ++t_;
  prune();
  if (rec) trace_.records.push_back(*rec);
  if (t_ >= schedule_.horizon()) finalize();
  return rec;
}

void Simulator::finalize() {
  if (finalized_) return;
  finalized_ = true;
  trace_.steps = t_;
  trace_.final_state = x_;
  trace_.final_value = true_value();
  if (!stopped_ && t_ % B_ == 0) trace_.window_values.push_back(trace_.final_value);

  if (!options_.diagnostics || !obj_.lipschitz) return;
  const auto c = lemma_coefficients(*obj_.lipschitz, n_, B_, gamma_);
  for (auto& r : trace_.records) {
    if (r.t % B_ != 0) continue;
    const std::size_t k = r.t / B_;
    if (k + 1 >= trace_.window_values.size() || k >= trace_.window_s_sums.size()) continue;
    const double past = k == 0 ? 0.0 : trace_.window_s_sums[k - 1];
    r.lemma2 = LemmaPair{trace_.window_values[k + 1] - trace_.window_values[k],
                         c.lemma2_past * past + c.lemma2_current * trace_.window_s_sums[k]};
  }
}

SimulationTrace Simulator::run() {
  while (!finished()) step();
  finalize();
  return trace_;
}

SimulationTrace run(const ObjectiveInstance& obj, const BlockPartition& partition, ScheduleSource& schedule,
                    const Vector& x0, double gamma, SimulationOptions options) {
  Simulator sim(obj, partition, schedule, x0, gamma, options);
  return sim.run();
}

SimulationTrace run(const ObjectiveInstance& obj, const BlockPartition& partition, const AsyncSchedule& schedule,
                    const Vector& x0, double gamma, SimulationOptions options) {
  TableScheduleSource source(schedule);
  return run(obj, partition, source, x0, gamma, options);
}

}  // namespace asyncbcd
