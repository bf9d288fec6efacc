#include "asyncbcd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asyncbcd {

namespace {

void require_positive(double mu, double L, std::size_t n, std::size_t B) {
  if (!(mu > 0.0) || !(L > 0.0) || n == 0 || B == 0)
    throw std::invalid_argument("mu, L, n and B must all be positive");
}

double a1(double L, double n, double B) { return (L / 2.0) * n * B * (1.0 + 2.0 * L * (B * (n + 1.0) / 2.0 + 1.0)); }

double a2(double mu, double L, double n, double B) {
  return 2.0 * mu + a1(L, n, B) * ((L / 2.0) * n * B + 4.0 * L * n * B + 8.0);
}

}  // namespace

std::array<double, 7> stepsize_bounds(double mu, double L, std::size_t n_, std::size_t B_) {
  require_positive(mu, L, n_, B_);
  const double n = static_cast<double>(n_);
  const double B = static_cast<double>(B_);
  return {
      (2.0 / L) / (L * n * n * B + B + 1.0),
      1.0 / (L * (B / 2.0) * (n + 1.0) + L + (L / 2.0) * n * B),
      (1.0 / (2.0 * L)) / (L * n * B + B + 1.0),
      mu / (a2(mu, L, n, B) * L * n) / ((1.0 + L * (B * (n + 1.0) + 2.0)) * (n * B * L * L + L + B + 1.0)),
      1.0 / (L * (B / 2.0) * (3.0 * n + 1.0) + L + mu + 1.0),
      1.0 / mu,
      1.0,
  };
}

double compute_gamma0(double mu, double L, std::size_t n, std::size_t B) {
  const auto bounds = stepsize_bounds(mu, L, n, B);
  return *std::min_element(bounds.begin(), bounds.end());
}

TheoremConstants compute_constants(double mu, double L, std::size_t n_, std::size_t B_, double gamma) {
  require_positive(mu, L, n_, B_);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  const double n = static_cast<double>(n_);
  const double B = static_cast<double>(B_);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  TheoremConstants c{mu, L, n_, B_, gamma};
  c.gamma0 = compute_gamma0(mu, L, n_, B_);
  c.C1 = -mu * (g4 * L * L * n * B + g2 * (L * B + L) - 2.0 * gamma);
  c.C2 = 0.5 * n * n * B * g4 * L * L * L + 0.5 * g2 * L * (L + 1.0) * n;
  c.C3 = (L / 2.0) * g2 * n * B;
  c.C4 = gamma - g2 * L * (B * (n + 1.0) / 2.0 + 1.0);
  c.A1 = a1(L, n, B);
  c.A2 = a2(mu, L, n, B);
  return c;
}

double descent_denominator(double L, std::size_t n_, std::size_t B_, double gamma) {
  const double n = static_cast<double>(n_);
  const double B = static_cast<double>(B_);
  return 1.0 / gamma - L * (B * (n + 1.0) / 2.0 + 1.0) - (L / 2.0) * n * B;
}

WindowSeries estimate_eta(const SimulationTrace& trace) {
  if (!trace.f_star) throw std::invalid_argument("f* unknown: alpha cannot be formed");
  if (trace.delay_bound == 0 || trace.steps < 2 * trace.delay_bound || trace.window_s_sums.size() < 2)
    throw std::invalid_argument("trace covers " + std::to_string(trace.steps) + " steps, need at least 2B = " +
                                std::to_string(2 * trace.delay_bound));
  WindowSeries s;
  s.delay_bound = trace.delay_bound;
  for (double f : trace.window_values) s.alpha.push_back(f - *trace.f_star);
  const double g2 = trace.gamma * trace.gamma;
  s.beta.push_back(0.0);
  for (double sum : trace.window_s_sums) s.beta.push_back(g2 * sum);
  s.eta = std::max({s.alpha[0], s.alpha[1], s.beta[0], s.beta[1]});
  return s;
}

BoundReport check_theorem_bound(const WindowSeries& series, double mu, double gamma, double slack) {
  const double q = 1.0 - gamma * mu;
  if (!(gamma * mu > 0.0) || !(q > 0.0)) throw std::invalid_argument("theorem bound needs 0 < gamma * mu < 1");
  BoundReport r;
  const std::size_t K = std::max(series.alpha.size(), series.beta.size());
  for (std::size_t k = 1; k < K; ++k) {
    WindowCheck w;
    w.k = k;
    w.bound = std::pow(q, static_cast<double>(k - 1)) * series.eta;
    bool bad = false;
    auto visit = [&](const std::vector<double>& v, std::optional<double>& slot) {
      if (k >= v.size()) return;
      slot = v[k];
      if (v[k] > w.bound + slack) bad = true;
      if (w.bound > 0.0) r.worst_ratio = std::max(r.worst_ratio, v[k] / w.bound);
      else if (v[k] > 0.0) r.worst_ratio = std::numeric_limits<double>::infinity();
    };
    visit(series.alpha, w.alpha);
    visit(series.beta, w.beta);
    if (bad && r.pass) {
      r.pass = false;
      r.first_violation = k;
    }
    r.windows.push_back(w);
  }
  return r;
}

ContractionFit fit_contraction(const WindowSeries& series) {
  std::vector<double> ks, ys;
  for (std::size_t k = 0; k < series.alpha.size(); ++k)
    if (series.alpha[k] > 1e-14) {
      ks.push_back(static_cast<double>(k));
      ys.push_back(std::log(series.alpha[k]));
    }
  if (ks.size() < 5)
    throw std::invalid_argument("contraction fit needs 5 windows with alpha > 1e-14, found " + std::to_string(ks.size()));
  const double cnt = static_cast<double>(ks.size());
  double mk = 0.0, my = 0.0;
  for (std::size_t p = 0; p < ks.size(); ++p) {
    mk += ks[p];
    my += ys[p];
  }
  mk /= cnt;
  my /= cnt;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t p = 0; p < ks.size(); ++p) {
    sxy += (ks[p] - mk) * (ys[p] - my);
    sxx += (ks[p] - mk) * (ks[p] - mk);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t p = 0; p < ks.size(); ++p) {
    const double e = ys[p] - (my + slope * (ks[p] - mk));
    ss += e * e;
  }
  return {std::exp(slope), std::sqrt(ss / cnt), ks.size()};
}

LemmaReport check_lemmas(const SimulationTrace& trace, double slack) {
  LemmaReport rep;
  auto tally = [slack](LemmaTally& t, const std::optional<LemmaPair>& p, std::size_t step) {
    if (!p) return;
    ++t.checked;
    const double excess = p->lhs - p->rhs;
    if (t.checked == 1 || excess > t.worst_excess) t.worst_excess = excess;
    if (excess > slack) {
      ++t.violations;
      if (!t.first_violation) t.first_violation = step;
    }
  };
  for (const auto& r : trace.records) {
    tally(rep.lemma1, r.lemma1, r.t);
    tally(rep.lemma2, r.lemma2, r.t);
    tally(rep.lemma3, r.lemma3, r.t);
  }
  return rep;
}

std::optional<std::size_t> first_hit(const SimulationTrace& trace, double threshold) {
  for (const auto& r : trace.records)
    if (r.gap && *r.gap <= threshold) return r.t;
  return std::nullopt;
}

}  // namespace asyncbcd
