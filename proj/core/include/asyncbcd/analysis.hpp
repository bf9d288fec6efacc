#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "asyncbcd/simulator.hpp"

namespace asyncbcd {

struct TheoremConstants {
  double mu = 0.0;
  double L = 0.0;
  std::size_t n = 0;
  std::size_t B = 0;
  double gamma = 0.0;

  double gamma0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double C4 = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
};

/// Throws std::invalid_argument unless every input is positive.
TheoremConstants compute_constants(double mu, double L, std::size_t n, std::size_t B, double gamma);

/// The seven stepsize ceilings whose minimum is gamma0, in a fixed order.
std::array<double, 7> stepsize_bounds(double mu, double L, std::size_t n, std::size_t B);
double compute_gamma0(double mu, double L, std::size_t n, std::size_t B);

/// 1/gamma - L(B(n+1)/2 + 1) - (L/2)nB, which must stay positive below gamma0.
double descent_denominator(double L, std::size_t n, std::size_t B, double gamma);

struct WindowSeries {
  std::size_t delay_bound = 0;
  /// alpha[k] = f(x(kB)) - f*.
  std::vector<double> alpha;
  /// beta[0] = 0 and beta[k] = gamma^2 * sum_{tau=(k-1)B}^{kB-1} |s(tau)|^2.
  std::vector<double> beta;
  double eta = 0.0;
};

/// eta = max(alpha[0], alpha[1], beta[0], beta[1]). Throws std::invalid_argument when f* is
/// unknown or the trace is shorter than 2B steps.
WindowSeries estimate_eta(const SimulationTrace& trace);

struct WindowCheck {
  std::size_t k = 0;
  double bound = 0.0;
  std::optional<double> alpha;
  std::optional<double> beta;
};

struct BoundReport {
  bool pass = true;
  /// First k whose alpha or beta exceeds its bound.
  std::optional<std::size_t> first_violation;
  /// Largest value / bound seen, over both series.
  double worst_ratio = 0.0;
  std::vector<WindowCheck> windows;
};

inline constexpr double kBoundSlack = 1e-12;

/// alpha[k] <= (1 - gamma mu)^(k-1) eta and beta[k] <= (1 - gamma mu)^(k-1) eta for every k >= 1,
/// up to an absolute slack. Throws std::invalid_argument unless 0 < gamma mu < 1.
BoundReport check_theorem_bound(const WindowSeries& series, double mu, double gamma, double slack = kBoundSlack);

struct ContractionFit {
  double rho = 0.0;
  double residual = 0.0;
  std::size_t windows_used = 0;
};

/// Least-squares slope of log alpha[k] against k over windows with alpha > 1e-14; rho = exp(slope).
/// Throws std::invalid_argument when fewer than 5 windows qualify.
ContractionFit fit_contraction(const WindowSeries& series);

struct LemmaTally {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;
  /// Largest lhs - rhs seen.
  double worst_excess = 0.0;
};

struct LemmaReport {
  LemmaTally lemma1;
  LemmaTally lemma2;
  LemmaTally lemma3;
  bool pass() const { return lemma1.violations == 0 && lemma2.violations == 0 && lemma3.violations == 0; }
};

/// Tallies lhs > rhs + slack over the lemma pairs recorded in a diagnostics trace.
LemmaReport check_lemmas(const SimulationTrace& trace, double slack = kBoundSlack);

/// First recorded step whose gap is at most threshold.
std::optional<std::size_t> first_hit(const SimulationTrace& trace, double threshold);

}  // namespace asyncbcd
