#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asyncbcd/partition.hpp"
#include "asyncbcd/vector_ops.hpp"

namespace asyncbcd {

enum class CertificateProvenance { analytic, rc_derived, estimated };

const char* to_string(CertificateProvenance p);

struct PLCertificate {
  double mu = 0.0;
  CertificateProvenance provenance = CertificateProvenance::analytic;
};

struct RCParameters {
  double alpha = 0.0;
  double beta = 0.0;
  Vector minimizer;
};

/// Objectives of the form f(x) = g(Zx) + r(x) can expose their per-sample margins so that a
/// caller holding per-block partial margins Z_b x_b avoids recomputing Zx from scratch.
class MarginModel {
 public:
  virtual ~MarginModel() = default;
  virtual std::size_t samples() const = 0;
  /// out[k] = sum over c in [offset, offset + xb.size()) of Z[k][c] * xb[c - offset].
  virtual void block_margins(std::size_t offset, std::span<const double> xb, std::span<double> out) const = 0;
  virtual double value_from_margins(std::span<const double> margins, double x_squared_norm) const = 0;
  virtual void block_gradient_from_margins(std::span<const double> margins, std::size_t offset,
                                           std::span<const double> xb, std::span<double> out) const = 0;
};

class ObjectiveFunction {
 public:
  virtual ~ObjectiveFunction() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> g) const = 0;

  /// Coordinates [offset, offset + out.size()) of the gradient. The default slices the full
  /// gradient, so overrides must reproduce the same arithmetic to keep results bitwise equal.
  virtual void partial_gradient(std::span<const double> x, std::size_t offset, std::span<double> out) const;

  virtual const MarginModel* margin_model() const { return nullptr; }
};

/// An objective together with whatever constants are known about it.
struct ObjectiveInstance {
  std::shared_ptr<const ObjectiveFunction> fn;
  std::optional<PLCertificate> certificate;
  std::optional<double> lipschitz;
  std::optional<double> f_star;
  /// Upper bound on f_star's own error when it was computed numerically.
  double f_star_residual = 0.0;
  std::optional<RCParameters> rc;

  std::size_t dimension() const { return fn->dimension(); }
  std::string name() const { return fn->name(); }
};

/// All three throw std::invalid_argument naming both dimensions when x has the wrong size.
double eval_value(const ObjectiveInstance& obj, std::span<const double> x);
Vector eval_gradient(const ObjectiveInstance& obj, std::span<const double> x);
Vector eval_block_gradient(const ObjectiveInstance& obj, std::span<const double> x, std::size_t i,
                           const BlockPartition& partition);

PLCertificate rc_to_pl(const RCParameters& rc, double L);

/// Attaches rc, the derived PL certificate, and f* = f(x*). Requires obj.lipschitz.
ObjectiveInstance with_rc_certificate(ObjectiveInstance obj, RCParameters rc);

struct PLCheckReport {
  double worst_ratio = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool pass = false;
};

inline constexpr double kPLGapFloor = 1e-12;
inline constexpr double kPLTolerance = 1e-10;

/// Evaluates 0.5*|grad f(z)|^2 >= mu*(f(z) - f*) at every point. Points with gap below
/// kPLGapFloor are skipped. Throws std::invalid_argument when f* is unknown.
PLCheckReport check_pl_at(const ObjectiveInstance& obj, const PLCertificate& cert,
                          const std::vector<Vector>& points, double tolerance = kPLTolerance);

struct RCCheckReport {
  /// min over points of lhs - rhs for <g, z - x*> >= |g|^2/alpha + |z - x*|^2/beta.
  double worst_slack = 0.0;
  std::size_t worst_index = 0;
  /// min over points of |g| - |z - x*|/beta.
  double worst_norm_slack = 0.0;
  bool pass = false;
};

RCCheckReport check_rc_at(const ObjectiveInstance& obj, const RCParameters& rc, const std::vector<Vector>& points,
                          double tolerance = kPLTolerance);

struct GradientCheckReport {
  double max_relative_error = 0.0;
  std::size_t worst_index = 0;
  bool pass = false;
};

/// Central differences with step 1e-6 * max(1, |x_k|).
GradientCheckReport check_gradient_fd(const ObjectiveInstance& obj, const std::vector<Vector>& points,
                                      double tolerance = 1e-5);

}  // namespace asyncbcd
