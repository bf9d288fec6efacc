#include "asyncbcd/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace asyncbcd {

namespace {

void require_dimension(const ObjectiveInstance& obj, std::size_t got) {
  if (!obj.fn) throw std::invalid_argument("objective instance has no function");
  if (got != obj.dimension())
    throw std::invalid_argument("dimension mismatch: objective '" + obj.name() + "' expects " +
                                std::to_string(obj.dimension()) + ", point has " + std::to_string(got));
}

}  // namespace

const char* to_string(CertificateProvenance p) {
  switch (p) {
    case CertificateProvenance::analytic: return "analytic";
    case CertificateProvenance::rc_derived: return "rc-derived";
    case CertificateProvenance::estimated: return "estimated";
  }
  return "unknown";
}

void ObjectiveFunction::partial_gradient(std::span<const double> x, std::size_t offset, std::span<double> out) const {
  Vector g(dimension());
  gradient(x, g);
  std::copy_n(g.begin() + static_cast<std::ptrdiff_t>(offset), out.size(), out.begin());
}

double eval_value(const ObjectiveInstance& obj, std::span<const double> x) {
  require_dimension(obj, x.size());
  return obj.fn->value(x);
}

Vector eval_gradient(const ObjectiveInstance& obj, std::span<const double> x) {
  require_dimension(obj, x.size());
  Vector g(x.size());
  obj.fn->gradient(x, g);
  return g;
}

Vector eval_block_gradient(const ObjectiveInstance& obj, std::span<const double> x, std::size_t i,
                           const BlockPartition& partition) {
  require_dimension(obj, x.size());
  if (partition.dimension() != x.size())
    throw std::invalid_argument("partition covers " + std::to_string(partition.dimension()) +
                                " coordinates, point has " + std::to_string(x.size()));
  if (i >= partition.blocks())
    throw std::out_of_range("block index " + std::to_string(i) + " out of range for " +
                            std::to_string(partition.blocks()) + " blocks");
  Vector out(partition.size(i));
  obj.fn->partial_gradient(x, partition.offset(i), out);
  return out;
}

PLCertificate rc_to_pl(const RCParameters& rc, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("Lipschitz constant must be positive");
  if (!(rc.alpha > 0.0) || !(rc.beta > 0.0)) throw std::invalid_argument("RC parameters must be positive");
  return {1.0 / (rc.beta * rc.beta * L), CertificateProvenance::rc_derived};
}

ObjectiveInstance with_rc_certificate(ObjectiveInstance obj, RCParameters rc) {
  if (!obj.lipschitz) throw std::invalid_argument("RC certificate needs a known Lipschitz constant");
  require_dimension(obj, rc.minimizer.size());
  obj.certificate = rc_to_pl(rc, *obj.lipschitz);
  obj.f_star = obj.fn->value(rc.minimizer);
  obj.f_star_residual = 0.0;
  obj.rc = std::move(rc);
  return obj;
}

PLCheckReport check_pl_at(const ObjectiveInstance& obj, const PLCertificate& cert, const std::vector<Vector>& points,
                          double tolerance) {
  if (!obj.f_star) throw std::invalid_argument("f* unknown for '" + obj.name() + "': estimate it before checking PL");
  if (points.empty()) throw std::invalid_argument("PL check needs at least one point");
  PLCheckReport report;
  report.worst_ratio = std::numeric_limits<double>::infinity();
  report.pass = true;
  const double slack = tolerance + cert.mu * obj.f_star_residual;
  Vector g(obj.dimension());
  for (std::size_t k = 0; k < points.size(); ++k) {
    require_dimension(obj, points[k].size());
    const double gap = obj.fn->value(points[k]) - *obj.f_star;
    if (gap < kPLGapFloor) {
      ++report.skipped;
      continue;
    }
    obj.fn->gradient(points[k], g);
    const double half_sq = 0.5 * squared_norm(g);
    const double ratio = half_sq / gap;
    ++report.checked;
    if (ratio < report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_index = k;
    }
    if (half_sq < cert.mu * gap - slack) report.pass = false;
  }
  return report;
}

RCCheckReport check_rc_at(const ObjectiveInstance& obj, const RCParameters& rc, const std::vector<Vector>& points,
                          double tolerance) {
  require_dimension(obj, rc.minimizer.size());
  RCCheckReport report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  report.worst_norm_slack = std::numeric_limits<double>::infinity();
  Vector g(obj.dimension());
  Vector d(obj.dimension());
  for (std::size_t k = 0; k < points.size(); ++k) {
    require_dimension(obj, points[k].size());
    obj.fn->gradient(points[k], g);
    for (std::size_t c = 0; c < d.size(); ++c) d[c] = points[k][c] - rc.minimizer[c];
    const double lhs = dot(g, d);
    const double rhs = squared_norm(g) / rc.alpha + squared_norm(d) / rc.beta;
    const double slack = lhs - rhs;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_index = k;
    }
    report.worst_norm_slack = std::min(report.worst_norm_slack, norm(g) - norm(d) / rc.beta);
  }
  report.pass = report.worst_slack >= -tolerance && report.worst_norm_slack >= -tolerance;
  return report;
}

GradientCheckReport check_gradient_fd(const ObjectiveInstance& obj, const std::vector<Vector>& points,
                                      double tolerance) {
  GradientCheckReport report;
  Vector g(obj.dimension());
  Vector fd(obj.dimension());
  for (std::size_t k = 0; k < points.size(); ++k) {
    require_dimension(obj, points[k].size());
    Vector x = points[k];
    obj.fn->gradient(x, g);
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double xc = x[c];
      const double h = 1e-6 * std::max(1.0, std::abs(xc));
      x[c] = xc + h;
      const double fp = obj.fn->value(x);
      x[c] = xc - h;
      const double fm = obj.fn->value(x);
      x[c] = xc;
      fd[c] = (fp - fm) / (2.0 * h);
    }
    const double err = std::sqrt(squared_distance(g, fd)) / std::max(norm(g), 1e-8);
    if (err > report.max_relative_error || k == 0) {
      report.max_relative_error = std::max(report.max_relative_error, err);
      if (err >= report.max_relative_error) report.worst_index = k;
    }
  }
  report.pass = report.max_relative_error <= tolerance;
  return report;
}

}  // namespace asyncbcd
