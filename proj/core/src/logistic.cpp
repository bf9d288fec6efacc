#include "asyncbcd/logistic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asyncbcd {

double softplus(double a) { return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a))); }

double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

namespace {

class Logistic final : public ObjectiveFunction, public MarginModel {
 public:
  Logistic(const Dataset& d, double lambda)
      : n_(d.samples), m_(d.features), rows_(d.values), cols_(d.values.size()), lambda_(lambda) {
    labels_.reserve(n_);
    for (int y : d.labels) labels_.push_back(static_cast<double>(y));
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t c = 0; c < m_; ++c) cols_[c * n_ + k] = rows_[k * m_ + c];
  }

  std::string name() const override { return "logistic-l2"; }
  std::size_t dimension() const override { return m_; }

  double value(std::span<const double> x) const override {
    double loss = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = dot({rows_.data() + k * m_, m_}, x);
      loss += softplus(a) - labels_[k] * a;
    }
    return loss / count() + regularizer(squared_norm(x));
  }

  void gradient(std::span<const double> x, std::span<double> g) const override {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t k = 0; k < n_; ++k) {
      const double* z = rows_.data() + k * m_;
      const double r = sigmoid(dot({z, m_}, x)) - labels_[k];
      for (std::size_t c = 0; c < m_; ++c) g[c] += r * z[c];
    }
    const double ridge = lambda_ / count();
    for (std::size_t c = 0; c < m_; ++c) g[c] = g[c] / count() + ridge * x[c];
  }

  const MarginModel* margin_model() const override { return this; }

  std::size_t samples() const override { return n_; }

  void block_margins(std::size_t offset, std::span<const double> xb, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t c = 0; c < xb.size(); ++c) {
      const double* col = cols_.data() + (offset + c) * n_;
      const double v = xb[c];
      for (std::size_t k = 0; k < n_; ++k) out[k] += col[k] * v;
    }
  }

  double value_from_margins(std::span<const double> margins, double x_squared_norm) const override {
    double loss = 0.0;
    for (std::size_t k = 0; k < n_; ++k) loss += softplus(margins[k]) - labels_[k] * margins[k];
    return loss / count() + regularizer(x_squared_norm);
  }

  void block_gradient_from_margins(std::span<const double> margins, std::size_t offset, std::span<const double> xb,
                                   std::span<double> out) const override {
    thread_local Vector residual;
    residual.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) residual[k] = sigmoid(margins[k]) - labels_[k];
    const std::size_t width = out.size();
    constexpr std::size_t kChunk = 16;
    for (std::size_t c0 = 0; c0 < width; c0 += kChunk) {
      const std::size_t w = std::min(kChunk, width - c0);
      double acc[kChunk] = {};
      for (std::size_t k = 0; k < n_; ++k) {
        const double* z = rows_.data() + k * m_ + offset + c0;
        const double r = residual[k];
        for (std::size_t c = 0; c < w; ++c) acc[c] += z[c] * r;
      }
      for (std::size_t c = 0; c < w; ++c) out[c0 + c] = acc[c];
    }
    const double ridge = lambda_ / count();
    for (std::size_t c = 0; c < width; ++c) out[c] = out[c] / count() + ridge * xb[c];
  }

 private:
  double count() const { return static_cast<double>(n_); }
  double regularizer(double x_squared_norm) const { return lambda_ / (2.0 * count()) * x_squared_norm; }

  std::size_t n_;
  std::size_t m_;
  Vector rows_;
  Vector cols_;
  Vector labels_;
  double lambda_;
};

}  // namespace

double squared_operator_norm(const Dataset& d, int iterations, double tolerance) {
  if (d.samples == 0 || d.features == 0) return 0.0;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Z(
      d.values.data(), static_cast<Eigen::Index>(d.samples), static_cast<Eigen::Index>(d.features));
  Eigen::VectorXd v = Eigen::VectorXd::Constant(Z.cols(), 1.0 / std::sqrt(static_cast<double>(Z.cols())));
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd w = Z.transpose() * (Z * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    const bool converged = std::abs(next - estimate) <= tolerance * next;
    estimate = next;
    if (converged) break;
  }
  return estimate;
}

LogisticOptimum solve_logistic(const ObjectiveInstance& obj, double tolerance, int max_iterations) {
  const auto* model = obj.fn ? obj.fn->margin_model() : nullptr;
  if (model == nullptr || !obj.certificate) throw std::invalid_argument("Newton solve needs a regularized logistic model");
  const std::size_t m = obj.dimension();
  const std::size_t n = model->samples();
  const double mu = obj.certificate->mu;
  // Z and y are recovered through the margin interface so this stays independent of the storage layout.
  Eigen::MatrixXd Z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  Vector unit(1, 1.0), column(n);
  for (std::size_t c = 0; c < m; ++c) {
    model->block_margins(c, unit, column);
    for (std::size_t k = 0; k < n; ++k) Z(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) = column[k];
  }

  LogisticOptimum opt;
  opt.x.assign(m, 0.0);
  Vector g(m);
  double fx = obj.fn->value(opt.x);
  for (; opt.iterations < max_iterations; ++opt.iterations) {
    obj.fn->gradient(opt.x, g);
    opt.grad_norm = norm(g);
    if (opt.grad_norm <= tolerance) break;
    const Eigen::Map<const Eigen::VectorXd> x(opt.x.data(), static_cast<Eigen::Index>(m));
    const Eigen::VectorXd a = Z * x;
    Eigen::VectorXd w(a.size());
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      const double s = sigmoid(a(k));
      w(k) = s * (1.0 - s);
    }
    Eigen::MatrixXd H = Z.transpose() * w.asDiagonal() * Z / static_cast<double>(n);
    H.diagonal().array() += mu;
    const Eigen::VectorXd dir = H.ldlt().solve(Eigen::Map<const Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(m)));
    double step = 1.0;
    Vector trial(m);
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      for (std::size_t c = 0; c < m; ++c) trial[c] = opt.x[c] - step * dir(static_cast<Eigen::Index>(c));
      const double ft = obj.fn->value(trial);
      if (ft <= fx) {
        fx = ft;
        break;
      }
    }
    opt.x = trial;
  }
  obj.fn->gradient(opt.x, g);
  opt.grad_norm = norm(g);
  opt.value = obj.fn->value(opt.x);
  opt.residual = opt.grad_norm * opt.grad_norm / (2.0 * mu);
  return opt;
}

ObjectiveInstance make_logistic(const Dataset& d, double lambda, bool estimate_optimum) {
  if (d.samples == 0 || d.features == 0) throw std::invalid_argument("logistic objective needs a nonempty dataset");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  for (int y : d.labels)
    if (y != 0 && y != 1) throw std::invalid_argument("logistic labels must be 0 or 1");
  ObjectiveInstance obj;
  obj.fn = std::make_shared<Logistic>(d, lambda);
  const double count = static_cast<double>(d.samples);
  obj.lipschitz = (0.25 * squared_operator_norm(d) + lambda) / count;
  if (lambda > 0.0) {
    obj.certificate = PLCertificate{lambda / count, CertificateProvenance::analytic};
    if (estimate_optimum) {
      const auto opt = solve_logistic(obj);
      obj.f_star = opt.value;
      obj.f_star_residual = opt.residual;
    }
  }
  return obj;
}

}  // namespace asyncbcd
