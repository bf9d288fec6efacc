#include "asyncbcd/builtins.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asyncbcd/logistic.hpp"

namespace asyncbcd {

namespace {

class DiagonalQuadratic final : public ObjectiveFunction {
 public:
  explicit DiagonalQuadratic(Vector eig) : eig_(std::move(eig)) {}
  std::string name() const override { return "diagonal-quadratic"; }
  std::size_t dimension() const override { return eig_.size(); }
  double value(std::span<const double> x) const override {
    double s = 0.0;
    for (std::size_t k = 0; k < eig_.size(); ++k) s += eig_[k] * x[k] * x[k];
    return 0.5 * s;
  }
  void gradient(std::span<const double> x, std::span<double> g) const override {
    for (std::size_t k = 0; k < eig_.size(); ++k) g[k] = eig_[k] * x[k];
  }
  void partial_gradient(std::span<const double> x, std::size_t offset, std::span<double> out) const override {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = eig_[offset + k] * x[offset + k];
  }

 private:
  Vector eig_;
};

class PlSine final : public ObjectiveFunction {
 public:
  explicit PlSine(std::size_t m) : m_(m) {}
  std::string name() const override { return "pl-sine"; }
  std::size_t dimension() const override { return m_; }
  double value(std::span<const double> x) const override {
    double s = 0.0;
    for (double v : x) {
      const double sn = std::sin(v);
      s += v * v + 3.0 * sn * sn;
    }
    return s;
  }
  void gradient(std::span<const double> x, std::span<double> g) const override { partial_gradient(x, 0, g); }
  void partial_gradient(std::span<const double> x, std::size_t offset, std::span<double> out) const override {
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double v = x[offset + k];
      out[k] = 2.0 * v + 3.0 * std::sin(2.0 * v);
    }
  }

 private:
  std::size_t m_;
};

class LeastSquares final : public ObjectiveFunction {
 public:
  LeastSquares(std::size_t rows, std::size_t cols, Vector a, Vector b)
      : rows_(rows), cols_(cols), a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return "least-squares"; }
  std::size_t dimension() const override { return cols_; }
  double value(std::span<const double> x) const override {
    const Vector r = residual(x);
    return 0.5 * squared_norm(r);
  }
  void gradient(std::span<const double> x, std::span<double> g) const override { partial_gradient(x, 0, g); }
  void partial_gradient(std::span<const double> x, std::size_t offset, std::span<double> out) const override {
    const Vector r = residual(x);
    for (std::size_t c = 0; c < out.size(); ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) s += a_[k * cols_ + offset + c] * r[k];
      out[c] = s;
    }
  }

 private:
  Vector residual(std::span<const double> x) const {
    Vector r(rows_);
    for (std::size_t k = 0; k < rows_; ++k) r[k] = dot({a_.data() + k * cols_, cols_}, x) - b_[k];
    return r;
  }

  std::size_t rows_;
  std::size_t cols_;
  Vector a_;
  Vector b_;
};

ObjectiveInstance build(const DiagonalQuadraticParams& p) {
  if (p.eigenvalues.empty()) throw std::invalid_argument("diagonal-quadratic needs at least one eigenvalue");
  for (double e : p.eigenvalues)
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("diagonal-quadratic eigenvalues must be finite and >= 0");
  ObjectiveInstance obj;
  obj.fn = std::make_shared<DiagonalQuadratic>(p.eigenvalues);
  const auto [lo, hi] = std::minmax_element(p.eigenvalues.begin(), p.eigenvalues.end());
  obj.f_star = 0.0;
  if (*hi > 0.0) obj.lipschitz = *hi;
  if (*lo > 0.0) obj.certificate = PLCertificate{*lo, CertificateProvenance::analytic};
  return obj;
}

ObjectiveInstance build(const PlSineParams& p) {
  if (p.dimension == 0) throw std::invalid_argument("pl-sine dimension must be positive");
  ObjectiveInstance obj;
  obj.fn = std::make_shared<PlSine>(p.dimension);
  obj.f_star = 0.0;
  obj.lipschitz = 8.0;
  obj.certificate = PLCertificate{1.0 / 32.0, CertificateProvenance::analytic};
  return obj;
}

ObjectiveInstance build(const LeastSquaresParams& p) {
  if (p.rows == 0 || p.cols == 0) throw std::invalid_argument("least-squares matrix must be nonempty");
  if (p.matrix.size() != p.rows * p.cols)
    throw std::invalid_argument("least-squares matrix has " + std::to_string(p.matrix.size()) + " entries, expected " +
                                std::to_string(p.rows * p.cols));
  if (p.rhs.size() != p.rows)
    throw std::invalid_argument("least-squares rhs has " + std::to_string(p.rhs.size()) + " entries, expected " +
                                std::to_string(p.rows));

  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMatrix> A(p.matrix.data(), static_cast<Eigen::Index>(p.rows), static_cast<Eigen::Index>(p.cols));
  const Eigen::Map<const Eigen::VectorXd> b(p.rhs.data(), static_cast<Eigen::Index>(p.rows));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;

  ObjectiveInstance obj;
  obj.fn = std::make_shared<LeastSquares>(p.rows, p.cols, p.matrix, p.rhs);
  if (smax == 0.0) {
    obj.f_star = 0.5 * b.squaredNorm();
    return obj;
  }
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > kRankTolerance * smax) ++rank;
  const auto U = svd.matrixU().leftCols(rank);
  const Eigen::VectorXd outside = b - U * (U.transpose() * b);
  const double f_star = 0.5 * outside.squaredNorm();
  const bool in_range = std::sqrt(2.0 * f_star) <= 1e-10 * std::max(1.0, b.norm());
  if (p.certify && !in_range)
    throw std::invalid_argument("least-squares rhs lies outside range(A) (distance " + std::to_string(std::sqrt(2.0 * f_star)) +
                                "); the certificate needs f* = 0");
  obj.lipschitz = smax * smax;
  obj.f_star = in_range ? 0.0 : f_star;
  if (p.certify) {
    const double smin = sigma(rank - 1);
    obj.certificate = PLCertificate{smin * smin, CertificateProvenance::analytic};
  }
  return obj;
}

ObjectiveInstance build(const LogisticParams& p) { return make_logistic(p.data, p.lambda); }

}  // namespace

ObjectiveInstance make_builtin(const BuiltinParams& params) {
  return std::visit([](const auto& p) { return build(p); }, params);
}

}  // namespace asyncbcd
