#pragma once

#include <string>
#include <variant>

#include "asyncbcd/dataset.hpp"
#include "asyncbcd/objective.hpp"

namespace asyncbcd {

/// f(x) = 0.5 * sum eigenvalues[k] * x_k^2.
struct DiagonalQuadraticParams {
  Vector eigenvalues;
};

/// f(x) = sum x_k^2 + 3 sin^2(x_k), which is nonconvex and PL with mu = 1/32.
struct PlSineParams {
  std::size_t dimension = 1;
};

/// f(x) = 0.5 * |Ax - b|^2 with A stored row-major.
struct LeastSquaresParams {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vector matrix;
  Vector rhs;
  bool certify = true;
};

struct LogisticParams {
  Dataset data;
  double lambda = 0.0;
};

using BuiltinParams = std::variant<DiagonalQuadraticParams, PlSineParams, LeastSquaresParams, LogisticParams>;

/// Throws std::invalid_argument for inconsistent parameters, and for least squares when
/// certify is set but b lies outside range(A).
ObjectiveInstance make_builtin(const BuiltinParams& params);

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kRankTolerance = 1e-12;

}  // namespace asyncbcd
