#pragma once

#include "asyncbcd/dataset.hpp"
#include "asyncbcd/objective.hpp"

namespace asyncbcd {

/// log(1 + exp(a)) without overflow.
double softplus(double a);
/// 1 / (1 + exp(-a)) without overflow.
double sigmoid(double a);

struct LogisticOptimum {
  Vector x;
  double value = 0.0;
  double grad_norm = 0.0;
  /// |grad E|^2 / (2 mu): how far value can sit above the true minimum.
  double residual = 0.0;
  int iterations = 0;
};

/// E(x) = (1/N) sum softplus(z_k.x) - y_k z_k.x + (lambda / 2N) |x|^2.
/// Attaches L = (|Z|_op^2 / 4 + lambda) / N. When lambda > 0 also attaches mu = lambda / N and,
/// if estimate_optimum is set, f* from a damped Newton solve together with its residual.
/// Throws std::invalid_argument for an empty dataset or negative lambda.
ObjectiveInstance make_logistic(const Dataset& d, double lambda, bool estimate_optimum = true);

/// Damped Newton with backtracking until |grad E| <= tolerance. Requires lambda > 0.
LogisticOptimum solve_logistic(const ObjectiveInstance& obj, double tolerance = 1e-10, int max_iterations = 100);

/// Largest eigenvalue of Z^T Z by power iteration.
double squared_operator_norm(const Dataset& d, int iterations = 50, double tolerance = 1e-8);

}  // namespace asyncbcd
