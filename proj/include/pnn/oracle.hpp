#pragma once

#include <cstddef>
#include <functional>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"

namespace pnn::oracle {

// Reference machinery used to validate the projection solver. Nothing here
// calls into projection_solver.

/// sign(x_i) * max(|x_i| - t, 0), the proximal map of t||.||₁.
Vector soft_threshold(const Vector& x, double t);

struct OracleResult {
  ModelParams params;
  double objective = 0.0;
  std::size_t iterations = 0;
  // ||G_t||∞ over (w, b) at exit, G_t the proximal-gradient mapping.
  double residual = 0.0;
  bool converged = false;
};

/// Proximal gradient (ISTA) from zeros:
///   w <- soft_threshold(w - t ∇_w L, tλ),  b <- b - t ∇_b L
/// with Beck-Teboulle backtracking on t starting from `step`, until the
/// gradient mapping ||(x - x⁺)/t||∞ <= tol.
///
/// Throws InputError for bad arguments and NumericalError on a non-finite
/// objective.
OracleResult ista_solve(const SparseDataset& ds, double lambda, double step, double tol,
                        std::size_t max_iters);

/// Optimal bias with w = 0: log(p / (1 - p)), p the positive fraction.
/// Throws InputError unless both classes are present.
double optimal_bias(const SparseDataset& ds);

/// Smallest λ at which w = 0 (with the optimal bias) is a minimizer:
/// ||∇_w L(0, b*)||∞. Throws InputError for a single-class dataset.
double lambda_max(const SparseDataset& ds);

/// Central differences of the mean log loss in every coordinate of (w, b).
/// `loss` and `objective` of the result hold the loss at `params`.
/// Throws InputError unless h is in [1e-8, 1e-4].
LossGrad finite_diff_grad(const SparseDataset& ds, const ModelParams& params, double h);

/// Central differences of an arbitrary scalar function.
Vector finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& x,
                        double h);

}  // namespace pnn::oracle
