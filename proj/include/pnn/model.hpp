#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "pnn/dataset.hpp"

namespace pnn {

/// Weights w (one per feature) and an unpenalized bias b.
struct ModelParams {
  Vector w;
  double b = 0.0;

  static ModelParams zeros(std::size_t n_features) {
    return {Vector::Zero(static_cast<Eigen::Index>(n_features)), 0.0};
  }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(w.size()); }
  bool all_finite() const noexcept { return w.allFinite() && std::isfinite(b); }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.b == b.b && a.w.size() == b.w.size() && a.w == b.w;
  }
};

/// Mean logistic loss with gradients of the smooth part only; the ℓ1 term
/// enters through `objective` and never through the gradient.
struct LossGrad {
  double loss = 0.0;
  Vector grad_w;
  double grad_b = 0.0;
  double objective = 0.0;  // loss + lambda * ||w||_1
};

/// How a user-facing λ relates to the mean loss used internally.
///
/// `mean`: objective is (1/n) Σ loss_i + λ||w||₁ (library convention).
/// `sum`:  objective is Σ loss_i + λ||w||₁, equivalent to the mean form with
///         λ / n. Reproducing published λ values such as λ = 10 on splice
///         requires this scale.
enum class LambdaScale { mean, sum };

LambdaScale parse_lambda_scale(std::string_view s);
std::string_view to_string(LambdaScale s) noexcept;

/// λ expressed on the internal (mean-loss) scale.
double to_mean_lambda(double lambda, LambdaScale scale, std::size_t n_samples);

/// 1 / (1 + exp(-z)) without overflow for any finite z.
inline double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) noexcept {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

/// Per-sample log loss from the margin z = wᵀx + b.
inline double sample_loss(double z, std::uint8_t y) noexcept {
  return softplus(y ? -z : z);
}

/// z_i = wᵀx_i + b for every sample. Throws DimensionError on mismatch.
Vector margins(const SparseDataset& ds, const ModelParams& params);

/// ŷ_i = sigmoid(wᵀx_i + b). Throws DimensionError on mismatch.
Vector predict_proba(const SparseDataset& ds, const ModelParams& params);

/// Mean log loss given precomputed margins.
double loss_from_margins(const SparseDataset& ds, const Vector& z);

/// Loss, gradient and objective given precomputed margins.
LossGrad loss_and_grad_from_margins(const SparseDataset& ds, const Vector& z,
                                    const ModelParams& params, double lambda);

/// Mean log loss and its exact gradient at `params`; objective adds λ||w||₁.
/// Throws DimensionError on mismatch and InputError for negative λ.
LossGrad loss_and_grad(const SparseDataset& ds, const ModelParams& params, double lambda);

double loss(const SparseDataset& ds, const ModelParams& params);
double objective(const SparseDataset& ds, const ModelParams& params, double lambda);

/// Throws DimensionError if params do not match the dataset width.
void check_dims(const SparseDataset& ds, const ModelParams& params);

}  // namespace pnn
