#pragma once

// Allocation-free evaluation of the mean log loss and its gradient for the
// inner loops of the solvers. Buffers are sized once per dataset.

#include <cmath>

#include <Eigen/Core>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"

namespace pnn::detail {

class LogisticKernel {
 public:
  explicit LogisticKernel(const SparseDataset& ds)
      : ds_(ds),
        n_(static_cast<Eigen::Index>(ds.n_samples())),
        y_(n_),
        sign_(n_),
        resid_(n_),
        e_(n_),
        delta_(n_),
        sig_s_(n_) {
    const double cells = static_cast<double>(ds.n_samples()) * static_cast<double>(ds.n_features());
    if (cells > 0 && cells <= kMaxDenseCells &&
        static_cast<double>(ds.nnz()) >= kDenseFraction * cells) {
      dense_.setZero(n_, static_cast<Eigen::Index>(ds.n_features()));
      for (Eigen::Index i = 0; i < n_; ++i) {
        const auto row = ds.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < row.cols.size(); ++k) dense_(i, row.cols[k]) = row.values[k];
      }
      use_dense_ = true;
    }
    const auto labels = ds.labels();
    for (Eigen::Index i = 0; i < n_; ++i) {
      y_[i] = labels[static_cast<std::size_t>(i)];
      sign_[i] = 1.0 - 2.0 * y_[i];
    }
  }

  /// out_i = x_iᵀ v + shift
  void matvec(const Vector& v, double shift, Vector& out) const {
    if (use_dense_) {
      out.noalias() = dense_ * v;
      out.array() += shift;
      return;
    }
    out.resize(n_);
    const double* pv = v.data();
    for (Eigen::Index i = 0; i < n_; ++i)
      out[i] = row_dot_unchecked(ds_.row(static_cast<std::size_t>(i)), pv) + shift;
  }

  /// Mean of softplus(s_i), s_i = -z_i for y_i = 1 and z_i for y_i = 0.
  template <class Margins>
  double loss(const Margins& z) const {
    const auto s = z.array() * sign_;
    return (s.max(0.0) + (-s.abs()).exp().log1p()).sum() / static_cast<double>(n_);
  }

  /// Gradient of the mean loss at margins z into out.grad_w / out.grad_b.
  /// Leaves out.loss and out.objective alone. Remembers z for cached_loss
  /// and loss_change.
  void gradient(const Vector& z, LossGrad& out) {
    z_last_ = z;
    e_ = (-z.array().abs()).exp();
    // σ of the signed margin from e = exp(-|z|); the residual σ(z) - y is
    // sign * σ(s).
    sig_s_ = (z.array() * sign_ >= 0.0).select(1.0, e_) / (1.0 + e_);
    resid_ = sign_ * sig_s_;
    if (use_dense_) {
      out.grad_w.noalias() = dense_.transpose() * resid_.matrix();
    } else {
      out.grad_w.setZero(static_cast<Eigen::Index>(ds_.n_features()));
      double* gw = out.grad_w.data();
      for (Eigen::Index i = 0; i < n_; ++i) {
        const double r = resid_[i];
        const auto row = ds_.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < row.cols.size(); ++k) gw[row.cols[k]] += r * row.values[k];
      }
    }
    const double inv_n = 1.0 / static_cast<double>(n_);
    out.grad_w *= inv_n;
    out.grad_b = resid_.sum() * inv_n;
  }

  /// Mean loss at the margins of the last gradient() call.
  double cached_loss() const {
    // softplus(s) = max(s, 0) + log1p(exp(-|s|)), and |s| = |z|.
    return ((z_last_.array() * sign_).max(0.0) + e_.log1p()).sum() / static_cast<double>(n_);
  }

  /// gradient() plus loss and objective.
  void loss_grad(const Vector& z, const Vector& w, double lambda, LossGrad& out) {
    gradient(z, out);
    out.loss = cached_loss();
    out.objective = out.loss + lambda * w.lpNorm<1>();
  }

  /// loss(z + t*dz) - loss(z) for the z of the last gradient() call, accurate
  /// relative to the change itself rather than to the loss. Near an optimum
  /// the change falls below the rounding error of the loss, so comparing two
  /// loss values would be noise.
  double loss_change(const Vector& dz, double t) {
    delta_ = (t * sign_) * dz.array();
    const double inv_n = 1.0 / static_cast<double>(n_);
    const double max_delta = n_ ? delta_.abs().maxCoeff() : 0.0;
    // softplus(s + δ) - softplus(s) = log1p(σ(s) expm1(δ)).
    if (max_delta < kSeriesBound) {
      // Six-term series for both functions: truncation stays below 1e-19
      // relative on this range, and unlike libm it vectorizes.
      const auto& d = delta_;
      const auto em =
          d * (1.0 + d / 2.0 * (1.0 + d / 3.0 * (1.0 + d / 4.0 * (1.0 + d / 5.0 * (1.0 + d / 6.0)))));
      const Eigen::ArrayXd x = sig_s_ * em;
      return (x * (1.0 - x * (1.0 / 2 - x * (1.0 / 3 - x * (1.0 / 4 - x * (1.0 / 5 - x / 6))))))
                 .sum() *
             inv_n;
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n_; ++i) {
      const double d = delta_[i];
      if (std::abs(d) < 0.5) {
        acc += std::log1p(sig_s_[i] * std::expm1(d));
      } else {
        // The product form cancels once σ(s) expm1(δ) nears -1.
        const double s = sign_[i] * z_last_[i];
        acc += softplus(s + d) - softplus(s);
      }
    }
    return acc * inv_n;
  }

 private:
  // Mostly dense data is mirrored into a row-major matrix for vectorized
  // products, within a memory cap of 8 bytes per cell.
  static constexpr double kDenseFraction = 0.5;
  static constexpr double kMaxDenseCells = 32.0 * 1024 * 1024;
  static constexpr double kSeriesBound = 1e-3;

  const SparseDataset& ds_;
  Eigen::Index n_;
  Eigen::ArrayXd y_;
  Eigen::ArrayXd sign_;
  Eigen::ArrayXd resid_;
  Eigen::ArrayXd e_;
  Eigen::ArrayXd delta_;
  Eigen::ArrayXd sig_s_;  // σ(signed margin) at z_last_
  Vector z_last_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> dense_;
  bool use_dense_ = false;
};

}  // namespace pnn::detail
