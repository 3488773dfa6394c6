#include "pnn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logistic_kernel.hpp"
#include "pnn/errors.hpp"

namespace pnn::oracle {

Vector soft_threshold(const Vector& x, double t) {
  if (!(t >= 0.0)) throw InputError("soft_threshold: t must be nonnegative");
  return x.unaryExpr([t](double v) {
    const double m = std::abs(v) - t;
    return m > 0.0 ? std::copysign(m, v) : 0.0;
  });
}

OracleResult ista_solve(const SparseDataset& ds, double lambda, double step, double tol,
                        std::size_t max_iters) {
  if (ds.empty()) throw InputError("ista_solve: empty dataset");
  if (!(lambda >= 0.0)) throw InputError("ista_solve: lambda must be nonnegative");
  if (!(step > 0.0) || !(tol > 0.0)) throw InputError("ista_solve: step and tol must be positive");

  detail::LogisticKernel kernel(ds);
  ModelParams x = ModelParams::zeros(ds.n_features());
  Vector z;
  kernel.matvec(x.w, x.b, z);
  LossGrad lg;
  kernel.gradient(z, lg);
  double t = step;

  OracleResult out;
  ModelParams next;
  Vector dw, dz;
  std::size_t k = 0;
  for (; k < max_iters; ++k) {
    // Probe a larger step first so t can recover after a local backtrack.
    t = std::min(step, 2.0 * t);
    // Backtrack until the quadratic model at x majorizes the loss at x⁺.
    for (;;) {
      next.w = soft_threshold(x.w - t * lg.grad_w, t * lambda);
      next.b = x.b - t * lg.grad_b;
      dw = next.w - x.w;
      const double db = next.b - x.b;
      kernel.matvec(dw, db, dz);
      // Compare changes rather than absolute losses; see loss_change.
      const double change = kernel.loss_change(dz, 1.0);
      if (std::isnan(change))
        throw NumericalError("ista_solve: non-finite loss at iteration " + std::to_string(k));
      const double model = lg.grad_w.dot(dw) + lg.grad_b * db + (dw.squaredNorm() + db * db) / (2.0 * t);
      if (change <= model) break;
      t *= 0.5;
      if (t < 1e-300) throw NumericalError("ista_solve: step underflow");
    }

    const double w_move = dw.size() ? dw.lpNorm<Eigen::Infinity>() : 0.0;
    const double gmap = std::max(w_move, std::abs(next.b - x.b)) / t;
    std::swap(x, next);
    kernel.matvec(x.w, x.b, z);
    if (!z.allFinite())
      throw NumericalError("ista_solve: non-finite loss at iteration " + std::to_string(k));
    kernel.gradient(z, lg);
    out.residual = gmap;
    if (gmap <= tol) {
      out.converged = true;
      ++k;
      break;
    }
  }

  out.iterations = k;
  out.objective = kernel.cached_loss() + lambda * x.w.lpNorm<1>();
  out.params = std::move(x);
  return out;
}

double optimal_bias(const SparseDataset& ds) {
  const double p = ds.positive_fraction();
  if (ds.empty() || p <= 0.0 || p >= 1.0)
    throw InputError("optimal_bias: dataset must contain both classes");
  return std::log(p / (1.0 - p));
}

double lambda_max(const SparseDataset& ds) {
  ModelParams origin = ModelParams::zeros(ds.n_features());
  origin.b = optimal_bias(ds);
  const LossGrad lg = loss_and_grad(ds, origin, 0.0);
  return lg.grad_w.size() ? lg.grad_w.lpNorm<Eigen::Infinity>() : 0.0;
}

Vector finite_diff_grad(const std::function<double(const Vector&)>& f, const Vector& x,
                        double h) {
  if (!(h >= 1e-8 && h <= 1e-4)) throw InputError("finite_diff_grad: h must be in [1e-8, 1e-4]");
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = f(probe);
    probe[j] = x[j] - h;
    const double down = f(probe);
    probe[j] = x[j];
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

LossGrad finite_diff_grad(const SparseDataset& ds, const ModelParams& params, double h) {
  check_dims(ds, params);
  const auto d = static_cast<Eigen::Index>(ds.n_features());
  // Stack (w, b) so the generic routine covers the bias too.
  Vector x(d + 1);
  x << params.w, params.b;
  auto f = [&ds, d](const Vector& v) {
    return loss(ds, ModelParams{v.head(d), v[d]});
  };
  const Vector g = finite_diff_grad(f, x, h);

  LossGrad out;
  out.loss = f(x);
  out.objective = out.loss;
  out.grad_w = g.head(d);
  out.grad_b = g[d];
  return out;
}

}  // namespace pnn::oracle
