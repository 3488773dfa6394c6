#include "pnn/projection_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "logistic_kernel.hpp"
#include "pnn/errors.hpp"

namespace pnn {

namespace {

constexpr int kMaxHalvings = 30;
// Margins are updated incrementally along the step direction and recomputed
// from scratch this often to keep rounding drift negligible.
constexpr std::size_t kRefreshEvery = 64;

}  // namespace

InitMode parse_init_mode(std::string_view s) {
  if (s == "zeros") return InitMode::zeros;
  if (s == "ones") return InitMode::ones;
  if (s == "random") return InitMode::random;
  throw InputError("unknown init '" + std::string(s) + "' (expected zeros, ones or random)");
}

std::string_view to_string(InitMode m) noexcept {
  switch (m) {
    case InitMode::zeros: return "zeros";
    case InitMode::ones: return "ones";
    case InitMode::random: return "random";
  }
  return "zeros";
}

std::string_view to_string(Termination t) noexcept {
  return t == Termination::converged ? "converged" : "max_iters";
}

void SolverConfig::validate() const {
  if (alpha_step && !(*alpha_step > 0.0 && std::isfinite(*alpha_step)))
    throw InputError("alpha_step must be positive");
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  if (trace_stride == 0) throw InputError("trace_stride must be at least 1");
}

Vector project_box(const Vector& v, double lambda) {
  return v.cwiseMax(-lambda).cwiseMin(lambda);
}

double Dynamics::inf_norm() const noexcept {
  const double w_part = dw.size() ? dw.lpNorm<Eigen::Infinity>() : 0.0;
  return std::max(w_part, std::abs(db));
}

Dynamics dynamics_rhs(const LossGrad& lg, const ModelParams& params, double lambda) {
  return {-lg.grad_w + project_box(lg.grad_w - params.w, lambda), -lg.grad_b};
}

Dynamics dynamics_rhs(const SparseDataset& ds, const ModelParams& params, double lambda) {
  return dynamics_rhs(loss_and_grad(ds, params, lambda), params, lambda);
}

double kkt_residual(const LossGrad& lg, const ModelParams& params, double lambda) {
  const Vector r = lg.grad_w + project_box(params.w - lg.grad_w, lambda);
  const double w_part = r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0;
  return std::max(w_part, std::abs(lg.grad_b));
}

double kkt_residual(const SparseDataset& ds, const ModelParams& params, double lambda) {
  return kkt_residual(loss_and_grad(ds, params, lambda), params, lambda);
}

double default_step(const SparseDataset& ds) {
  if (ds.empty()) throw InputError("default_step: empty dataset");
  double max_sq = 0.0;
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    double sq = 0.0;
    for (double v : ds.row(i).values) sq += v * v;
    max_sq = std::max(max_sq, sq);
  }
  const double lip = max_sq / (4.0 * static_cast<double>(ds.n_samples())) + 1.0;
  return 1.0 / lip;
}

ModelParams initial_params(std::size_t n_features, InitMode mode, std::uint64_t seed) {
  auto p = ModelParams::zeros(n_features);
  switch (mode) {
    case InitMode::zeros:
      break;
    case InitMode::ones:
      p.w.setOnes();
      p.b = 1.0;
      break;
    case InitMode::random: {
      std::mt19937_64 gen(seed);
      std::uniform_real_distribution<double> unif(-1.0, 1.0);
      for (auto& v : p.w) v = unif(gen);
      p.b = unif(gen);
      break;
    }
  }
  return p;
}

SolveResult solve(const SparseDataset& ds, double lambda, const SolverConfig& config) {
  return solve(ds, lambda, config, initial_params(ds.n_features(), config.init, config.seed));
}

SolveResult solve(const SparseDataset& ds, double lambda, const SolverConfig& config,
                  const ModelParams& start) {
  config.validate();
  if (ds.empty()) throw InputError("solve: empty dataset");
  if (!(lambda >= 0.0)) throw InputError("solve: lambda must be nonnegative");
  check_dims(ds, start);
  if (!start.all_finite()) throw InputError("solve: starting point is not finite");

  const double eta = config.alpha_step.value_or(default_step(ds));

  SolveResult result;
  result.step = eta;
  detail::LogisticKernel kernel(ds);
  ModelParams p = start;
  Vector z, dz;
  kernel.matvec(p.w, p.b, z);
  LossGrad lg;
  if (!z.allFinite()) throw NumericalError("solve: initial objective is not finite");
  kernel.gradient(z, lg);
  // The loss value is only reported, never used for decisions, so it is
  // evaluated on demand.
  const auto objective = [&] { return kernel.cached_loss() + lambda * p.w.lpNorm<1>(); };

  Dynamics rhs;
  int last_halvings = 0;
  std::size_t k = 0;
  for (;; ++k) {
    rhs.dw = -lg.grad_w + project_box(lg.grad_w - p.w, lambda);
    rhs.db = -lg.grad_b;
    const double res = rhs.inf_norm();
    const bool converged = res <= config.tol;
    const bool last = converged || k == config.max_iters;

    if (config.record_trace && (k % config.trace_stride == 0 || last))
      result.trace.push_back({k, objective(), res, config.trace_params ? p : ModelParams{}});

    if (last) {
      result.terminated = converged ? Termination::converged : Termination::max_iters;
      result.kkt_residual = res;
      break;
    }

    double t = eta;
    if (config.line_search) {
      // Margins move linearly along the direction, so each trial costs O(n).
      kernel.matvec(rhs.dw, rhs.db, dz);
      const auto accepted = [&](int h) {
        const double th = std::ldexp(eta, -h);
        // Where the sign is kept the change is exactly ±th·dw_j. Subtracting
        // rounded norms instead leaves an error of ulp(w_j) per entry, which
        // near the optimum exceeds the true decrease and stalls the search.
        const auto w = p.w.array();
        const auto step = th * rhs.dw.array();
        const auto moved = w + step;
        const double l1_change =
            (w * moved > 0.0).select(w.sign() * step, moved.abs() - w.abs()).sum();
        return kernel.loss_change(dz, th) + lambda * l1_change <= 0.0;
      };
      // The objective is convex along the ray, so the accepted steps form an
      // interval [0, T] and acceptance is monotone in h. Searching outward from
      // the previous count finds the same first accepted halving as scanning
      // h = 0, 1, ... in order.
      int h = std::min(last_halvings, kMaxHalvings - 1);
      if (accepted(h)) {
        while (h > 0 && accepted(h - 1)) --h;
      } else {
        do ++h;
        while (h < kMaxHalvings && !accepted(h));
      }
      last_halvings = h;
      t = std::ldexp(eta, -h);
    }

    p.w += t * rhs.dw;
    p.b += t * rhs.db;
    if (config.line_search && (k + 1) % kRefreshEvery != 0)
      z.noalias() += t * dz;
    else
      kernel.matvec(p.w, p.b, z);
    if (!z.allFinite() || !p.w.allFinite())
      throw NumericalError("solve: objective became non-finite at iteration " +
                           std::to_string(k + 1) + " (step " + std::to_string(t) +
                           " too large?)");
    kernel.gradient(z, lg);
  }

  result.iterations = k;
  result.objective = objective();
  result.params = std::move(p);
  const double zero_eps = 10.0 * config.tol;
  result.sparse_w = result.params.w.unaryExpr(
      [zero_eps](double v) { return std::abs(v) <= zero_eps ? 0.0 : v; });
  return result;
}

}  // namespace pnn
