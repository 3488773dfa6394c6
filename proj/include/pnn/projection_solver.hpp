#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"

namespace pnn {

// Projection neurodynamic solver for min_w,b L(w,b) + λ||w||₁.
//
// The network state (w, b) follows
//
//   dw/dt = -∇_w L + P_Ω(∇_w L - w)
//   db/dt = -∇_b L
//
// with P_Ω the clamp onto the box Ω = [-λ, λ]^d. Equilibria are exactly the
// KKT points of the regularized problem. The flow is integrated with forward
// Euler, (w, b) += η (dw, db), optionally halving η when the objective would
// increase.

enum class InitMode { zeros, ones, random };

InitMode parse_init_mode(std::string_view s);
std::string_view to_string(InitMode m) noexcept;

struct SolverConfig {
  // Euler step η. Empty means default_step(dataset).
  std::optional<double> alpha_step;
  double tol = 1e-6;
  std::size_t max_iters = 100000;
  InitMode init = InitMode::zeros;
  std::uint64_t seed = 0;
  bool line_search = true;
  bool record_trace = false;
  std::size_t trace_stride = 1;
  // Store (w, b) with each trace point; off leaves TracePoint::params empty.
  bool trace_params = true;

  /// Throws InputError for a nonpositive step or tolerance or a zero stride.
  void validate() const;
};

enum class Termination { converged, max_iters };
std::string_view to_string(Termination t) noexcept;

struct TracePoint {
  std::size_t iter = 0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  ModelParams params;  // empty unless SolverConfig::trace_params
};

struct SolveResult {
  ModelParams params;  // raw final state
  // params.w with entries |w_j| <= 10·tol set to exactly zero. Reporting only.
  Vector sparse_w;
  std::size_t iterations = 0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  Termination terminated = Termination::max_iters;
  double step = 0.0;  // η actually used
  std::vector<TracePoint> trace;
};

/// Elementwise clamp of v onto [-λ, λ].
Vector project_box(const Vector& v, double lambda);

/// Right-hand side of the dynamics (without the time constant).
struct Dynamics {
  Vector dw;
  double db = 0.0;

  double inf_norm() const noexcept;
};

Dynamics dynamics_rhs(const SparseDataset& ds, const ModelParams& params, double lambda);
Dynamics dynamics_rhs(const LossGrad& lg, const ModelParams& params, double lambda);

/// max(||∇_w L + P_Ω(w - ∇_w L)||∞, |∇_b L|). Zero exactly at KKT points.
double kkt_residual(const SparseDataset& ds, const ModelParams& params, double lambda);
double kkt_residual(const LossGrad& lg, const ModelParams& params, double lambda);

/// η = 1 / Lip, Lip = (max_i ||x_i||²) / (4n) + 1.
double default_step(const SparseDataset& ds);

/// Starting state: all zeros, all ones, or i.i.d. uniform(-1, 1) from `seed`.
/// Applies to w and b alike.
ModelParams initial_params(std::size_t n_features, InitMode mode, std::uint64_t seed);

/// Integrates from config.init until the residual drops to config.tol or
/// config.max_iters steps have been taken.
///
/// Throws InputError for an empty dataset, negative λ or invalid config, and
/// NumericalError if the objective becomes non-finite.
SolveResult solve(const SparseDataset& ds, double lambda, const SolverConfig& config);

/// Same, starting from `start` (warm start) instead of config.init.
SolveResult solve(const SparseDataset& ds, double lambda, const SolverConfig& config,
                  const ModelParams& start);

}  // namespace pnn
