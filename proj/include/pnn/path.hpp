#pragma once

#include <cstddef>
#include <vector>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"
#include "pnn/projection_solver.hpp"

namespace pnn {

/// n_points values log-spaced from lambda_max(ds) down to
/// min_ratio * lambda_max(ds), strictly descending.
/// Throws InputError for n_points < 2, min_ratio outside (0, 1) or a
/// single-class dataset.
std::vector<double> lambda_grid(const SparseDataset& ds, std::size_t n_points, double min_ratio);

/// Same grid for a known lambda_max.
std::vector<double> lambda_grid(double lambda_max, std::size_t n_points, double min_ratio);

struct PathRecord {
  double lambda = 0.0;
  ModelParams params;
  double objective = 0.0;
  double l1_norm = 0.0;
  std::size_t nnz = 0;
  double accuracy = 0.0;  // on the test set; NaN without one
  std::size_t iterations = 0;
  Termination terminated = Termination::max_iters;
};

struct PathResult {
  std::vector<double> lambdas;
  std::vector<PathRecord> records;  // one per lambda, same order
  double eps_zero = 0.0;            // nnz threshold used for the records
};

struct SweepOptions {
  // Start each solve from the previous solution. Ignored when parallel.
  bool warm_start = true;
  // Cold-start every λ concurrently.
  bool parallel = false;
  std::size_t workers = 1;
  // nnz threshold; negative means 10 * config.tol.
  double eps_zero = -1.0;
};

/// Solves along a strictly descending grid and records per-λ metrics.
/// `test` may be null. Solver failures are rethrown as NumericalError naming
/// the failing λ.
PathResult sweep(const SparseDataset& train, const SparseDataset* test,
                 const std::vector<double>& grid, const SolverConfig& config,
                 const SweepOptions& options = {});

}  // namespace pnn
