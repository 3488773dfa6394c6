#include "pnn/path.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pnn/errors.hpp"
#include "pnn/format.hpp"
#include "pnn/metrics.hpp"
#include "pnn/oracle.hpp"
#include "pnn/parallel.hpp"

namespace pnn {

std::vector<double> lambda_grid(double lambda_max, std::size_t n_points, double min_ratio) {
  if (n_points < 2) throw InputError("lambda_grid: need at least 2 points");
  if (!(min_ratio > 0.0 && min_ratio < 1.0)) throw InputError("lambda_grid: min_ratio must be in (0, 1)");
  if (!(lambda_max > 0.0)) throw InputError("lambda_grid: lambda_max must be positive");
  std::vector<double> grid(n_points);
  const double denom = static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k)
    grid[k] = lambda_max * std::pow(min_ratio, static_cast<double>(k) / denom);
  grid.front() = lambda_max;
  return grid;
}

std::vector<double> lambda_grid(const SparseDataset& ds, std::size_t n_points, double min_ratio) {
  return lambda_grid(oracle::lambda_max(ds), n_points, min_ratio);
}

namespace {

PathRecord make_record(double lambda, SolveResult&& res, const SparseDataset* test,
                       double eps_zero) {
  PathRecord r;
  r.lambda = lambda;
  r.objective = res.objective;
  r.iterations = res.iterations;
  r.terminated = res.terminated;
  const auto s = sparsity_stats(res.params.w, eps_zero);
  r.l1_norm = s.l1_norm;
  r.nnz = s.nnz;
  r.accuracy = std::numeric_limits<double>::quiet_NaN();
  if (test) {
    const Vector probs = predict_proba(*test, res.params);
    r.accuracy = accuracy({probs.data(), static_cast<std::size_t>(probs.size())}, test->labels());
  }
  r.params = std::move(res.params);
  return r;
}

[[noreturn]] void rethrow_annotated(double lambda, const NumericalError& e) {
  throw NumericalError("lambda=" + format_double(lambda) + ": " + e.what());
}

}  // namespace

PathResult sweep(const SparseDataset& train, const SparseDataset* test,
                 const std::vector<double>& grid, const SolverConfig& config,
                 const SweepOptions& options) {
  if (grid.empty()) throw InputError("sweep: empty grid");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0)) throw InputError("sweep: lambdas must be positive");
    if (k > 0 && !(grid[k] < grid[k - 1])) throw InputError("sweep: grid must be strictly descending");
  }
  if (test && test->n_features() != train.n_features())
    throw DimensionError("sweep: train and test feature counts differ");

  PathResult out;
  out.lambdas = grid;
  out.eps_zero = options.eps_zero >= 0.0 ? options.eps_zero : 10.0 * config.tol;
  out.records.resize(grid.size());

  if (options.parallel) {
    parallel_for(grid.size(), options.workers, [&](std::size_t k) {
      try {
        out.records[k] = make_record(grid[k], solve(train, grid[k], config), test, out.eps_zero);
      } catch (const NumericalError& e) {
        rethrow_annotated(grid[k], e);
      }
    });
    return out;
  }

  ModelParams start = initial_params(train.n_features(), config.init, config.seed);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    try {
      auto res = options.warm_start ? solve(train, grid[k], config, start)
                                    : solve(train, grid[k], config);
      start = res.params;
      out.records[k] = make_record(grid[k], std::move(res), test, out.eps_zero);
    } catch (const NumericalError& e) {
      rethrow_annotated(grid[k], e);
    }
  }
  return out;
}

}  // namespace pnn
