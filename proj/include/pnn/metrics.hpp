#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"

namespace pnn {

/// (false positive rate, true positive rate)
struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct EvalReport {
  double accuracy = 0.0;  // fraction in [0, 1]
  std::vector<RocPoint> roc_points;
  double auroc = 0.0;
  double l1_norm = 0.0;
  std::size_t nnz = 0;
  double threshold = 0.5;
};

/// Fraction of samples where (prob >= threshold) equals the label. Ties at
/// the threshold predict class 1. Throws InputError on empty or
/// mismatched inputs.
double accuracy(std::span<const double> probs, std::span<const std::uint8_t> labels,
                double threshold = 0.5);

/// ROC curve from a descending sweep over the scores. Tied scores form a
/// single step. Starts at (0,0) and ends at (1,1). Throws InputError unless
/// both classes are present.
std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const std::uint8_t> labels);

/// Trapezoidal area under a ROC curve.
double auroc(std::span<const RocPoint> roc);

struct SparsityStats {
  double l1_norm = 0.0;
  std::size_t nnz = 0;
};

/// l1 norm of the raw weights and the count of entries with |w_j| > eps.
SparsityStats sparsity_stats(const Vector& w, double eps);

/// Scores `params` on `ds` with all of the above.
EvalReport evaluate(const SparseDataset& ds, const ModelParams& params, double threshold = 0.5,
                    double eps_zero = 0.0);

}  // namespace pnn
