#include "pnn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pnn/errors.hpp"

namespace pnn {

double accuracy(std::span<const double> probs, std::span<const std::uint8_t> labels,
                double threshold) {
  if (probs.empty()) throw InputError("accuracy: empty input");
  if (probs.size() != labels.size()) throw DimensionError("accuracy: length mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    hits += static_cast<std::uint8_t>(probs[i] >= threshold) == labels[i];
  return static_cast<double>(hits) / static_cast<double>(probs.size());
}

std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw DimensionError("roc_curve: length mismatch");
  const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const auto n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw InputError("roc_curve: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  std::vector<RocPoint> roc{{0.0, 0.0}};
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double s = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == s; ++k) (labels[order[k]] ? tp : fp)++;
    roc.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                   static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  if (roc.back() != RocPoint{1.0, 1.0}) roc.push_back({1.0, 1.0});
  return roc;
}

double auroc(std::span<const RocPoint> roc) {
  double area = 0.0;
  for (std::size_t k = 1; k < roc.size(); ++k)
    area += (roc[k].fpr - roc[k - 1].fpr) * (roc[k].tpr + roc[k - 1].tpr) / 2.0;
  return area;
}

SparsityStats sparsity_stats(const Vector& w, double eps) {
  if (!(eps >= 0.0)) throw InputError("sparsity_stats: eps must be nonnegative");
  SparsityStats s;
  for (double v : w) {
    s.l1_norm += std::abs(v);
    s.nnz += std::abs(v) > eps;
  }
  return s;
}

EvalReport evaluate(const SparseDataset& ds, const ModelParams& params, double threshold,
                    double eps_zero) {
  const Vector probs = predict_proba(ds, params);
  const std::span<const double> p(probs.data(), static_cast<std::size_t>(probs.size()));
  EvalReport r;
  r.threshold = threshold;
  r.accuracy = accuracy(p, ds.labels(), threshold);
  r.roc_points = roc_curve(p, ds.labels());
  r.auroc = auroc(r.roc_points);
  const auto s = sparsity_stats(params.w, eps_zero);
  r.l1_norm = s.l1_norm;
  r.nnz = s.nnz;
  return r;
}

}  // namespace pnn
