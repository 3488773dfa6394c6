#include "pnn/model.hpp"

#include <string>

#include "logistic_kernel.hpp"
#include "pnn/errors.hpp"

namespace pnn {

LambdaScale parse_lambda_scale(std::string_view s) {
  if (s == "mean") return LambdaScale::mean;
  if (s == "sum") return LambdaScale::sum;
  throw InputError("unknown lambda scale '" + std::string(s) + "' (expected mean or sum)");
}

std::string_view to_string(LambdaScale s) noexcept {
  return s == LambdaScale::mean ? "mean" : "sum";
}

double to_mean_lambda(double lambda, LambdaScale scale, std::size_t n_samples) {
  if (!(lambda >= 0.0)) throw InputError("lambda must be nonnegative");
  if (scale == LambdaScale::mean) return lambda;
  if (n_samples == 0) throw InputError("sum-scaled lambda needs a nonempty dataset");
  return lambda / static_cast<double>(n_samples);
}

void check_dims(const SparseDataset& ds, const ModelParams& params) {
  if (params.n_features() != ds.n_features())
    throw DimensionError("model has " + std::to_string(params.n_features()) +
                         " weights, dataset has " + std::to_string(ds.n_features()) +
                         " features");
}

Vector margins(const SparseDataset& ds, const ModelParams& params) {
  check_dims(ds, params);
  Vector z(static_cast<Eigen::Index>(ds.n_samples()));
  const double* w = params.w.data();
  for (std::size_t i = 0; i < ds.n_samples(); ++i)
    z[static_cast<Eigen::Index>(i)] = row_dot_unchecked(ds.row(i), w) + params.b;
  return z;
}

Vector predict_proba(const SparseDataset& ds, const ModelParams& params) {
  Vector p = margins(ds, params);
  for (auto& v : p) v = sigmoid(v);
  return p;
}

double loss_from_margins(const SparseDataset& ds, const Vector& z) {
  return detail::LogisticKernel(ds).loss(z);
}

LossGrad loss_and_grad_from_margins(const SparseDataset& ds, const Vector& z,
                                    const ModelParams& params, double lambda) {
  LossGrad out;
  detail::LogisticKernel(ds).loss_grad(z, params.w, lambda, out);
  return out;
}

LossGrad loss_and_grad(const SparseDataset& ds, const ModelParams& params, double lambda) {
  if (!(lambda >= 0.0)) throw InputError("lambda must be nonnegative");
  if (ds.empty()) throw InputError("loss_and_grad: empty dataset");
  return loss_and_grad_from_margins(ds, margins(ds, params), params, lambda);
}

double loss(const SparseDataset& ds, const ModelParams& params) {
  if (ds.empty()) throw InputError("loss: empty dataset");
  return loss_from_margins(ds, margins(ds, params));
}

double objective(const SparseDataset& ds, const ModelParams& params, double lambda) {
  if (!(lambda >= 0.0)) throw InputError("lambda must be nonnegative");
  return loss(ds, params) + lambda * params.w.lpNorm<1>();
}

}  // namespace pnn
