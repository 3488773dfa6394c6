#pragma once

// Seeded instance generators shared by the unit tests.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pnn/dataset.hpp"
#include "pnn/model.hpp"

namespace pnn::test {

using Rng = std::mt19937_64;

inline SparseDataset from_dense(const Eigen::MatrixXd& x, const std::vector<std::uint8_t>& y) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (x(i, j) != 0.0) {
        cols.push_back(static_cast<std::uint32_t>(j));
        vals.push_back(x(i, j));
      }
    }
    offsets.push_back(cols.size());
  }
  return SparseDataset(static_cast<std::size_t>(x.cols()), std::move(offsets), std::move(cols),
                       std::move(vals), y);
}

inline Eigen::MatrixXd to_matrix(const SparseDataset& ds) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ds.n_samples()),
                                            static_cast<Eigen::Index>(ds.n_features()));
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    const auto row = ds.row(i);
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      x(static_cast<Eigen::Index>(i), row.cols[k]) = row.values[k];
  }
  return x;
}

inline std::size_t uniform_int(Rng& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

// Gaussian features with roughly `density` nonzeros; labels drawn from a
// logistic model with a random sparse w, so classes overlap. Both classes are
// always present.
inline SparseDataset random_dataset(Rng& g, std::size_t n, std::size_t d, double density = 0.7) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = unif(g) < density ? normal(g) : 0.0;
  Eigen::VectorXd w_true(static_cast<Eigen::Index>(d));
  for (auto& v : w_true) v = unif(g) < 0.5 ? normal(g) : 0.0;
  std::vector<std::uint8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = x.row(static_cast<Eigen::Index>(i)).dot(w_true) + 0.3 * normal(g);
    y[i] = unif(g) < sigmoid(z) ? 1 : 0;
  }
  y[0] = 0;
  y[n > 1 ? 1 : 0] = 1;
  return from_dense(x, y);
}

inline ModelParams random_params(Rng& g, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  ModelParams p = ModelParams::zeros(d);
  for (auto& v : p.w) v = normal(g);
  p.b = normal(g);
  return p;
}

inline std::filesystem::path source_dir() { return PNN_SOURCE_DIR; }

inline std::filesystem::path data_file(const std::string& name) {
  return source_dir() / "data" / "reconstructed" / name;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("pnn_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace pnn::test
