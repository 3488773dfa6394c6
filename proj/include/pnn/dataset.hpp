#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace pnn {

using Vector = Eigen::VectorXd;

/// Result of canonicalizing raw class labels to {0, 1}.
struct LabelMap {
  std::vector<std::uint8_t> labels;
  // Raw values that map to 0 and 1. For single-valued input both hold the
  // one value present.
  double raw_negative = 0.0;
  double raw_positive = 0.0;
  // Set when the input held only one distinct value (everything maps to 1).
  bool single_valued = false;
};

/// Maps the numerically smaller raw value to 0 and the larger to 1.
/// Throws InputError on three or more distinct values or on empty input.
LabelMap label_map(std::span<const double> raw_labels);

/// A row of a SparseDataset: parallel views of 0-based column indices and
/// values, indices strictly increasing.
struct RowView {
  std::span<const std::uint32_t> cols;
  std::span<const double> values;
};

/// Immutable row-compressed feature matrix X (n_samples x n_features) with
/// labels y in {0,1}. All invariants are checked at construction.
class SparseDataset {
 public:
  SparseDataset() = default;

  /// Validates and adopts CSR arrays. Throws InputError on any violated
  /// invariant (offsets, index order/range, label values).
  SparseDataset(std::size_t n_features, std::vector<std::size_t> row_offsets,
                std::vector<std::uint32_t> col_indices,
                std::vector<double> values, std::vector<std::uint8_t> labels);

  std::size_t n_samples() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return n_features_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::uint32_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }

  /// Unchecked row access; i < n_samples().
  RowView row(std::size_t i) const noexcept {
    const auto begin = row_offsets_[i];
    const auto len = row_offsets_[i + 1] - begin;
    return {std::span(col_indices_).subspan(begin, len),
            std::span(values_).subspan(begin, len)};
  }

  /// Fraction of samples labelled 1.
  double positive_fraction() const noexcept;

  /// Same rows with n_features raised to `d`. Throws DimensionError if `d`
  /// is smaller than the current width.
  SparseDataset widened(std::size_t d) const;

  /// Rows in `order` (a permutation or subset of row indices).
  SparseDataset select_rows(std::span<const std::size_t> order) const;

  /// Row-major dense copy, for tests and small brute-force checks.
  Eigen::MatrixXd to_dense() const;

  friend bool operator==(const SparseDataset&, const SparseDataset&) = default;

 private:
  std::size_t n_features_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::uint32_t> col_indices_;
  std::vector<double> values_;
  std::vector<std::uint8_t> labels_;
};

/// Parses LIBSVM text (`<label> <idx>:<val> ...`, 1-based strictly increasing
/// indices). n_features is max(hint, largest index seen).
///
/// Throws ParseError (with the 1-based line number) for malformed lines,
/// non-numeric tokens, non-increasing or zero indices, more than two distinct
/// labels, or an input with no samples.
///
/// When `labels_out` is given it receives the raw label values behind 0 and 1
/// and the single-valued flag (LabelMap::labels is left empty).
SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features_hint = {},
                           LabelMap* labels_out = nullptr);
SparseDataset parse_libsvm(std::string_view text,
                           std::optional<std::size_t> n_features_hint = {},
                           LabelMap* labels_out = nullptr);

/// Opens and parses a file; InputError if it cannot be read. Parse errors
/// name the file.
SparseDataset load_libsvm(const std::filesystem::path& path,
                          std::optional<std::size_t> n_features_hint = {},
                          LabelMap* labels_out = nullptr);

/// Writes LIBSVM text with labels 0/1 and shortest round-trip values.
/// parse_libsvm(to_libsvm(ds), ds.n_features()) == ds.
std::string to_libsvm(const SparseDataset& ds);

/// Σ values[k] * w[col[k]] over row i. Throws DimensionError when
/// w.size() != n_features or i is out of range.
double row_dot(const SparseDataset& ds, std::size_t i, const Vector& w);

/// Unchecked kernel used by the solvers.
inline double row_dot_unchecked(const RowView& row, const double* w) noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < row.cols.size(); ++k) acc += row.values[k] * w[row.cols[k]];
  return acc;
}

/// Shape of one of the eight benchmark datasets.
struct DatasetInfo {
  std::string_view name;
  std::size_t n_features;
  std::size_t n_train;
  std::size_t n_test;
};

/// The benchmark roster: splice, madelon, liver-disorders, ijcnn1, a1a, a9a,
/// leukemia, gisette.
std::span<const DatasetInfo> benchmark_roster() noexcept;

/// Roster entry by name, if present.
std::optional<DatasetInfo> find_benchmark(std::string_view name) noexcept;

}  // namespace pnn
