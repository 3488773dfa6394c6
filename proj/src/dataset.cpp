#include "pnn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "pnn/errors.hpp"
#include "pnn/format.hpp"

namespace pnn {

namespace {

constexpr std::array<DatasetInfo, 8> kRoster{{
    {"splice", 60, 1000, 2175},
    {"madelon", 500, 2000, 600},
    {"liver-disorders", 5, 145, 200},
    {"ijcnn1", 22, 49990, 91701},
    {"a1a", 123, 1605, 30956},
    {"a9a", 123, 32561, 16281},
    {"leukemia", 7129, 38, 34},
    {"gisette", 5000, 6000, 1000},
}};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  auto tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_index(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

LabelMap label_map(std::span<const double> raw_labels) {
  if (raw_labels.empty()) throw InputError("label_map: no labels");
  double lo = raw_labels.front();
  double hi = lo;
  for (double v : raw_labels) {
    if (v == lo || v == hi) continue;
    if (lo != hi) throw InputError("label_map: more than two distinct label values");
    if (v < lo) lo = v; else hi = v;
  }
  LabelMap out;
  out.raw_negative = lo;
  out.raw_positive = hi;
  out.single_valued = lo == hi;
  out.labels.reserve(raw_labels.size());
  for (double v : raw_labels) out.labels.push_back(v == hi ? 1 : 0);
  return out;
}

SparseDataset::SparseDataset(std::size_t n_features, std::vector<std::size_t> row_offsets,
                             std::vector<std::uint32_t> col_indices,
                             std::vector<double> values, std::vector<std::uint8_t> labels)
    : n_features_(n_features),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)),
      labels_(std::move(labels)) {
  if (row_offsets_.size() != labels_.size() + 1)
    throw InputError("SparseDataset: row_offsets must have n_samples + 1 entries");
  if (row_offsets_.front() != 0 || row_offsets_.back() != values_.size() ||
      col_indices_.size() != values_.size())
    throw InputError("SparseDataset: offsets do not match value storage");
  for (std::size_t i = 0; i + 1 < row_offsets_.size(); ++i) {
    if (row_offsets_[i + 1] < row_offsets_[i])
      throw InputError("SparseDataset: row_offsets must be nondecreasing");
    for (auto k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (col_indices_[k] >= n_features_)
        throw InputError("SparseDataset: column index out of range in row " + std::to_string(i));
      if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1])
        throw InputError("SparseDataset: column indices must increase within row " +
                         std::to_string(i));
    }
  }
  for (auto y : labels_)
    if (y > 1) throw InputError("SparseDataset: labels must be 0 or 1");
}

double SparseDataset::positive_fraction() const noexcept {
  if (labels_.empty()) return 0.0;
  std::size_t pos = 0;
  for (auto y : labels_) pos += y;
  return static_cast<double>(pos) / static_cast<double>(labels_.size());
}

SparseDataset SparseDataset::widened(std::size_t d) const {
  if (d < n_features_)
    throw DimensionError("cannot narrow dataset from " + std::to_string(n_features_) +
                         " to " + std::to_string(d) + " features");
  SparseDataset out = *this;
  out.n_features_ = d;
  return out;
}

SparseDataset SparseDataset::select_rows(std::span<const std::size_t> order) const {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<std::uint8_t> labels;
  offsets.reserve(order.size() + 1);
  labels.reserve(order.size());
  for (auto i : order) {
    if (i >= n_samples()) throw DimensionError("select_rows: row index out of range");
    auto r = row(i);
    cols.insert(cols.end(), r.cols.begin(), r.cols.end());
    vals.insert(vals.end(), r.values.begin(), r.values.end());
    offsets.push_back(vals.size());
    labels.push_back(labels_[i]);
  }
  return SparseDataset(n_features_, std::move(offsets), std::move(cols), std::move(vals),
                       std::move(labels));
}

Eigen::MatrixXd SparseDataset::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_samples()),
                                            static_cast<Eigen::Index>(n_features_));
  for (std::size_t i = 0; i < n_samples(); ++i) {
    auto r = row(i);
    for (std::size_t k = 0; k < r.cols.size(); ++k)
      m(static_cast<Eigen::Index>(i), r.cols[k]) = r.values[k];
  }
  return m;
}

SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features_hint,
                           LabelMap* labels_out) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> vals;
  std::vector<double> raw_labels;
  std::uint64_t max_index = 0;
  // Distinct raw label values seen so far (at most two).
  std::vector<double> seen;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = line;
    auto label_tok = next_token(rest);
    if (label_tok.empty()) continue;  // blank line

    auto label = to_double(label_tok);
    if (!label) throw ParseError(lineno, "non-numeric label '" + std::string(label_tok) + "'");
    if (std::find(seen.begin(), seen.end(), *label) == seen.end()) {
      if (seen.size() == 2) throw ParseError(lineno, "more than two distinct labels");
      seen.push_back(*label);
    }

    std::uint64_t prev = 0;
    for (auto tok = next_token(rest); !tok.empty(); tok = next_token(rest)) {
      auto colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw ParseError(lineno, "expected <index>:<value>, got '" + std::string(tok) + "'");
      auto idx = to_index(tok.substr(0, colon));
      if (!idx) throw ParseError(lineno, "non-numeric feature index in '" + std::string(tok) + "'");
      if (*idx == 0) throw ParseError(lineno, "feature indices are 1-based");
      if (*idx > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(lineno, "feature index too large");
      if (*idx <= prev)
        throw ParseError(lineno, "feature indices must be strictly increasing");
      auto val = to_double(tok.substr(colon + 1));
      if (!val) throw ParseError(lineno, "non-numeric feature value in '" + std::string(tok) + "'");
      prev = *idx;
      max_index = std::max(max_index, *idx);
      cols.push_back(static_cast<std::uint32_t>(*idx - 1));
      vals.push_back(*val);
    }
    offsets.push_back(vals.size());
    raw_labels.push_back(*label);
  }
  if (raw_labels.empty()) throw ParseError(0, "empty dataset");

  auto mapped = label_map(raw_labels);
  auto d = std::max<std::size_t>(n_features_hint.value_or(0), max_index);
  SparseDataset ds(d, std::move(offsets), std::move(cols), std::move(vals),
                   std::move(mapped.labels));
  if (labels_out) {
    mapped.labels.clear();
    *labels_out = std::move(mapped);
  }
  return ds;
}

SparseDataset parse_libsvm(std::string_view text, std::optional<std::size_t> n_features_hint,
                           LabelMap* labels_out) {
  std::istringstream in{std::string(text)};
  return parse_libsvm(in, n_features_hint, labels_out);
}

SparseDataset load_libsvm(const std::filesystem::path& path,
                          std::optional<std::size_t> n_features_hint, LabelMap* labels_out) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return parse_libsvm(in, n_features_hint, labels_out);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.detail());
  }
}

std::string to_libsvm(const SparseDataset& ds) {
  std::string out;
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    out += ds.labels()[i] ? '1' : '0';
    auto r = ds.row(i);
    for (std::size_t k = 0; k < r.cols.size(); ++k) {
      out += ' ';
      out += std::to_string(r.cols[k] + 1);
      out += ':';
      out += format_double(r.values[k]);
    }
    out += '\n';
  }
  return out;
}

double row_dot(const SparseDataset& ds, std::size_t i, const Vector& w) {
  if (i >= ds.n_samples()) throw DimensionError("row_dot: row index out of range");
  if (static_cast<std::size_t>(w.size()) != ds.n_features())
    throw DimensionError("row_dot: weight vector has " + std::to_string(w.size()) +
                         " entries, dataset has " + std::to_string(ds.n_features()) +
                         " features");
  return row_dot_unchecked(ds.row(i), w.data());
}

std::span<const DatasetInfo> benchmark_roster() noexcept { return kRoster; }

std::optional<DatasetInfo> find_benchmark(std::string_view name) noexcept {
  for (const auto& info : kRoster)
    if (info.name == name) return info;
  return std::nullopt;
}

}  // namespace pnn
