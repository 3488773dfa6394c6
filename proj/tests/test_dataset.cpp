#include "doctest.h"

#include <fstream>

#include "pnn/dataset.hpp"
#include "pnn/errors.hpp"
#include "support.hpp"

using namespace pnn;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_libsvm(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a ParseError");
  return 0;
}

}  // namespace

TEST_CASE("parse_libsvm maps 1-based indices and ±1 labels") {
  const auto ds = parse_libsvm("+1 1:0.5 3:2.0\n-1 2:1.0\n");
  CHECK(ds.n_samples() == 2);
  CHECK(ds.n_features() == 3);
  const auto r0 = ds.row(0);
  REQUIRE(r0.cols.size() == 2);
  CHECK(r0.cols[0] == 0);
  CHECK(r0.values[0] == 0.5);
  CHECK(r0.cols[1] == 2);
  CHECK(r0.values[1] == 2.0);
  const auto r1 = ds.row(1);
  REQUIRE(r1.cols.size() == 1);
  CHECK(r1.cols[0] == 1);
  CHECK(r1.values[0] == 1.0);
  CHECK(ds.labels()[0] == 1);
  CHECK(ds.labels()[1] == 0);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(parse_libsvm(""), ParseError);
  CHECK_THROWS_AS(parse_libsvm("\n\n  \n"), ParseError);
  try {
    parse_libsvm("");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("empty dataset") != std::string::npos);
    CHECK(e.line() == 0);
  }
}

TEST_CASE("malformed lines report their line number") {
  CHECK(parse_error_line("1 1:2\n0 1:x\n") == 2);
  CHECK(parse_error_line("1 1:2\nfoo 1:1\n") == 2);
  CHECK(parse_error_line("1 1:2 1:3\n") == 1);
  CHECK(parse_error_line("1 3:2 2:3\n") == 1);
  CHECK(parse_error_line("1 0:2\n") == 1);
  CHECK(parse_error_line("1 1:2\n0 1:1\n\n2 1:1\n") == 4);
  CHECK(parse_error_line("1 12\n") == 1);
  CHECK(parse_error_line("1 a:1\n") == 1);
}

TEST_CASE("blank lines, tabs and CRLF endings are accepted") {
  const auto ds = parse_libsvm("1\t1:1 2:2\r\n\r\n0 2:3\r\n");
  CHECK(ds.n_samples() == 2);
  CHECK(ds.n_features() == 2);
  CHECK(ds.nnz() == 3);
}

TEST_CASE("a row may have no features") {
  const auto ds = parse_libsvm("1\n0 4:1\n");
  CHECK(ds.n_samples() == 2);
  CHECK(ds.row(0).cols.empty());
  CHECK(ds.n_features() == 4);
}

TEST_CASE("n_features is the larger of the hint and the largest index") {
  CHECK(parse_libsvm("1 2:1\n0 1:1\n", 10).n_features() == 10);
  CHECK(parse_libsvm("1 7:1\n0 1:1\n", 3).n_features() == 7);
}

TEST_CASE("label_map orders raw values") {
  const std::vector<double> a{-1, 1, -1};
  CHECK(label_map(a).labels == std::vector<std::uint8_t>{0, 1, 0});
  const std::vector<double> b{1, 2};
  CHECK(label_map(b).labels == std::vector<std::uint8_t>{0, 1});
  const std::vector<double> c{0, 1, 1};
  CHECK(label_map(c).labels == std::vector<std::uint8_t>{0, 1, 1});
  // First-seen order does not matter.
  const std::vector<double> d{2, 1, 2};
  CHECK(label_map(d).labels == std::vector<std::uint8_t>{1, 0, 1});
  CHECK_FALSE(label_map(d).single_valued);
}

TEST_CASE("single-valued labels map to 1 with the flag set") {
  const std::vector<double> raw{-1, -1};
  const auto m = label_map(raw);
  CHECK(m.labels == std::vector<std::uint8_t>{1, 1});
  CHECK(m.single_valued);

  LabelMap info;
  const auto ds = parse_libsvm("-1 1:1\n-1 2:1\n", std::nullopt, &info);
  CHECK(info.single_valued);
  CHECK(info.raw_positive == -1.0);
  CHECK(ds.positive_fraction() == 1.0);
}

TEST_CASE("three distinct labels are rejected") {
  const std::vector<double> raw{0, 1, 2};
  CHECK_THROWS_AS(label_map(raw), InputError);
  CHECK(parse_error_line("0 1:1\n1 1:1\n2 1:1\n") == 3);
}

TEST_CASE("row_dot") {
  const auto ds = parse_libsvm("+1 1:0.5 3:2.0\n-1 2:1.0\n");
  Vector w(3);
  w << 2, 9, 1;
  CHECK(row_dot(ds, 0, w) == 3.0);
  CHECK(row_dot(ds, 1, Vector::Zero(3)) == 0.0);
  CHECK_THROWS_AS(row_dot(ds, 2, w), DimensionError);
  CHECK_THROWS_AS(row_dot(ds, 0, Vector::Zero(2)), DimensionError);
}

TEST_CASE("row_dot matches a dense product on a 5x4 instance") {
  test::Rng g(11);
  const auto ds = test::random_dataset(g, 5, 4);
  const Eigen::MatrixXd x = test::to_matrix(ds);
  const Vector w = Vector::Random(4);
  const Vector dense = x * w;
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(row_dot(ds, i, w) == doctest::Approx(dense[static_cast<Eigen::Index>(i)]).epsilon(1e-12));
}

TEST_CASE("property: row_dot equals the dense dot product") {
  test::Rng g(12);
  for (int rep = 0; rep < 100; ++rep) {
    const auto n = test::uniform_int(g, 2, 50);
    const auto d = test::uniform_int(g, 1, 50);
    const auto ds = test::random_dataset(g, n, d, 0.4);
    const Eigen::MatrixXd x = ds.to_dense();
    Vector w(static_cast<Eigen::Index>(d));
    std::normal_distribution<double> normal;
    for (auto& v : w) v = normal(g);
    for (std::size_t i = 0; i < n; ++i) {
      const double dense = x.row(static_cast<Eigen::Index>(i)).dot(w);
      REQUIRE(std::abs(row_dot(ds, i, w) - dense) <= 1e-12 * (1.0 + std::abs(dense)));
    }
  }
}

TEST_CASE("property: serialize then parse reproduces the dataset") {
  test::Rng g(13);
  for (int rep = 0; rep < 50; ++rep) {
    const auto ds = test::random_dataset(g, test::uniform_int(g, 2, 40), test::uniform_int(g, 1, 30), 0.5);
    const auto back = parse_libsvm(to_libsvm(ds), ds.n_features());
    REQUIRE(back == ds);
  }
}

TEST_CASE("constructor enforces the CSR invariants") {
  using V = std::vector<double>;
  using C = std::vector<std::uint32_t>;
  using O = std::vector<std::size_t>;
  using L = std::vector<std::uint8_t>;
  CHECK_NOTHROW(SparseDataset(3, O{0, 2, 3}, C{0, 2, 1}, V{1, 2, 3}, L{1, 0}));
  CHECK_THROWS_AS(SparseDataset(3, O{0, 2}, C{0, 2, 1}, V{1, 2, 3}, L{1, 0}), InputError);
  CHECK_THROWS_AS(SparseDataset(3, O{1, 2, 3}, C{0, 2, 1}, V{1, 2, 3}, L{1, 0}), InputError);
  CHECK_THROWS_AS(SparseDataset(3, O{0, 2, 3}, C{0, 3, 1}, V{1, 2, 3}, L{1, 0}), InputError);
  CHECK_THROWS_AS(SparseDataset(3, O{0, 2, 3}, C{2, 0, 1}, V{1, 2, 3}, L{1, 0}), InputError);
  CHECK_THROWS_AS(SparseDataset(3, O{0, 2, 3}, C{0, 2, 1}, V{1, 2, 3}, L{1, 2}), InputError);
  CHECK_THROWS_AS(SparseDataset(3, O{0, 2, 1}, C{0, 2, 1}, V{1, 2, 3}, L{1, 0}), InputError);
}

TEST_CASE("select_rows and widened") {
  const auto ds = parse_libsvm("1 1:1\n0 2:2\n1 3:3\n");
  const std::vector<std::size_t> order{2, 0};
  const auto sub = ds.select_rows(order);
  CHECK(sub.n_samples() == 2);
  CHECK(sub.row(0).values[0] == 3.0);
  CHECK(sub.labels()[1] == 1);
  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(ds.select_rows(bad), DimensionError);

  CHECK(ds.widened(5).n_features() == 5);
  CHECK_THROWS_AS(ds.widened(2), DimensionError);
}

TEST_CASE("load_libsvm names the file in errors") {
  const auto dir = test::scratch_dir("dataset_load");
  const auto path = dir / "bad.svm";
  {
    std::ofstream(path) << "1 1:1\n0 2:z\n";
  }
  try {
    load_libsvm(path);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("bad.svm") != std::string::npos);
  }
  CHECK_THROWS_AS(load_libsvm(dir / "missing.svm"), InputError);
}

TEST_CASE("splice training file has the benchmark shape") {
  const auto ds = load_libsvm(test::data_file("splice"));
  CHECK(ds.n_features() == 60);
  CHECK(ds.n_samples() == 1000);
  const auto test_set = load_libsvm(test::data_file("splice.t"), ds.n_features());
  CHECK(test_set.n_features() == 60);
  CHECK(test_set.n_samples() == 2175);
}

TEST_CASE("benchmark roster") {
  const auto roster = benchmark_roster();
  CHECK(roster.size() == 8);
  for (const auto& info : roster) {
    CHECK(info.n_features > 0);
    CHECK(info.n_train > 0);
    CHECK(info.n_test > 0);
  }
  const auto splice = find_benchmark("splice");
  REQUIRE(splice);
  CHECK(splice->n_features == 60);
  CHECK(splice->n_train == 1000);
  CHECK(splice->n_test == 2175);
  CHECK_FALSE(find_benchmark("mnist"));
}
