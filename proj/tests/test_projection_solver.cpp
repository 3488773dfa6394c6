#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "pnn/errors.hpp"
#include "pnn/oracle.hpp"
#include "pnn/projection_solver.hpp"
#include "support.hpp"

using namespace pnn;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Two features, four samples, both classes, not separable.
SparseDataset toy() { return parse_libsvm("1 1:1 2:0.5\n0 1:-1 2:1\n1 1:0.5 2:-1\n0 1:0.2 2:0.3\n"); }

SolverConfig tight(double tol = 1e-10) {
  SolverConfig c;
  c.tol = tol;
  c.max_iters = 1000000;
  return c;
}

}  // namespace

TEST_CASE("project_box examples") {
  CHECK(project_box(vec({-3, 0.5, 2}), 1.0) == vec({-1, 0.5, 1}));
  CHECK(project_box(vec({-3, 0.5, 2}), 0.0) == vec({0, 0, 0}));
  CHECK(project_box(vec({1, -1}), 1.0) == vec({1, -1}));
}

TEST_CASE("property: project_box is non-expansive, odd and satisfies the variational inequality") {
  test::Rng g(31);
  std::normal_distribution<double> normal(0.0, 3.0);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto d = static_cast<Eigen::Index>(test::uniform_int(g, 1, 8));
    Vector u(d), v(d), y(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      u[j] = normal(g);
      v[j] = normal(g);
    }
    const double lam = unif(g);
    for (Eigen::Index j = 0; j < d; ++j) y[j] = std::clamp(normal(g), -lam, lam);
    const Vector pu = project_box(u, lam);
    const Vector pv = project_box(v, lam);
    REQUIRE((pu - pv).norm() <= (u - v).norm() + 1e-15);
    REQUIRE(project_box(-u, lam) == -pu);
    // (u - P(u))ᵀ(y - P(u)) <= 0 for every y in the box.
    REQUIRE((u - pu).dot(y - pu) <= 1e-12);
    REQUIRE(pu.lpNorm<Eigen::Infinity>() <= lam);
  }
}

TEST_CASE("dynamics_rhs examples") {
  LossGrad lg;
  lg.grad_w = vec({0.3, -2.0, 0.0});
  lg.grad_b = 0.25;
  ModelParams p{vec({0.0, 1.0, -0.5}), 0.0};
  const auto rhs = dynamics_rhs(lg, p, 1.0);
  // -g + clamp(g - w): [-0.3 + 0.3, 2 - 1, 0 + 0.5]
  CHECK(rhs.dw[0] == doctest::Approx(0.0));
  CHECK(rhs.dw[1] == doctest::Approx(1.0));
  CHECK(rhs.dw[2] == doctest::Approx(0.5));
  CHECK(rhs.db == -0.25);
  CHECK(rhs.inf_norm() == 1.0);
}

TEST_CASE("kkt_residual examples") {
  LossGrad lg;
  lg.grad_w = vec({0.5, -1.0, 0.2});
  lg.grad_b = 0.0;
  // w = 0 with |g| <= λ everywhere is optimal.
  CHECK(kkt_residual(lg, ModelParams{Vector::Zero(3), 0.0}, 1.0) == 0.0);
  // Nonzero w_j needs g_j = -λ sign(w_j).
  ModelParams p{vec({0.0, 2.0, 0.0}), 0.0};
  CHECK(kkt_residual(lg, p, 1.0) == 0.0);
  lg.grad_b = -0.125;
  CHECK(kkt_residual(lg, p, 1.0) == 0.125);
  lg.grad_w[0] = 1.5;
  CHECK(kkt_residual(lg, ModelParams{Vector::Zero(3), 0.0}, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("property: equilibrium of the dynamics is equivalent to KKT") {
  test::Rng g(32);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto d = static_cast<Eigen::Index>(test::uniform_int(g, 1, 6));
    const double lam = unif(g);
    LossGrad lg;
    lg.grad_w.resize(d);
    ModelParams p{Vector(d), 0.0};
    // Half of the instances are built to satisfy KKT exactly.
    const bool kkt = rep % 2 == 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (kkt) {
        if (unif(g) < 0.5) {
          p.w[j] = 0.0;
          lg.grad_w[j] = lam * (2 * unif(g) - 1);
        } else {
          p.w[j] = normal(g);
          lg.grad_w[j] = p.w[j] > 0 ? -lam : lam;
        }
      } else {
        p.w[j] = normal(g);
        lg.grad_w[j] = normal(g);
      }
    }
    lg.grad_b = kkt ? 0.0 : normal(g);
    const double res = kkt_residual(lg, p, lam);
    const double rhs = dynamics_rhs(lg, p, lam).inf_norm();
    REQUIRE(std::abs(res - rhs) <= 1e-15);
    if (kkt) REQUIRE(res <= 1e-15);
  }
}

TEST_CASE("default_step") {
  const auto ds = parse_libsvm("1 1:3 2:4\n0 1:1\n");
  // max ||x_i||² = 25, n = 2.
  CHECK(default_step(ds) == doctest::Approx(1.0 / (25.0 / 8.0 + 1.0)).epsilon(1e-15));
}

TEST_CASE("initial_params") {
  CHECK(initial_params(3, InitMode::zeros, 0) == ModelParams::zeros(3));
  const auto ones = initial_params(3, InitMode::ones, 0);
  CHECK(ones.w == Vector::Ones(3));
  CHECK(ones.b == 1.0);
  const auto r1 = initial_params(50, InitMode::random, 7);
  const auto r2 = initial_params(50, InitMode::random, 7);
  const auto r3 = initial_params(50, InitMode::random, 8);
  CHECK(r1 == r2);
  CHECK_FALSE(r1 == r3);
  CHECK(r1.w.lpNorm<Eigen::Infinity>() <= 1.0);
  CHECK(parse_init_mode("random") == InitMode::random);
  CHECK_THROWS_AS(parse_init_mode("gaussian"), InputError);
}

TEST_CASE("toy problem agrees with the proximal-gradient oracle") {
  const auto ds = toy();
  const double lam = 0.05;
  const auto res = solve(ds, lam, tight(1e-11));
  REQUIRE(res.terminated == Termination::converged);
  const auto ref = oracle::ista_solve(ds, lam, 1.0, 1e-11, 1000000);
  REQUIRE(ref.converged);
  CHECK((res.params.w - ref.params.w).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK(std::abs(res.params.b - ref.params.b) <= 1e-8);
  CHECK(std::abs(res.objective - ref.objective) <= 1e-10);
  CHECK(res.kkt_residual <= 1e-11);
}

TEST_CASE("lambda at or above lambda_max gives w = 0 and the logit bias") {
  test::Rng g(33);
  for (int rep = 0; rep < 5; ++rep) {
    const auto ds = test::random_dataset(g, 40, 6);
    const double lmax = oracle::lambda_max(ds);
    for (double factor : {1.0, 1.5}) {
      const auto res = solve(ds, factor * lmax, tight(1e-9));
      REQUIRE(res.terminated == Termination::converged);
      CHECK(res.sparse_w.isZero(0.0));
      CHECK(res.params.w.lpNorm<Eigen::Infinity>() <= 1e-6);
      CHECK(std::abs(res.params.b - oracle::optimal_bias(ds)) <= 1e-4);
    }
  }
}

TEST_CASE("objective is non-increasing with line search") {
  test::Rng g(34);
  const auto ds = test::random_dataset(g, 60, 10);
  SolverConfig c = tight(1e-9);
  c.record_trace = true;
  c.init = InitMode::random;
  c.seed = 3;
  const auto res = solve(ds, 0.02, c);
  REQUIRE(res.trace.size() >= 2);
  for (std::size_t k = 1; k < res.trace.size(); ++k)
    REQUIRE(res.trace[k].objective <= res.trace[k - 1].objective + 1e-15);
}

TEST_CASE("the final point does not depend on the initialization") {
  test::Rng g(35);
  const auto ds = test::random_dataset(g, 50, 8);
  const double lam = 0.3 * oracle::lambda_max(ds);
  std::vector<SolveResult> results;
  for (auto mode : {InitMode::zeros, InitMode::ones, InitMode::random}) {
    SolverConfig c = tight(1e-10);
    c.init = mode;
    c.seed = 11;
    results.push_back(solve(ds, lam, c));
    REQUIRE(results.back().terminated == Termination::converged);
  }
  for (std::size_t k = 1; k < results.size(); ++k) {
    CHECK((results[k].params.w - results[0].params.w).lpNorm<Eigen::Infinity>() <= 1e-7);
    CHECK(std::abs(results[k].objective - results[0].objective) <= 1e-12);
  }
}

TEST_CASE("trace stride only thins the trace") {
  test::Rng g(36);
  const auto ds = test::random_dataset(g, 30, 5);
  SolverConfig c = tight(1e-8);
  c.record_trace = true;
  c.trace_stride = 1;
  const auto a = solve(ds, 0.01, c);
  c.trace_stride = 10;
  const auto b = solve(ds, 0.01, c);
  CHECK(a.params == b.params);
  CHECK(a.iterations == b.iterations);
  REQUIRE(!a.trace.empty());
  REQUIRE(!b.trace.empty());
  CHECK(a.trace.back().iter == b.trace.back().iter);
  CHECK(a.trace.back().objective == b.trace.back().objective);
  CHECK(a.trace.back().params == b.trace.back().params);
  for (const auto& pt : b.trace) CHECK((pt.iter % 10 == 0 || pt.iter == b.iterations));
  CHECK(b.trace.size() < a.trace.size());

  c.trace_params = false;
  const auto lean = solve(ds, 0.01, c);
  CHECK(lean.trace.back().params.w.size() == 0);
  CHECK(lean.params == b.params);
}

TEST_CASE("seeded random starts are deterministic") {
  test::Rng g(37);
  const auto ds = test::random_dataset(g, 30, 5);
  SolverConfig c;
  c.init = InitMode::random;
  c.seed = 42;
  const auto a = solve(ds, 0.05, c);
  const auto b = solve(ds, 0.05, c);
  CHECK(a.params == b.params);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("warm start from the solution stops immediately") {
  test::Rng g(38);
  const auto ds = test::random_dataset(g, 30, 5);
  const auto a = solve(ds, 0.05, tight(1e-9));
  REQUIRE(a.terminated == Termination::converged);
  const auto b = solve(ds, 0.05, tight(1e-9), a.params);
  CHECK(b.iterations == 0);
  CHECK(b.params == a.params);
}

TEST_CASE("sparse_w snaps only tiny entries") {
  test::Rng g(39);
  const auto ds = test::random_dataset(g, 60, 12);
  const auto res = solve(ds, 0.2 * oracle::lambda_max(ds), tight(1e-8));
  for (Eigen::Index j = 0; j < res.params.w.size(); ++j) {
    if (std::abs(res.params.w[j]) <= 1e-7)
      CHECK(res.sparse_w[j] == 0.0);
    else
      CHECK(res.sparse_w[j] == res.params.w[j]);
  }
}

TEST_CASE("a huge step without line search raises NumericalError") {
  // Gradients of order 10 times a step of 1e308 overflow.
  const auto ds = parse_libsvm("1 1:40 2:-25\n0 1:-30 2:35\n1 2:50\n0 1:20\n");
  SolverConfig c;
  c.alpha_step = 1e308;
  c.line_search = false;
  CHECK_THROWS_AS(solve(ds, 0.01, c), NumericalError);
}

TEST_CASE("fixed step without line search converges on a small step") {
  const auto ds = toy();
  SolverConfig c = tight(1e-9);
  c.line_search = false;
  const auto res = solve(ds, 0.05, c);
  CHECK(res.terminated == Termination::converged);
  CHECK(res.step == default_step(ds));
  const auto ref = oracle::ista_solve(ds, 0.05, 1.0, 1e-11, 1000000);
  CHECK(std::abs(res.objective - ref.objective) <= 1e-9);
}

TEST_CASE("argument validation") {
  const auto ds = toy();
  SolverConfig c;
  CHECK_THROWS_AS(solve(ds, -1.0, c), InputError);
  CHECK_THROWS_AS(solve(SparseDataset{}, 0.1, c), InputError);
  CHECK_THROWS_AS(solve(ds, 0.1, c, ModelParams::zeros(5)), DimensionError);
  c.tol = 0.0;
  CHECK_THROWS_AS(solve(ds, 0.1, c), InputError);
  c = SolverConfig{};
  c.alpha_step = -1.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = SolverConfig{};
  c.trace_stride = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  ModelParams bad = ModelParams::zeros(2);
  bad.b = std::nan("");
  CHECK_THROWS_AS(solve(ds, 0.1, SolverConfig{}, bad), InputError);
}

TEST_CASE("max_iters caps the iteration count") {
  test::Rng g(41);
  const auto ds = test::random_dataset(g, 30, 5);
  SolverConfig c;
  c.tol = 1e-14;
  c.max_iters = 7;
  const auto res = solve(ds, 0.01, c);
  CHECK(res.iterations == 7);
  CHECK(res.terminated == Termination::max_iters);
}
