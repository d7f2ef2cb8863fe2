#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "wl1approx/solvers.hpp"

using namespace wl1;

namespace {

DecoderKind make_kind(DecoderFamily family, double p) {
  switch (family) {
    case DecoderFamily::WQCBP: return DecoderKind::wqcbp(p);
    case DecoderFamily::WLASSO: return DecoderKind::wlasso(p);
    case DecoderFamily::WSRLASSO: return DecoderKind::wsr_lasso(p);
    case DecoderFamily::WLADLASSO: return DecoderKind::wlad_lasso(p);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("decoder names round trip and aliases resolve") {
  for (DecoderFamily f : {DecoderFamily::WQCBP, DecoderFamily::WLASSO,
                          DecoderFamily::WSRLASSO, DecoderFamily::WLADLASSO})
    CHECK(decoder_from_name(decoder_name(f)) == f);
  CHECK(decoder_from_name("wbp") == DecoderFamily::WQCBP);
  CHECK_THROWS_AS(decoder_from_name("ridge"), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(DecoderKind::wqcbp(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(DecoderKind::wlasso(0.0), std::invalid_argument);
  CHECK_THROWS_AS(DecoderKind::wsr_lasso(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(DecoderKind::wlad_lasso(1.0, Eigen::VectorXd::Constant(2, 0.5)),
                  std::invalid_argument);
  CHECK_NOTHROW(DecoderKind::wqcbp(0.0));
  CHECK_NOTHROW(DecoderKind::wlad_lasso(1.0, Eigen::VectorXd::Constant(2, 1.5)));
}

TEST_CASE("weighted soft threshold") {
  Eigen::VectorXd z(4), u(4);
  z << 3.0, -0.4, 0.0, -5.0;
  u << 1.0, 1.0, 2.0, 4.0;
  Eigen::VectorXd p = prox_weighted_l1(z, u, 0.5);
  CHECK(p(0) == doctest::Approx(2.5));
  CHECK(p(1) == doctest::Approx(0.0));
  CHECK(p(2) == doctest::Approx(0.0));
  CHECK(p(3) == doctest::Approx(-3.0));
  CHECK_THROWS_AS(prox_weighted_l1(z, u, 0.0), std::invalid_argument);
}

TEST_CASE("operator norm matches a dense SVD") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 5}, {10, 4}, {7, 7}}) {
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = U(gen);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    CHECK(operator_norm(A) ==
          doctest::Approx(svd.singularValues()(0)).epsilon(1e-5));
  }
}

TEST_CASE("WQCBP with identity design shrinks toward the residual ball") {
  // min |z_1| + |z_2| s.t. ||z - y|| <= eta with y = (3, 0): z = (2, 0).
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd y(2), u = Eigen::VectorXd::Ones(2);
  y << 3.0, 0.0;
  DecoderSolution sol = solve(A, y, u, DecoderKind::wqcbp(1.0));
  CHECK(sol.converged);
  CHECK(sol.x(0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sol.x(1) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(sol.residual.norm() <= 1.0 + 1e-6);
}

TEST_CASE("WLASSO scalar case is a soft threshold of y") {
  // min u|z| + lambda (z - y)^2  =>  z = sign(y) max(|y| - u/(2 lambda), 0)
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(1, 1);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(1);
  for (double lambda : {0.2, 1.0, 5.0})
    for (double yv : {-2.0, 0.3, 1.7}) {
      Eigen::VectorXd y(1);
      y << yv;
      DecoderSolution sol = solve(A, y, u, DecoderKind::wlasso(lambda));
      double expected = std::abs(yv) - 0.5 / lambda;
      expected = expected > 0.0 ? (yv > 0 ? expected : -expected) : 0.0;
      CAPTURE(lambda);
      CAPTURE(yv);
      CHECK(sol.x(0) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("WSR-LASSO scalar case switches at lambda = u") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(1, 1);
  Eigen::VectorXd y(1), u = Eigen::VectorXd::Ones(1);
  y << 1.4;
  // min |z| + lambda |z - y|: z = y when lambda > 1, z = 0 when lambda < 1
  CHECK(solve(A, y, u, DecoderKind::wsr_lasso(3.0)).x(0) ==
        doctest::Approx(1.4).epsilon(1e-6));
  CHECK(solve(A, y, u, DecoderKind::wsr_lasso(0.4)).x(0) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("WLAD-LASSO fidelity weights raise the switching point") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(1, 1);
  Eigen::VectorXd y(1), u = Eigen::VectorXd::Ones(1);
  y << -0.8;
  // min |z| + lambda v |z - y|: interpolates when lambda v > 1
  CHECK(solve(A, y, u, DecoderKind::wlad_lasso(0.6)).x(0) ==
        doctest::Approx(0.0).epsilon(1e-6));
  CHECK(solve(A, y, u,
              DecoderKind::wlad_lasso(0.6, Eigen::VectorXd::Constant(1, 2.0)))
            .x(0) == doctest::Approx(-0.8).epsilon(1e-6));
}

TEST_CASE("interpolation regime: large fidelity weight recovers A^{-1} y") {
  Eigen::MatrixXd A(2, 2);
  A << 1.0, 0.2, 0.1, 1.0;
  Eigen::VectorXd y(2), u = Eigen::VectorXd::Ones(2);
  y << 1.0, 0.5;
  Eigen::VectorXd exact = A.colPivHouseholderQr().solve(y);
  for (DecoderFamily f : {DecoderFamily::WLASSO, DecoderFamily::WSRLASSO,
                          DecoderFamily::WLADLASSO}) {
    DecoderSolution sol = solve(A, y, u, make_kind(f, 1e4));
    CAPTURE(decoder_name(f));
    CHECK((sol.x - exact).norm() <= 1e-3);
  }
  DecoderSolution bp = solve(A, y, u, DecoderKind::wqcbp(0.0));
  CHECK((bp.x - exact).norm() <= 1e-5);
}

TEST_CASE("objective values agree with their definitions") {
  Eigen::MatrixXd A(2, 2);
  A << 1.0, -0.3, 0.4, 0.9;
  Eigen::VectorXd y(2), u(2), z(2), v(2);
  y << 0.7, -0.2;
  u << 1.0, 2.0;
  z << 0.5, -1.0;
  v << 1.0, 3.0;
  Eigen::VectorXd r = A * z - y;
  double l1 = 0.5 + 2.0;
  CHECK(decoder_objective(DecoderKind::wqcbp(1.0), A, y, u, z) == doctest::Approx(l1));
  CHECK(decoder_objective(DecoderKind::wlasso(2.0), A, y, u, z) ==
        doctest::Approx(l1 + 2.0 * r.squaredNorm()));
  CHECK(decoder_objective(DecoderKind::wsr_lasso(2.0), A, y, u, z) ==
        doctest::Approx(l1 + 2.0 * r.norm()));
  CHECK(decoder_objective(DecoderKind::wlad_lasso(2.0, v), A, y, u, z) ==
        doctest::Approx(l1 + 2.0 * (std::abs(r(0)) + 3.0 * std::abs(r(1)))));
}

TEST_CASE("grid-search oracle confirms optimality on random small instances") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int inst = 0; inst < 3; ++inst) {
    const int n = dim(gen);
    const int m = n;  // keeps WQCBP feasible for every eta
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = U(gen);
    Eigen::VectorXd y(m), u(n);
    for (int i = 0; i < m; ++i) y(i) = U(gen);
    for (int j = 0; j < n; ++j) u(j) = 1.0 + std::abs(U(gen));
    for (DecoderFamily f : {DecoderFamily::WLASSO, DecoderFamily::WSRLASSO,
                            DecoderFamily::WLADLASSO}) {
      DecoderKind kind = make_kind(f, 1.5);
      DecoderSolution sol = solve(A, y, u, kind);
      Eigen::VectorXd zstar = testoracle::grid_search_min(
          [&](const Eigen::VectorXd& z) { return decoder_objective(kind, A, y, u, z); },
          n);
      CAPTURE(inst);
      CAPTURE(decoder_name(f));
      CHECK(sol.objective <= decoder_objective(kind, A, y, u, zstar) + 1e-4);
    }
  }
}

TEST_CASE("duality gap estimate is tight for the penalized decoders") {
  Eigen::MatrixXd A(3, 2);
  A << 0.9, 0.1, -0.3, 0.8, 0.2, 0.4;
  Eigen::VectorXd y(3), u = Eigen::VectorXd::Ones(2);
  y << 1.0, -0.5, 0.2;
  for (DecoderFamily f : {DecoderFamily::WLASSO, DecoderFamily::WSRLASSO,
                          DecoderFamily::WLADLASSO}) {
    DecoderSolution sol = solve(A, y, u, make_kind(f, 2.0));
    CAPTURE(decoder_name(f));
    CHECK(sol.converged);
    CHECK(std::abs(sol.duality_gap) <= 1e-5);
  }
  DecoderSolution bp = solve(A.topRows(2), y.head(2), u, DecoderKind::wqcbp(0.5));
  CHECK(std::isnan(bp.duality_gap));
}

TEST_CASE("infeasible WQCBP is reported, not silently returned") {
  // Overdetermined inconsistent system: min ||Az - y|| = sqrt(2) > eta.
  Eigen::MatrixXd A(2, 1);
  A << 1.0, 1.0;
  Eigen::VectorXd y(2), u = Eigen::VectorXd::Ones(1);
  y << 1.0, -1.0;
  CHECK_THROWS_AS(solve(A, y, u, DecoderKind::wqcbp(0.1)), InfeasibleError);
  // A reachable residual is fine.
  CHECK_NOTHROW(solve(A, y, u, DecoderKind::wqcbp(1.5)));
}

TEST_CASE("trace callback fires at the configured cadence") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd y(2), u = Eigen::VectorXd::Ones(2);
  y << 3.0, -1.0;
  SolverOptions opts;
  opts.trace_every = 10;
  int calls = 0;
  int last_it = -1;
  opts.trace = [&](int it, double obj, double res, double step) {
    ++calls;
    CHECK(it % 10 == 0);
    CHECK(it > last_it);
    last_it = it;
    CHECK(std::isfinite(obj));
    CHECK(std::isfinite(res));
    CHECK(step > 0.0);
  };
  solve(A, y, u, DecoderKind::wlasso(2.0), opts);
  CHECK(calls > 0);
}

TEST_CASE("input validation") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd y2 = Eigen::VectorXd::Ones(2), y3 = Eigen::VectorXd::Ones(3);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(solve(A, y3, u, DecoderKind::wqcbp(0.0)), std::invalid_argument);
  Eigen::MatrixXd bad = A;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(solve(bad, y2, u, DecoderKind::wqcbp(0.0)), std::invalid_argument);
  SolverOptions opts;
  opts.max_iterations = 0;
  CHECK_THROWS_AS(solve(A, y2, u, DecoderKind::wqcbp(0.0), opts),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      solve(A, y2, u, DecoderKind::wlad_lasso(1.0, Eigen::VectorXd::Ones(3))),
      std::invalid_argument);
}

}  // TEST_SUITE
