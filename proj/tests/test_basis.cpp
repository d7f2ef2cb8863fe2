#include <doctest.h>

#include <cmath>

#include "wl1approx/basis.hpp"

using namespace wl1;

TEST_SUITE("basis") {

TEST_CASE("normalized Legendre values match the standard library polynomials") {
  for (int k = 0; k <= 8; ++k)
    for (double t : {-0.9, -0.4, 0.0, 0.3, 0.77, 1.0}) {
      CAPTURE(k);
      CAPTURE(t);
      CHECK(eval_basis_1d(BasisKind::Legendre, k, t) ==
            doctest::Approx(std::sqrt(2.0 * k + 1.0) * std::legendre(k, t))
                .epsilon(1e-13));
    }
}

TEST_CASE("Chebyshev values are sqrt(2) cos(k arccos t)") {
  CHECK(eval_basis_1d(BasisKind::Chebyshev, 0, 0.31) == doctest::Approx(1.0));
  for (int k = 1; k <= 6; ++k)
    for (double theta : {0.2, 1.1, 2.9}) {
      double t = std::cos(theta);
      CHECK(eval_basis_1d(BasisKind::Chebyshev, k, t) ==
            doctest::Approx(std::sqrt(2.0) * std::cos(k * theta)).epsilon(1e-13));
    }
}

TEST_CASE("unit L2 norm under the orthogonality measure (high-order quadrature)") {
  // Midpoint rule: O(h^2) for the polynomial case, exact for the angular one.
  const int q = 50000;
  for (int k = 0; k <= 6; ++k) {
    double leg = 0.0, cheb = 0.0;
    for (int i = 0; i < q; ++i) {
      double t = -1.0 + 2.0 * (i + 0.5) / q;  // uniform measure dt/2
      double v = eval_basis_1d(BasisKind::Legendre, k, t);
      leg += v * v / q;
      double theta = M_PI * (i + 0.5) / q;  // arcsine measure via t = cos(theta)
      double c = eval_basis_1d(BasisKind::Chebyshev, k, std::cos(theta));
      cheb += c * c / q;
    }
    CAPTURE(k);
    CHECK(leg == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cheb == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("tensor product evaluation") {
  MultiIndex i = {2, 0, 1};
  SamplePoint t = {0.3, -0.5, 0.9};
  double expected = eval_basis_1d(BasisKind::Legendre, 2, 0.3) *
                    eval_basis_1d(BasisKind::Legendre, 0, -0.5) *
                    eval_basis_1d(BasisKind::Legendre, 1, 0.9);
  CHECK(eval_basis(BasisKind::Legendre, i, t) == doctest::Approx(expected));
  CHECK_THROWS_AS(eval_basis(BasisKind::Legendre, {1, 2}, {0.5}),
                  std::invalid_argument);
}

TEST_CASE("intrinsic weights are attained uniform norms") {
  // |phi_i(t)| <= u_i on a dense grid, with equality approached at t = 1.
  for (BasisKind kind : {BasisKind::Legendre, BasisKind::Chebyshev}) {
    for (int k : {0, 1, 3, 5}) {
      double u = intrinsic_weight(kind, {k});
      double sup = 0.0;
      for (int i = 0; i <= 400; ++i) {
        double t = -1.0 + 2.0 * i / 400.0;
        sup = std::max(sup, std::abs(eval_basis_1d(kind, k, t)));
      }
      CAPTURE(k);
      CHECK(sup <= u + 1e-12);
      CHECK(sup == doctest::Approx(u).epsilon(1e-9));  // attained at t = +-1
    }
  }
}

TEST_CASE("sample_measure stays inside the open cube and is seed-deterministic") {
  Rng a(42), b(42), c(43);
  auto pa = sample_measure(BasisKind::Legendre, 3, 50, a);
  auto pb = sample_measure(BasisKind::Legendre, 3, 50, b);
  auto pc = sample_measure(BasisKind::Legendre, 3, 50, c);
  CHECK(pa == pb);
  CHECK(pa != pc);
  for (const auto& p : pa)
    for (double t : p) {
      CHECK(t > -1.0);
      CHECK(t < 1.0);
    }
  Rng d(7);
  for (const auto& p : sample_measure(BasisKind::Chebyshev, 2, 50, d))
    for (double t : p) {
      CHECK(t > -1.0);
      CHECK(t < 1.0);
    }
}

TEST_CASE("substreams decorrelate trials deterministically") {
  Rng t1 = Rng::substream(1234, 1), t1b = Rng::substream(1234, 1);
  Rng t2 = Rng::substream(1234, 2);
  CHECK(t1.uniform01() == t1b.uniform01());
  CHECK(Rng::mix(1234, 1) != Rng::mix(1234, 2));
  CHECK(Rng::mix(1234, 1) != Rng::mix(1235, 1));
  CHECK(t1.uniform01() != t2.uniform01());
}

TEST_CASE("assemble bakes in the 1/sqrt(m) scaling and caches weights") {
  IndexSet Lambda = hyperbolic_cross(2, 3);
  std::vector<SamplePoint> points = {{0.1, -0.2}, {0.5, 0.5}, {-0.9, 0.3}};
  std::vector<double> values = {1.0, -2.0, 0.5};
  DesignProblem problem = assemble(BasisKind::Chebyshev, Lambda, points, values);
  REQUIRE(problem.m() == 3);
  REQUIRE(problem.n() == Lambda.size());
  const double scale = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(problem.y(i) == doctest::Approx(scale * values[i]));
    for (int j = 0; j < problem.n(); ++j)
      CHECK(problem.A(i, j) ==
            doctest::Approx(scale * eval_basis(BasisKind::Chebyshev, Lambda[j],
                                               points[i])));
  }
  for (int j = 0; j < problem.n(); ++j)
    CHECK(problem.weights(j) ==
          doctest::Approx(intrinsic_weight(BasisKind::Chebyshev, Lambda[j])));
  CHECK_THROWS_AS(assemble(BasisKind::Chebyshev, Lambda, points, {1.0}),
                  std::invalid_argument);
}

TEST_CASE("matrix dump preserves the matrix to full precision") {
  IndexSet Lambda = hyperbolic_cross(1, 4);
  Rng rng(5);
  auto points = sample_measure(BasisKind::Legendre, 1, 6, rng);
  DesignProblem problem =
      assemble(BasisKind::Legendre, Lambda, points, std::vector<double>(6, 0.0));
  std::istringstream is(problem.matrix_dump());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) {
      double v;
      REQUIRE(static_cast<bool>(is >> v));
      CHECK(v == problem.A(i, j));  // 17 significant digits round-trip exactly
    }
}

}  // TEST_SUITE
