#include <doctest.h>

#include <cmath>
#include <set>

#include "wl1approx/tuning.hpp"

using namespace wl1;

TEST_SUITE("tuning") {

TEST_CASE("parameter recipes") {
  RecipeInputs in;
  in.noise_estimate = 0.01;
  CHECK(recommend(DecoderFamily::WQCBP, 10, BasisKind::Legendre, in) ==
        doctest::Approx(0.01));
  CHECK(recommend(DecoderFamily::WLASSO, 10, BasisKind::Legendre, in) ==
        doctest::Approx(10.0 / 0.01));
  CHECK(recommend(DecoderFamily::WSRLASSO, 4, BasisKind::Legendre) ==
        doctest::Approx(3.0 * 4.0));
  double gamma = std::log(3.0) / std::log(2.0);
  CHECK(recommend(DecoderFamily::WSRLASSO, 10, BasisKind::Chebyshev) ==
        doctest::Approx(3.0 * std::pow(10.0, 0.5 * gamma)));

  // WLAD-LASSO: practical fallback, theory form, and partial-input error
  CHECK(recommend(DecoderFamily::WLADLASSO, 10, BasisKind::Legendre) ==
        doctest::Approx(1.0));
  RecipeInputs lad;
  lad.corruption_count = 30;
  lad.m = 300;
  lad.n = 1431;
  CHECK(recommend(DecoderFamily::WLADLASSO, 10, BasisKind::Legendre, lad) ==
        doctest::Approx(3.0 / std::sqrt(0.1 * std::log(1431.0))));
  RecipeInputs partial;
  partial.corruption_count = 30;
  CHECK_THROWS_AS(recommend(DecoderFamily::WLADLASSO, 10, BasisKind::Legendre, partial),
                  std::invalid_argument);
  CHECK_THROWS_AS(recommend(DecoderFamily::WQCBP, 10, BasisKind::Legendre),
                  std::invalid_argument);
}

TEST_CASE("sample-complexity rule uses the natural logarithm") {
  CHECK(recommended_m(10, BasisKind::Legendre, 1432) == 727);
  CHECK(recommended_m(10, BasisKind::Chebyshev, 1432) == 280);
  CHECK(recommended_m(2, BasisKind::Legendre, 10) ==
        static_cast<int>(std::ceil(4.0 * std::log(10.0))));
  CHECK_THROWS_AS(recommended_m(0, BasisKind::Legendre, 10), std::invalid_argument);
}

TEST_CASE("theta is minimized at sqrt(K/k) with value sqrt(2)") {
  for (auto [K, k] : std::vector<std::pair<double, double>>{{100.0, 30.0},
                                                            {38.4, 28.0},
                                                            {5.0, 5.0}}) {
    double lam = theta_minimizer(K, k);
    CHECK(lam == doctest::Approx(std::sqrt(K / k)));
    CHECK(theta(K, lam, k) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(theta(K, 2.0 * lam, k) > std::sqrt(2.0));
    CHECK(theta(K, 0.5 * lam, k) > std::sqrt(2.0));
  }
}

TEST_CASE("polylog factor") {
  const double ls = std::log(8.0);
  double expected = ls * ls * std::min(ls + 3.0, std::log(6.0) * ls) +
                    ls * std::log(8.0 / 0.01);
  CHECK(polylog_L(8, 3, 0.01) == doctest::Approx(expected));
  CHECK_THROWS_AS(polylog_L(1, 3, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(polylog_L(8, 3, 1.5), std::invalid_argument);
}

TEST_CASE("geometric grid notation") {
  auto g = parse_log_grid("-2:0.5:2");
  REQUIRE(g.size() == 9);
  CHECK(g.front() == doctest::Approx(1e-2));
  CHECK(g[4] == doctest::Approx(1.0));
  CHECK(g.back() == doctest::Approx(1e2));
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(g[i] / g[i - 1] == doctest::Approx(std::pow(10.0, 0.5)));

  CHECK(parse_log_grid("-7:0.5:1").size() == 17);   // eta sweep
  CHECK(parse_log_grid("-1:0.5:8").size() == 19);   // wlasso sweep
  CHECK(parse_log_grid("-2:0.25:5").size() == 29);  // wsr sweep
  CHECK(parse_log_grid("-2:0.25:3").size() == 21);  // wlad sweep
  CHECK_THROWS_AS(parse_log_grid("nonsense"), std::invalid_argument);
}

TEST_CASE("fold sizes differ by at most one and cover every row") {
  Rng rng(11);
  for (auto [m, G] : std::vector<std::pair<int, int>>{{10, 5}, {11, 5}, {4, 2},
                                                      {23, 4}}) {
    auto fold = make_folds(m, G, rng);
    REQUIRE(static_cast<int>(fold.size()) == m);
    std::vector<int> counts(G, 0);
    for (int f : fold) {
      REQUIRE(f >= 0);
      REQUIRE(f < G);
      ++counts[f];
    }
    for (int c : counts) {
      CHECK(c >= m / G);
      CHECK(c <= m / G + 1);
    }
  }
  CHECK_THROWS_AS(make_folds(3, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_folds(3, 4, rng), std::invalid_argument);
}

TEST_CASE("cross validation reproduces a hand-computed error table") {
  // m = 4, G = 2, stub decoder x(p) = (p, -p): every table entry can be
  // recomputed directly from the fold assignment and the rescaling rule.
  Eigen::MatrixXd A(4, 2);
  A << 1.0, 0.5, -0.3, 1.0, 0.8, -0.2, 0.1, 0.9;
  Eigen::VectorXd y(4);
  y << 0.7, -0.4, 1.1, 0.2;
  CvSpec spec;
  spec.folds = 2;
  spec.repetitions = 3;
  spec.grid = {0.5, 1.0, 2.0};
  CvDecoder stub = [](const Eigen::MatrixXd&, const Eigen::VectorXd&, double p) {
    Eigen::VectorXd x(2);
    x << p, -p;
    return x;
  };

  Rng rng(77);
  CvResult result = cross_validate(A, y, spec, stub, rng);

  Rng replay(77);  // same fold sequence as consumed inside cross_validate
  for (int t = 0; t < 3; ++t) {
    auto fold = make_folds(4, 2, replay);
    for (int g = 0; g < 2; ++g) {
      std::vector<int> valid;
      for (int i = 0; i < 4; ++i)
        if (fold[i] == g) valid.push_back(i);
      const double sv = std::sqrt(4.0 / valid.size());
      Eigen::MatrixXd Av(valid.size(), 2);
      Eigen::VectorXd yv(valid.size());
      for (std::size_t i = 0; i < valid.size(); ++i) {
        Av.row(i) = sv * A.row(valid[i]);
        yv(i) = sv * y(valid[i]);
      }
      for (std::size_t p = 0; p < spec.grid.size(); ++p) {
        Eigen::VectorXd x(2);
        x << spec.grid[p], -spec.grid[p];
        double eps = (Av * x - yv).squaredNorm();
        CAPTURE(t);
        CAPTURE(g);
        CAPTURE(p);
        CHECK(result.table[t][g][p] == eps);  // identical arithmetic path
      }
    }
  }

  // argmin of the mean matches a direct recomputation
  int best = 0;
  std::vector<double> means(spec.grid.size(), 0.0);
  for (int t = 0; t < 3; ++t)
    for (int g = 0; g < 2; ++g)
      for (std::size_t p = 0; p < spec.grid.size(); ++p)
        means[p] += result.table[t][g][p] / 6.0;
  for (std::size_t p = 1; p < means.size(); ++p)
    if (means[p] < means[best]) best = static_cast<int>(p);
  CHECK(result.parameter_index == best);
  CHECK(result.parameter == spec.grid[best]);
}

TEST_CASE("single-point grid is returned unchanged") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  CvSpec spec;
  spec.folds = 2;
  spec.repetitions = 1;
  spec.grid = {3.5};
  Rng rng(5);
  CvResult r = cross_validate(
      A, y, spec,
      [](const Eigen::MatrixXd&, const Eigen::VectorXd&, double) {
        return Eigen::VectorXd(Eigen::VectorXd::Zero(2));
      },
      rng);
  CHECK(r.parameter == 3.5);
  CHECK(r.parameter_index == 0);
}

TEST_CASE("ties break toward the smallest grid index") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 2);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(4);
  CvSpec spec;
  spec.folds = 2;
  spec.repetitions = 2;
  spec.grid = {1.0, 2.0, 3.0};
  Rng rng(5);
  // constant decoder: identical error for every parameter
  CvResult r = cross_validate(
      A, y, spec,
      [](const Eigen::MatrixXd&, const Eigen::VectorXd&, double) {
        return Eigen::VectorXd(Eigen::VectorXd::Zero(2));
      },
      rng);
  CHECK(r.parameter_index == 0);
}

TEST_CASE("l1 validation metric is honored") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 1);
  Eigen::VectorXd y(2);
  y << 3.0, -3.0;
  CvSpec spec;
  spec.folds = 2;
  spec.repetitions = 1;
  spec.grid = {1.0};
  spec.metric = CvMetric::L1;
  Rng rng(9);
  CvResult r = cross_validate(
      A, y, spec,
      [](const Eigen::MatrixXd&, const Eigen::VectorXd&, double) {
        return Eigen::VectorXd(Eigen::VectorXd::Zero(1));
      },
      rng);
  // one validation row per fold, rescaled by sqrt(2): |r| = sqrt(2)*3
  for (int g = 0; g < 2; ++g)
    CHECK(r.table[0][g][0] == doctest::Approx(std::sqrt(2.0) * 3.0));
}

TEST_CASE("decoder failures inside CV degrade to the zero vector") {
  // Overdetermined inconsistent rows make tiny-eta WQCBP infeasible on the
  // training block; the wrapper must substitute x = 0 rather than abort.
  IndexSet Lambda = hyperbolic_cross(1, 2);
  std::vector<SamplePoint> points = {{0.1}, {0.4}, {-0.3}, {0.8}, {-0.6}, {0.2}};
  std::vector<double> values = {5.0, -3.0, 2.0, 1.0, -4.0, 0.5};  // not in span
  DesignProblem problem = assemble(BasisKind::Legendre, Lambda, points, values);
  CvSpec spec;
  spec.folds = 2;
  spec.repetitions = 1;
  spec.grid = {1e-9, 1e3};
  Rng rng(3);
  CvResult r;
  CHECK_NOTHROW(r = cross_validate(problem, spec, DecoderFamily::WQCBP, rng));
  REQUIRE(r.mean_errors.size() == 2);
  CHECK(std::isfinite(r.mean_errors[0]));
  CHECK(std::isfinite(r.mean_errors[1]));
}

}  // TEST_SUITE
