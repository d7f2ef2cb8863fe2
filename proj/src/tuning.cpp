#include "wl1approx/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wl1 {

double recommend(DecoderFamily family, int s, BasisKind kind,
                 const RecipeInputs& inputs) {
  if (s < 1) throw std::invalid_argument("recommend: s >= 1");
  const double sqrt_ks = std::pow(double(s), 0.5 * basis_gamma(kind));
  switch (family) {
    case DecoderFamily::WQCBP:
      if (!inputs.noise_estimate)
        throw std::invalid_argument("recommend: WQCBP needs a noise estimate");
      return *inputs.noise_estimate;
    case DecoderFamily::WLASSO:
      if (!inputs.noise_estimate)
        throw std::invalid_argument("recommend: WLASSO needs a noise estimate");
      if (*inputs.noise_estimate == 0.0)
        throw std::invalid_argument("recommend: WLASSO noise estimate must be nonzero");
      return sqrt_ks / *inputs.noise_estimate;
    case DecoderFamily::WSRLASSO:
      return inputs.constant * sqrt_ks;
    case DecoderFamily::WLADLASSO: {
      if (!inputs.corruption_count && !inputs.m && !inputs.n) return 1.0;  // practical
      if (!(inputs.corruption_count && inputs.m && inputs.n))
        throw std::invalid_argument("recommend: WLAD-LASSO theory form needs k, m, n");
      const double k = *inputs.corruption_count, m = *inputs.m, n = *inputs.n;
      if (k <= 0 || m <= 0 || n < 2)
        throw std::invalid_argument("recommend: WLAD-LASSO inputs out of range");
      return inputs.constant / std::sqrt((k / m) * std::log(n));
    }
  }
  throw std::logic_error("recommend: unreachable");
}

int recommended_m(int s, BasisKind kind, int n) {
  if (s < 1 || n < 2) throw std::invalid_argument("recommended_m: s >= 1, n >= 2");
  return static_cast<int>(std::ceil(std::pow(double(s), basis_gamma(kind)) * std::log(double(n))));
}

double theta(double K, double lambda, double k) {
  if (!(K > 0.0 && lambda > 0.0 && k > 0.0))
    throw std::invalid_argument("theta: inputs must be positive");
  return std::sqrt(K + lambda * lambda * k) /
         std::min(std::sqrt(K), lambda * std::sqrt(k));
}

double theta_minimizer(double K, double k) {
  if (!(K > 0.0 && k > 0.0)) throw std::invalid_argument("theta_minimizer: inputs positive");
  return std::sqrt(K / k);
}

double polylog_L(int s, int d, double epsilon) {
  if (s < 2) throw std::invalid_argument("polylog_L: s >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("polylog_L: 0 < eps < 1");
  const double ls = std::log(double(s));
  return ls * ls * std::min(ls + d, std::log(2.0 * d) * ls) +
         ls * std::log(double(s) / epsilon);
}

std::vector<double> log_grid(double lo_exp, double step, double hi_exp) {
  if (!(step > 0.0)) throw std::invalid_argument("log_grid: step must be > 0");
  std::vector<double> out;
  for (double e = lo_exp; e <= hi_exp + 1e-12 * std::max(1.0, std::abs(hi_exp)); e += step)
    out.push_back(std::pow(10.0, e));
  return out;
}

std::vector<double> parse_log_grid(const std::string& spec) {
  std::istringstream is(spec);
  double lo, step, hi;
  char c1, c2;
  if (!(is >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':')
    throw std::invalid_argument("parse_log_grid: expected \"a:step:b\", got " + spec);
  return log_grid(lo, step, hi);
}

std::vector<int> make_folds(int m, int G, Rng& rng) {
  if (G < 2 || G > m) throw std::invalid_argument("make_folds: need 2 <= G <= m");
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  std::vector<int> fold(m);
  for (int r = 0; r < m; ++r) fold[perm[r]] = r % G;
  return fold;
}

CvResult cross_validate(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                        const CvSpec& spec, const CvDecoder& decoder, Rng& rng) {
  const int m = static_cast<int>(A.rows());
  if (spec.grid.empty()) throw std::invalid_argument("cross_validate: empty grid");
  if (spec.folds < 2 || spec.folds > m)
    throw std::invalid_argument("cross_validate: need 2 <= G <= m");
  if (spec.repetitions < 1) throw std::invalid_argument("cross_validate: T >= 1");

  const int G = spec.folds, T = spec.repetitions;
  const int P = static_cast<int>(spec.grid.size());
  CvResult result;
  result.table.assign(T, std::vector<std::vector<double>>(G, std::vector<double>(P, 0.0)));

  for (int t = 0; t < T; ++t) {
    std::vector<int> fold = make_folds(m, G, rng);
    for (int g = 0; g < G; ++g) {
      std::vector<int> valid, train;
      for (int i = 0; i < m; ++i) (fold[i] == g ? valid : train).push_back(i);
      const double sv = std::sqrt(double(m) / valid.size());
      const double sr = std::sqrt(double(m) / train.size());
      Eigen::MatrixXd Av(valid.size(), A.cols()), Ar(train.size(), A.cols());
      Eigen::VectorXd yv(valid.size()), yr(train.size());
      for (std::size_t i = 0; i < valid.size(); ++i) {
        Av.row(i) = sv * A.row(valid[i]);
        yv(i) = sv * y(valid[i]);
      }
      for (std::size_t i = 0; i < train.size(); ++i) {
        Ar.row(i) = sr * A.row(train[i]);
        yr(i) = sr * y(train[i]);
      }
      for (int p = 0; p < P; ++p) {
        Eigen::VectorXd xhat = decoder(Ar, yr, spec.grid[p]);
        Eigen::VectorXd r = Av * xhat - yv;
        result.table[t][g][p] =
            spec.metric == CvMetric::SquaredL2 ? r.squaredNorm() : r.lpNorm<1>();
      }
    }
  }

  result.mean_errors.assign(P, 0.0);
  for (int t = 0; t < T; ++t)
    for (int g = 0; g < G; ++g)
      for (int p = 0; p < P; ++p) result.mean_errors[p] += result.table[t][g][p];
  for (double& e : result.mean_errors) e /= double(T) * double(G);

  int best = 0;
  for (int p = 1; p < P; ++p)
    if (result.mean_errors[p] < result.mean_errors[best]) best = p;
  result.parameter_index = best;
  result.parameter = spec.grid[best];
  return result;
}

CvResult cross_validate(const DesignProblem& problem, const CvSpec& spec,
                        DecoderFamily family, Rng& rng, const SolverOptions& opts) {
  CvDecoder decoder = [&](const Eigen::MatrixXd& Ar, const Eigen::VectorXd& yr,
                          double p) {
    DecoderKind kind;
    switch (family) {
      case DecoderFamily::WQCBP: kind = DecoderKind::wqcbp(p); break;
      case DecoderFamily::WLASSO: kind = DecoderKind::wlasso(p); break;
      case DecoderFamily::WSRLASSO: kind = DecoderKind::wsr_lasso(p); break;
      case DecoderFamily::WLADLASSO: kind = DecoderKind::wlad_lasso(p); break;
    }
    try {
      return solve(Ar, yr, problem.weights, kind, opts).x;
    } catch (const InfeasibleError&) {
      return Eigen::VectorXd(Eigen::VectorXd::Zero(Ar.cols()));
    }
  };
  return cross_validate(problem.A, problem.y, spec, decoder, rng);
}

}  // namespace wl1
