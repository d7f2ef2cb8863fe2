#include "wl1approx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wl1 {

std::string ReferenceSolution::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific;
  for (int j = 0; j < index_set.size(); ++j) {
    for (int l = 0; l < index_set.dimension(); ++l) os << index_set[j][l] << ' ';
    os << coefficients(j) << '\n';
  }
  return os.str();
}

ReferenceSolution ReferenceSolution::from_text(const std::string& text, int dimension) {
  std::vector<MultiIndex> indices;
  std::vector<double> coeffs;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    MultiIndex i(dimension);
    for (int l = 0; l < dimension; ++l)
      if (!(ls >> i[l])) throw std::invalid_argument("ReferenceSolution: bad index line");
    double c;
    if (!(ls >> c)) throw std::invalid_argument("ReferenceSolution: missing coefficient");
    indices.push_back(std::move(i));
    coeffs.push_back(c);
  }
  ReferenceSolution ref;
  ref.index_set = IndexSet(dimension, std::move(indices));
  ref.coefficients = Eigen::Map<Eigen::VectorXd>(coeffs.data(), coeffs.size());
  return ref;
}

ReferenceSolution least_squares_reference(const FunctionEvaluator& f,
                                          const IndexSet& index_set,
                                          BasisKind kind, int oversampling,
                                          Rng& rng) {
  if (oversampling < 1) throw std::invalid_argument("least_squares_reference: oversampling >= 1");
  const int n = index_set.size();
  const int m = oversampling * n;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto points = sample_measure(kind, index_set.dimension(), m, rng);
    std::vector<double> values(m);
    for (int i = 0; i < m; ++i) values[i] = f(points[i]);
    DesignProblem problem = assemble(kind, index_set, points, values);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(problem.A);
    if (qr.rank() < n) continue;  // fresh samples on retry
    ReferenceSolution ref;
    ref.index_set = index_set;
    ref.coefficients = qr.solve(problem.y);
    ref.oversampling = oversampling;
    ref.residual_norm = (problem.A * ref.coefficients - problem.y).norm();
    return ref;
  }
  throw std::runtime_error("least_squares_reference: rank-deficient design matrix");
}

double l2_error(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_ref) {
  if (x_hat.size() != x_ref.size())
    throw std::invalid_argument("l2_error: index set mismatch");
  return (x_hat - x_ref).norm();
}

double linf_surrogate(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_ref,
                      const Eigen::VectorXd& u) {
  if (x_hat.size() != x_ref.size() || x_hat.size() != u.size())
    throw std::invalid_argument("linf_surrogate: index set mismatch");
  return weighted_l1_norm(x_hat - x_ref, u);
}

QDiagnostic tail_Q(const DesignProblem& problem) {
  const int m = problem.m(), n = problem.n();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(std::sqrt(double(m) / n) *
                                        problem.A.transpose());
  const auto& sv = svd.singularValues();
  // m-th singular value (decreasing) of the n x m adjoint.
  double sigma_m = sv.size() >= m ? sv(m - 1) : 0.0;
  QDiagnostic q;
  double lambda_u = weighted_cardinality(problem.index_set, problem.kind);
  if (sigma_m <= 1e-14 * sv(0)) {
    q.rank_deficient = true;
    q.value = std::numeric_limits<double>::infinity();
    return q;
  }
  q.value = std::sqrt(lambda_u / n) / sigma_m;
  return q;
}

double tail_term(const DesignProblem& problem, const Eigen::VectorXd& e,
                 double eta, const SolverOptions& opts) {
  if (e.size() != problem.m()) throw std::invalid_argument("tail_term: e size mismatch");
  const double s = static_cast<double>(problem.index_set.max_order());
  const double scale = std::pow(s, -0.5 * basis_gamma(problem.kind));
  if (eta >= e.norm()) return 0.0;  // zero vector is feasible
  DecoderSolution sol = solve(problem.A, e, problem.weights, DecoderKind::wqcbp(eta), opts);
  return scale * weighted_l1_norm(sol.x, problem.weights);
}

double best_k_term_l1(const Eigen::VectorXd& e, int k) {
  const int m = static_cast<int>(e.size());
  if (k < 0 || k > m) throw std::invalid_argument("best_k_term_l1: need 0 <= k <= m");
  std::vector<double> mags(m);
  for (int i = 0; i < m; ++i) mags[i] = std::abs(e(i));
  std::sort(mags.begin(), mags.end());
  double total = 0.0;
  for (int i = 0; i < m - k; ++i) total += mags[i];
  return total;
}

}  // namespace wl1
