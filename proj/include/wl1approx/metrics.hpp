#ifndef WL1APPROX_METRICS_HPP_
#define WL1APPROX_METRICS_HPP_

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "wl1approx/basis.hpp"
#include "wl1approx/solvers.hpp"

namespace wl1 {

using FunctionEvaluator = std::function<double(const SamplePoint&)>;

// High-fidelity least-squares fit on oversampling * n fresh samples.
struct ReferenceSolution {
  IndexSet index_set;
  Eigen::VectorXd coefficients;
  int oversampling = 0;
  double residual_norm = 0.0;

  // Two-column text: "i_1 ... i_d  coefficient" per line.
  std::string to_text() const;
  static ReferenceSolution from_text(const std::string& text, int dimension);
};

ReferenceSolution least_squares_reference(const FunctionEvaluator& f,
                                          const IndexSet& index_set,
                                          BasisKind kind, int oversampling,
                                          Rng& rng);

// Coefficient-space l2 distance (the in-span L2_nu error).
double l2_error(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_ref);

// Weighted l1 distance, an upper bound on the in-span uniform error.
double linf_surrogate(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& x_ref,
                      const Eigen::VectorXd& u);

struct QDiagnostic {
  double value = 0.0;
  bool rank_deficient = false;  // sigma_m = 0; value is +inf
};

// Q = sqrt(|Lambda|_u / n) / sigma_m(sqrt(m/n) A^T), dense SVD.
QDiagnostic tail_Q(const DesignProblem& problem);

// T = s^(-gamma/2) min ||z||_{1,u} s.t. ||Az - e||_2 <= eta, via the WQCBP
// engine; s is taken as the max hyperbolic-cross order of the index set.
double tail_term(const DesignProblem& problem, const Eigen::VectorXd& e,
                 double eta, const SolverOptions& opts = SolverOptions());

// sigma_k(e)_1: sum of the m-k smallest magnitudes.
double best_k_term_l1(const Eigen::VectorXd& e, int k);

}  // namespace wl1

#endif  // WL1APPROX_METRICS_HPP_
