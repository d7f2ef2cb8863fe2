#ifndef WL1APPROX_SOLVERS_HPP_
#define WL1APPROX_SOLVERS_HPP_

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "wl1approx/basis.hpp"

namespace wl1 {

enum class DecoderFamily { WQCBP, WLASSO, WSRLASSO, WLADLASSO };

std::string decoder_name(DecoderFamily family);
DecoderFamily decoder_from_name(const std::string& name);

// One of:
//   WQCBP(eta):      min ||z||_{1,u} s.t. ||Az - y||_2 <= eta
//   WLASSO(lambda):  min ||z||_{1,u} + lambda ||Az - y||_2^2
//   WSRLASSO(lambda):min ||z||_{1,u} + lambda ||Az - y||_2
//   WLADLASSO(lambda, v): min ||z||_{1,u} + lambda sum_i v_i |(Az - y)_i|
struct DecoderKind {
  DecoderFamily family = DecoderFamily::WQCBP;
  double parameter = 0.0;        // eta or lambda
  Eigen::VectorXd fidelity_weights;  // v for WLADLASSO; empty = all ones

  static DecoderKind wqcbp(double eta);
  static DecoderKind wlasso(double lambda);
  static DecoderKind wsr_lasso(double lambda);
  static DecoderKind wlad_lasso(double lambda,
                                Eigen::VectorXd v = Eigen::VectorXd());
};

struct SolverOptions {
  int max_iterations = 50000;
  double tolerance = 1e-9;            // relative change of the primal iterate
  double feasibility_tolerance = 1e-8;  // absolute, on ||Az-y||_2 - eta (WQCBP)
  double safety_factor = 0.99;        // step = safety / ||A||
  // Optional per-iteration trace sink: (iteration, objective, residual norm, step).
  std::function<void(int, double, double, double)> trace;
  int trace_every = 100;
};

struct DecoderSolution {
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::VectorXd residual;  // A x - y
  int iterations = 0;
  bool converged = false;
  // Duality-gap estimate from a feasibility-scaled dual point; NaN for WQCBP.
  double duality_gap = std::numeric_limits<double>::quiet_NaN();
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double weighted_l1_norm(const Eigen::VectorXd& z, const Eigen::VectorXd& u);

// Componentwise soft threshold sign(z_j) max(|z_j| - step u_j, 0).
Eigen::VectorXd prox_weighted_l1(const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& u, double step);

// Largest singular value by power iteration on A^T A, relative accuracy 1e-6.
double operator_norm(const Eigen::MatrixXd& A);

double decoder_objective(const DecoderKind& kind, const Eigen::MatrixXd& A,
                         const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& z);

// Chambolle-Pock primal-dual iteration shared by all four decoders; the
// decoders differ only in the dual prox of the data-fidelity term.
DecoderSolution solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& u, const DecoderKind& kind,
                      const SolverOptions& opts = SolverOptions());

DecoderSolution solve(const DesignProblem& problem, const DecoderKind& kind,
                      const SolverOptions& opts = SolverOptions());

}  // namespace wl1

#endif  // WL1APPROX_SOLVERS_HPP_
