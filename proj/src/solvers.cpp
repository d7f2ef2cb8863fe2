#include "wl1approx/solvers.hpp"

#include <cmath>

namespace wl1 {

std::string decoder_name(DecoderFamily family) {
  switch (family) {
    case DecoderFamily::WQCBP: return "wqcbp";
    case DecoderFamily::WLASSO: return "wlasso";
    case DecoderFamily::WSRLASSO: return "wsr-lasso";
    case DecoderFamily::WLADLASSO: return "wlad-lasso";
  }
  return "?";
}

DecoderFamily decoder_from_name(const std::string& name) {
  if (name == "wqcbp" || name == "wbp") return DecoderFamily::WQCBP;
  if (name == "wlasso") return DecoderFamily::WLASSO;
  if (name == "wsr-lasso" || name == "wsrlasso") return DecoderFamily::WSRLASSO;
  if (name == "wlad-lasso" || name == "wladlasso") return DecoderFamily::WLADLASSO;
  throw std::invalid_argument("unknown decoder: " + name);
}

DecoderKind DecoderKind::wqcbp(double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("WQCBP: eta must be >= 0");
  return {DecoderFamily::WQCBP, eta, {}};
}
DecoderKind DecoderKind::wlasso(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("WLASSO: lambda must be > 0");
  return {DecoderFamily::WLASSO, lambda, {}};
}
DecoderKind DecoderKind::wsr_lasso(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("WSR-LASSO: lambda must be > 0");
  return {DecoderFamily::WSRLASSO, lambda, {}};
}
DecoderKind DecoderKind::wlad_lasso(double lambda, Eigen::VectorXd v) {
  if (!(lambda > 0.0)) throw std::invalid_argument("WLAD-LASSO: lambda must be > 0");
  if (v.size() > 0 && v.minCoeff() < 1.0)
    throw std::invalid_argument("WLAD-LASSO: fidelity weights must satisfy v_i >= 1");
  return {DecoderFamily::WLADLASSO, lambda, std::move(v)};
}

double weighted_l1_norm(const Eigen::VectorXd& z, const Eigen::VectorXd& u) {
  if (z.size() != u.size()) throw std::invalid_argument("weighted_l1_norm: size mismatch");
  return u.cwiseProduct(z.cwiseAbs()).sum();
}

Eigen::VectorXd prox_weighted_l1(const Eigen::VectorXd& z,
                                 const Eigen::VectorXd& u, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("prox_weighted_l1: step must be > 0");
  Eigen::VectorXd out(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    double mag = std::abs(z(j)) - step * u(j);
    out(j) = mag > 0.0 ? (z(j) > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

double operator_norm(const Eigen::MatrixXd& A) {
  if (!A.allFinite()) throw std::invalid_argument("operator_norm: non-finite entries");
  const Eigen::Index n = A.cols();
  if (n == 0 || A.rows() == 0) return 0.0;
  Eigen::VectorXd v(n);
  for (Eigen::Index j = 0; j < n; ++j) v(j) = 1.0 + 1e-3 * double(j % 7);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 20000; ++it) {
    Eigen::VectorXd w = A.transpose() * (A * v);
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    double next = std::sqrt(norm);
    w /= norm;
    bool done = std::abs(next - sigma) <= 1e-7 * std::max(next, 1e-300) && it > 2;
    sigma = next;
    v = w;
    if (done) break;
  }
  return sigma;
}

double decoder_objective(const DecoderKind& kind, const Eigen::MatrixXd& A,
                         const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                         const Eigen::VectorXd& z) {
  const double l1 = weighted_l1_norm(z, u);
  const Eigen::VectorXd r = A * z - y;
  switch (kind.family) {
    case DecoderFamily::WQCBP:
      return l1;
    case DecoderFamily::WLASSO:
      return l1 + kind.parameter * r.squaredNorm();
    case DecoderFamily::WSRLASSO:
      return l1 + kind.parameter * r.norm();
    case DecoderFamily::WLADLASSO: {
      if (kind.fidelity_weights.size() == 0) return l1 + kind.parameter * r.lpNorm<1>();
      return l1 + kind.parameter * kind.fidelity_weights.cwiseProduct(r.cwiseAbs()).sum();
    }
  }
  return l1;
}

namespace {

// prox of sigma F* where F(r) is the data-fidelity term as a function of Az.
void dual_prox(const DecoderKind& kind, const Eigen::VectorXd& y, double sigma,
               Eigen::VectorXd& w) {
  w -= sigma * y;
  switch (kind.family) {
    case DecoderFamily::WQCBP: {
      const double eta = kind.parameter;
      if (eta > 0.0) {
        double norm = w.norm();
        double scale = norm > 0.0 ? std::max(0.0, 1.0 - sigma * eta / norm) : 0.0;
        w *= scale;
      }
      break;
    }
    case DecoderFamily::WLASSO:
      w /= 1.0 + sigma / (2.0 * kind.parameter);
      break;
    case DecoderFamily::WSRLASSO: {
      double norm = w.norm();
      if (norm > kind.parameter) w *= kind.parameter / norm;
      break;
    }
    case DecoderFamily::WLADLASSO: {
      const double lambda = kind.parameter;
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        double cap = lambda * (kind.fidelity_weights.size() ? kind.fidelity_weights(i) : 1.0);
        w(i) = std::clamp(w(i), -cap, cap);
      }
      break;
    }
  }
}

// Dual objective at a feasibility-scaled copy of w; NaN when unavailable.
double dual_value(const DecoderKind& kind, const Eigen::MatrixXd& A,
                  const Eigen::VectorXd& y, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& w) {
  if (kind.family == DecoderFamily::WQCBP)
    return std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd wt = w;
  double scale = 1.0;
  Eigen::VectorXd atw = A.transpose() * wt;
  for (Eigen::Index j = 0; j < atw.size(); ++j)
    if (u(j) > 0.0) scale = std::max(scale, std::abs(atw(j)) / u(j));
  if (kind.family == DecoderFamily::WSRLASSO) {
    double norm = wt.norm();
    if (norm > 0.0) scale = std::max(scale, norm / kind.parameter);
  } else if (kind.family == DecoderFamily::WLADLASSO) {
    for (Eigen::Index i = 0; i < wt.size(); ++i) {
      double cap = kind.parameter * (kind.fidelity_weights.size() ? kind.fidelity_weights(i) : 1.0);
      if (cap > 0.0) scale = std::max(scale, std::abs(wt(i)) / cap);
    }
  }
  wt /= scale;
  double val = -wt.dot(y);
  if (kind.family == DecoderFamily::WLASSO)
    val -= wt.squaredNorm() / (4.0 * kind.parameter);
  return val;
}

}  // namespace

DecoderSolution solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& u, const DecoderKind& kind,
                      const SolverOptions& opts) {
  if (!A.allFinite() || !y.allFinite() || !u.allFinite())
    throw std::invalid_argument("solve: non-finite inputs");
  if (A.rows() != y.size() || A.cols() != u.size())
    throw std::invalid_argument("solve: dimension mismatch");
  if (opts.max_iterations < 1 || !(opts.tolerance > 0.0))
    throw std::invalid_argument("solve: invalid options");
  if (kind.family == DecoderFamily::WLADLASSO && kind.fidelity_weights.size() > 0 &&
      kind.fidelity_weights.size() != y.size())
    throw std::invalid_argument("solve: fidelity weight size mismatch");

  const Eigen::Index n = A.cols();
  const double norm_a = operator_norm(A);
  const double step = norm_a > 0.0 ? opts.safety_factor / norm_a : 1.0;
  const double tau = step, sigma = step;
  const bool constrained = kind.family == DecoderFamily::WQCBP;
  if (constrained) {
    // Infeasibility is decidable up front: the least-squares residual is the
    // smallest attainable, so a floor above eta can never be iterated away.
    const double floor_norm =
        (A * A.colPivHouseholderQr().solve(y) - y).norm();
    if (floor_norm > kind.parameter + opts.feasibility_tolerance)
      throw InfeasibleError("WQCBP: residual floor " + std::to_string(floor_norm) +
                            " above eta = " + std::to_string(kind.parameter));
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd zbar = z;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(y.size());

  DecoderSolution sol;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    Eigen::VectorXd w_prev = w;
    w += sigma * (A * zbar);
    dual_prox(kind, y, sigma, w);
    Eigen::VectorXd z_next = prox_weighted_l1(z - tau * (A.transpose() * w), u, tau);
    zbar = 2.0 * z_next - z;
    // A fixed point of the primal-dual map is optimal, so stationarity of
    // both iterates is the stopping test; the primal alone can sit still for
    // many iterations while the dual is still accumulating.
    const double primal_change = (z_next - z).norm() / std::max(1.0, z_next.norm());
    const double dual_change = (w - w_prev).norm() / std::max(1.0, w.norm());
    z = z_next;

    if (opts.trace && it % opts.trace_every == 0)
      opts.trace(it, decoder_objective(kind, A, y, u, z), (A * z - y).norm(), step);

    if (primal_change <= opts.tolerance && dual_change <= opts.tolerance) {
      if (constrained &&
          (A * z - y).norm() > kind.parameter + opts.feasibility_tolerance)
        continue;  // stationary to tolerance but not yet feasible: keep going
      sol.converged = true;
      ++it;
      break;
    }
  }

  sol.x = z;
  sol.iterations = it;
  sol.residual = A * z - y;
  sol.objective = decoder_objective(kind, A, y, u, z);
  if (!constrained) {
    double d = dual_value(kind, A, y, u, w);
    sol.duality_gap = sol.objective - d;
  }
  return sol;
}

DecoderSolution solve(const DesignProblem& problem, const DecoderKind& kind,
                      const SolverOptions& opts) {
  return solve(problem.A, problem.y, problem.weights, kind, opts);
}

}  // namespace wl1
