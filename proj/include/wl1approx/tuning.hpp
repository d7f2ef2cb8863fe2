#ifndef WL1APPROX_TUNING_HPP_
#define WL1APPROX_TUNING_HPP_

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "wl1approx/solvers.hpp"

namespace wl1 {

// Inputs for the theory-driven parameter recipes. The hidden constant in
// the WSR-LASSO and WLAD-LASSO recipes defaults to the empirically
// justified 3 and can be overridden.
struct RecipeInputs {
  std::optional<double> noise_estimate;  // ||e||_2
  std::optional<int> corruption_count;   // k
  std::optional<int> m;
  std::optional<int> n;
  double constant = 3.0;
};

// Recommended tuning parameter:
//   WQCBP:     eta = noise_estimate
//   WLASSO:    lambda = sqrt(s^gamma) / noise_estimate
//   WSR-LASSO: lambda = c sqrt(s^gamma)
//   WLAD-LASSO: lambda = c / sqrt((k/m) ln n) when k, m, n given,
//               otherwise the practical choice lambda = 1.
// Uses the s^gamma surrogate for K(s).
double recommend(DecoderFamily family, int s, BasisKind kind,
                 const RecipeInputs& inputs = RecipeInputs());

// ceil(s^gamma ln n) samples.
int recommended_m(int s, BasisKind kind, int n);

// Theta = sqrt(K + lambda^2 k) / min(sqrt(K), lambda sqrt(k)).
double theta(double K, double lambda, double k);
// lambda* = sqrt(K/k), the minimizer of Theta (value sqrt(2)).
double theta_minimizer(double K, double k);

// L(s, eps) = ln^2(s) min(ln(s) + d, ln(2d) ln(s)) + ln(s) ln(s/eps).
double polylog_L(int s, int d, double epsilon);

// Parameter grids in the geometric notation "a:step:b": base-10 exponents,
// e.g. "-2:0.5:2" -> 10^-2, 10^-1.5, ..., 10^2.
std::vector<double> parse_log_grid(const std::string& spec);
std::vector<double> log_grid(double lo_exp, double step, double hi_exp);

enum class CvMetric { SquaredL2, L1 };

struct CvSpec {
  int folds = 5;         // G
  int repetitions = 3;   // T
  std::vector<double> grid;  // P, ordered
  CvMetric metric = CvMetric::SquaredL2;
};

// Decoder callback: x_hat = decoder(A_r, y_r, p).
using CvDecoder =
    std::function<Eigen::VectorXd(const Eigen::MatrixXd&, const Eigen::VectorXd&, double)>;

// Random partition of [m] into G folds with sizes floor(m/G) or +1.
// Returns fold id per row index.
std::vector<int> make_folds(int m, int G, Rng& rng);

struct CvResult {
  double parameter = 0.0;
  int parameter_index = 0;
  // mean validation error per grid parameter, accumulated in (t, g, p) order
  std::vector<double> mean_errors;
  // raw table eps(t, g, p)
  std::vector<std::vector<std::vector<double>>> table;
};

// K-fold cross validation: T repetitions of a G-fold split, training and
// validation blocks rescaled by sqrt(m/(m-|I_g|)) and sqrt(m/|I_g|), with
// the squared l2 validation residual by default. Ties broken toward the
// smallest grid index.
CvResult cross_validate(const Eigen::MatrixXd& A, const Eigen::VectorXd& y,
                        const CvSpec& spec, const CvDecoder& decoder, Rng& rng);

CvResult cross_validate(const DesignProblem& problem, const CvSpec& spec,
                        DecoderFamily family, Rng& rng,
                        const SolverOptions& opts = SolverOptions());

}  // namespace wl1

#endif  // WL1APPROX_TUNING_HPP_
