#ifndef WL1APPROX_HARNESS_HPP_
#define WL1APPROX_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wl1approx/metrics.hpp"
#include "wl1approx/tuning.hpp"

namespace wl1 {

// exp(-(1/d) sum_l cos(t_l))
double synthetic_f(const SamplePoint& t);

// Damped harmonic oscillator u'' + gamma u' + k u = g cos(omega x),
// u(0) = u0, u'(0) = v0.
struct OscillatorParams {
  double gamma = 0.1;
  double k = 0.035;
  double g = 0.1;
  double omega = 1.0;
  double u0 = 0.5;
  double v0 = 0.0;
};

// Parameter map from t in [-1,1]^6. Note: the k coefficient printed here
// allows non-underdamped combinations near t_2 = -1; oscillator_solution
// rejects those.
OscillatorParams oscillator_params(const SamplePoint& t);

// Closed-form underdamped solution at time x. Throws std::domain_error when
// gamma^2 >= 4k.
double oscillator_solution(const OscillatorParams& p, double x);

// Adaptive RK45 integration of the same ODE (consistency oracle).
double oscillator_integrate(const OscillatorParams& p, double x, double tol = 1e-10);

// Quantity of interest u_t(20).
double oscillator_qoi(const SamplePoint& t);

struct NoiseModel {
  enum class Type { None, BoundedUniform, BoundedGaussian, SparseCorruption };
  Type type = Type::None;
  double beta = 0.0;       // exact l2 norm for the bounded variants
  double fraction = 0.0;   // corrupted fraction, in (0,1]
  double amplitude = 0.0;  // corruption entries ~ U(-amplitude, amplitude)

  static NoiseModel none();
  static NoiseModel bounded_uniform(double beta);
  static NoiseModel bounded_gaussian(double beta);
  static NoiseModel sparse_corruption(double fraction, double amplitude);

  std::string label() const;
};

// Returns (y + e, e). Bounded variants are normalized so ||e||_2 = beta;
// sparse corruption hits exactly round(fraction*m) positions, drawn without
// replacement.
std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_noise(const Eigen::VectorXd& y,
                                                        const NoiseModel& model,
                                                        Rng& rng);

// Box-plot statistics; quantiles by linear interpolation between order
// statistics, whiskers at the most extreme data within 1.5 IQR of the box.
struct BoxStats {
  double median = 0.0, q1 = 0.0, q3 = 0.0;
  double lo_whisker = 0.0, hi_whisker = 0.0;
  double mean = 0.0;
  std::vector<double> outliers;
};
BoxStats box_stats(std::vector<double> values);
double median_of(std::vector<double> values);

struct DecoderSweep {
  DecoderFamily family = DecoderFamily::WQCBP;
  std::vector<double> grid;
};

struct ExperimentConfig {
  std::string function_id = "synthetic";  // synthetic | oscillator | sparse-poly
  int d = 8;
  int s = 5;
  BasisKind kind = BasisKind::Chebyshev;
  int sparse_support = 5;  // support size for sparse-poly

  int m = 0;                  // 0 = recommended_m(s, kind, n)
  std::vector<int> m_grid;    // sweep-m; empty = ceil(C s^gamma), C = 2:0.5:4
  int trials = 25;
  std::uint64_t seed = 1234;
  int reference_oversampling = 20;

  std::vector<NoiseModel> noise_levels{NoiseModel::none()};
  std::vector<DecoderSweep> decoders;
  std::vector<int> combinations{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};  // sweep-m

  int cv_folds = 5;
  int cv_repetitions = 3;
  CvMetric cv_metric = CvMetric::SquaredL2;

  SolverOptions solver;
  std::string csv_path;
  std::string json_path;

  void validate() const;
};

// One line of an experiment result table.
struct TrialResult {
  int trial = 0;
  std::string decoder;
  double parameter = 0.0;
  int m = 0;
  double beta = 0.0;  // noise magnitude (beta, or amplitude for corruption)
  double l2_error = 0.0;
  double linf_surrogate = 0.0;
  int iterations = 0;
  double seconds = 0.0;
  bool failed = false;
  std::string message;
};

struct SweepResult {
  std::vector<TrialResult> rows;
  // key: noise label | decoder | parameter (or combination id for sweep-m)
  std::map<std::string, BoxStats> cells;

  std::string to_csv() const;
  std::string summary_json() const;
  void write_outputs(const ExperimentConfig& config) const;
};

// Per-trial: fresh samples and noise, one shared DesignProblem across the
// whole parameter grid; box statistics per (noise level, decoder, parameter).
SweepResult run_parameter_sweep(const ExperimentConfig& config);

// The ten decoder/parameter combinations over an m-grid, mean error per cell.
SweepResult run_m_sweep(const ExperimentConfig& config);

// Sectioned key=value config file: [function], [sampling], [noise],
// [decoders], [solver], [output].
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::string combination_label(int id);

}  // namespace wl1

#endif  // WL1APPROX_HARNESS_HPP_
