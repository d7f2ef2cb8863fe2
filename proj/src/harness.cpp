#include "wl1approx/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace wl1 {

double synthetic_f(const SamplePoint& t) {
  double acc = 0.0;
  for (double c : t) acc += std::cos(c);
  return std::exp(-acc / double(t.size()));
}

OscillatorParams oscillator_params(const SamplePoint& t) {
  if (t.size() != 6) throw std::invalid_argument("oscillator_params: need 6 coordinates");
  for (double c : t)
    if (c < -1.0 || c > 1.0) throw std::invalid_argument("oscillator_params: t outside [-1,1]^6");
  OscillatorParams p;
  p.gamma = 0.1 + 0.02 * t[0];
  p.k = 0.035 + 0.05 * t[1];
  p.g = 0.1 + 0.02 * t[2];
  p.omega = 1.0 + 0.2 * t[3];
  p.u0 = 0.5 + 0.05 * t[4];
  p.v0 = 0.05 * t[5];
  return p;
}

double oscillator_solution(const OscillatorParams& p, double x) {
  if (p.gamma * p.gamma >= 4.0 * p.k)
    throw std::domain_error("oscillator_solution: not underdamped (gamma^2 >= 4k)");
  const double wd = std::sqrt(p.k - 0.25 * p.gamma * p.gamma);
  // particular solution A cos(omega x) + B sin(omega x)
  double A = 0.0, B = 0.0;
  if (p.g != 0.0) {
    const double dk = p.k - p.omega * p.omega;
    const double denom = dk * dk + p.gamma * p.gamma * p.omega * p.omega;
    A = p.g * dk / denom;
    B = p.g * p.gamma * p.omega / denom;
  }
  const double c1 = p.u0 - A;
  const double c2 = (p.v0 + 0.5 * p.gamma * c1 - B * p.omega) / wd;
  return std::exp(-0.5 * p.gamma * x) * (c1 * std::cos(wd * x) + c2 * std::sin(wd * x)) +
         A * std::cos(p.omega * x) + B * std::sin(p.omega * x);
}

namespace {

// Dormand-Prince 5(4) step for the oscillator state (u, u').
struct Deriv {
  const OscillatorParams& p;
  void operator()(double x, const double y[2], double dy[2]) const {
    dy[0] = y[1];
    dy[1] = p.g * std::cos(p.omega * x) - p.gamma * y[1] - p.k * y[0];
  }
};

}  // namespace

double oscillator_integrate(const OscillatorParams& p, double x_end, double tol) {
  static const double c[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784, 11.0 / 84, 0};
  static const double b4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
  Deriv deriv{p};
  double x = 0.0;
  double y[2] = {p.u0, p.v0};
  double h = std::min(0.1, x_end);
  while (x < x_end) {
    if (x + h > x_end) h = x_end - x;
    double k[7][2];
    for (int stage = 0; stage < 7; ++stage) {
      double ys[2] = {y[0], y[1]};
      for (int j = 0; j < stage; ++j) {
        ys[0] += h * a[stage][j] * k[j][0];
        ys[1] += h * a[stage][j] * k[j][1];
      }
      deriv(x + c[stage] * h, ys, k[stage]);
    }
    double y5[2] = {y[0], y[1]}, y4[2] = {y[0], y[1]};
    for (int stage = 0; stage < 7; ++stage) {
      y5[0] += h * b5[stage] * k[stage][0];
      y5[1] += h * b5[stage] * k[stage][1];
      y4[0] += h * b4[stage] * k[stage][0];
      y4[1] += h * b4[stage] * k[stage][1];
    }
    double err = std::max(std::abs(y5[0] - y4[0]), std::abs(y5[1] - y4[1]));
    double scale = tol * std::max({1.0, std::abs(y5[0]), std::abs(y5[1])});
    if (err <= scale) {
      x += h;
      y[0] = y5[0];
      y[1] = y5[1];
    }
    double factor = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
    h *= std::clamp(factor, 0.2, 2.0);
    if (h < 1e-12) throw std::runtime_error("oscillator_integrate: step underflow");
  }
  return y[0];
}

double oscillator_qoi(const SamplePoint& t) {
  return oscillator_solution(oscillator_params(t), 20.0);
}

NoiseModel NoiseModel::none() { return {}; }
NoiseModel NoiseModel::bounded_uniform(double beta) {
  if (beta < 0.0) throw std::invalid_argument("noise: beta >= 0");
  if (beta == 0.0) return none();
  return {Type::BoundedUniform, beta, 0.0, 0.0};
}
NoiseModel NoiseModel::bounded_gaussian(double beta) {
  if (beta < 0.0) throw std::invalid_argument("noise: beta >= 0");
  if (beta == 0.0) return none();
  return {Type::BoundedGaussian, beta, 0.0, 0.0};
}
NoiseModel NoiseModel::sparse_corruption(double fraction, double amplitude) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("noise: fraction in (0,1]");
  return {Type::SparseCorruption, 0.0, fraction, amplitude};
}

std::string NoiseModel::label() const {
  std::ostringstream os;
  switch (type) {
    case Type::None: return "none";
    case Type::BoundedUniform: os << "uniform:" << beta; break;
    case Type::BoundedGaussian: os << "gaussian:" << beta; break;
    case Type::SparseCorruption: os << "sparse:" << fraction << ":" << amplitude; break;
  }
  return os.str();
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_noise(const Eigen::VectorXd& y,
                                                        const NoiseModel& model,
                                                        Rng& rng) {
  const int m = static_cast<int>(y.size());
  if (m < 1) throw std::invalid_argument("apply_noise: m >= 1");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  switch (model.type) {
    case NoiseModel::Type::None:
      break;
    case NoiseModel::Type::BoundedUniform:
    case NoiseModel::Type::BoundedGaussian: {
      for (int i = 0; i < m; ++i)
        e(i) = model.type == NoiseModel::Type::BoundedUniform ? rng.uniform(-1.0, 1.0)
                                                              : rng.gaussian();
      double norm = e.norm();
      if (norm > 0.0) e *= model.beta / norm;
      break;
    }
    case NoiseModel::Type::SparseCorruption: {
      int k = static_cast<int>(std::lround(model.fraction * m));
      // positions without replacement (partial Fisher-Yates)
      std::vector<int> idx(m);
      std::iota(idx.begin(), idx.end(), 0);
      for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.integer(m - i));
        std::swap(idx[i], idx[j]);
        e(idx[i]) = rng.uniform(-model.amplitude, model.amplitude);
      }
      break;
    }
  }
  return {y + e, e};
}

namespace {

double quantile_linear(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  double pos = p * double(n - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  if (lo >= n - 1) return sorted[n - 1];
  double frac = pos - double(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty");
  std::sort(values.begin(), values.end());
  return quantile_linear(values, 0.5);
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats: empty");
  std::sort(values.begin(), values.end());
  BoxStats stats;
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(values.size());
  stats.median = quantile_linear(values, 0.5);
  stats.q1 = quantile_linear(values, 0.25);
  stats.q3 = quantile_linear(values, 0.75);
  const double iqr = stats.q3 - stats.q1;
  const double lo_fence = stats.q1 - 1.5 * iqr, hi_fence = stats.q3 + 1.5 * iqr;
  stats.lo_whisker = values.back();
  stats.hi_whisker = values.front();
  for (double v : values) {
    if (v >= lo_fence && v <= hi_fence) {
      stats.lo_whisker = std::min(stats.lo_whisker, v);
      stats.hi_whisker = std::max(stats.hi_whisker, v);
    } else {
      stats.outliers.push_back(v);
    }
  }
  return stats;
}

void ExperimentConfig::validate() const {
  if (d < 1 || s < 1) throw std::invalid_argument("config: d, s >= 1");
  if (trials < 1) throw std::invalid_argument("config: trials >= 1");
  if (noise_levels.empty()) throw std::invalid_argument("config: noise levels non-empty");
  if (function_id == "oscillator" && d != 6)
    throw std::invalid_argument("config: oscillator requires d = 6");
  if (function_id == "sparse-poly" && sparse_support > s)
    throw std::invalid_argument("config: sparse_support must be <= s");
}

namespace {

struct ResolvedFunction {
  FunctionEvaluator eval;
  bool coefficients_known = false;
  Eigen::VectorXd x_true;  // on the hyperbolic cross, when known
};

// Random lower set of the given cardinality inside the hyperbolic cross,
// grown by uniformly picking admissible elements.
std::vector<int> random_lower_support(const IndexSet& Lambda, int cardinality, Rng& rng) {
  const int n = Lambda.size();
  std::vector<char> in_set(n, 0);
  std::vector<int> support;
  // position 0 is the origin under the fixed total order
  in_set[0] = 1;
  support.push_back(0);
  while (static_cast<int>(support.size()) < cardinality) {
    std::vector<int> candidates;
    for (int j = 0; j < n; ++j) {
      if (in_set[j]) continue;
      bool ok = true;
      for (int l = 0; l < Lambda.dimension() && ok; ++l) {
        if (Lambda[j][l] == 0) continue;
        MultiIndex p = Lambda[j];
        p[l] -= 1;
        int pp = Lambda.position(p);
        ok = pp >= 0 && in_set[pp];
      }
      if (ok) candidates.push_back(j);
    }
    if (candidates.empty()) throw std::runtime_error("random_lower_support: stuck");
    int pick = candidates[rng.integer(candidates.size())];
    in_set[pick] = 1;
    support.push_back(pick);
  }
  return support;
}

ResolvedFunction resolve_function(const ExperimentConfig& config, const IndexSet& Lambda,
                                  Rng& rng) {
  ResolvedFunction fn;
  if (config.function_id == "synthetic") {
    fn.eval = [](const SamplePoint& t) { return synthetic_f(t); };
  } else if (config.function_id == "oscillator") {
    fn.eval = [](const SamplePoint& t) { return oscillator_qoi(t); };
  } else if (config.function_id == "sparse-poly") {
    auto support = random_lower_support(Lambda, config.sparse_support, rng);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(Lambda.size());
    for (int j : support) {
      double mag = rng.uniform(0.5, 1.5);
      x(j) = rng.uniform01() < 0.5 ? -mag : mag;
    }
    fn.coefficients_known = true;
    fn.x_true = x;
    BasisKind kind = config.kind;
    fn.eval = [x, kind, Lambda](const SamplePoint& t) {
      double v = 0.0;
      for (int j = 0; j < Lambda.size(); ++j)
        if (x(j) != 0.0) v += x(j) * eval_basis(kind, Lambda[j], t);
      return v;
    };
  } else {
    throw std::invalid_argument("unknown function id: " + config.function_id);
  }
  return fn;
}

Eigen::VectorXd reference_coefficients(const ExperimentConfig& config,
                                       const IndexSet& Lambda,
                                       const ResolvedFunction& fn) {
  if (fn.coefficients_known) return fn.x_true;
  Rng rng = Rng::substream(config.seed, 0);  // stream 0 reserved for the reference
  return least_squares_reference(fn.eval, Lambda, config.kind,
                                 config.reference_oversampling, rng)
      .coefficients;
}

DecoderKind make_kind(DecoderFamily family, double p) {
  switch (family) {
    case DecoderFamily::WQCBP: return DecoderKind::wqcbp(p);
    case DecoderFamily::WLASSO: return DecoderKind::wlasso(p);
    case DecoderFamily::WSRLASSO: return DecoderKind::wsr_lasso(p);
    case DecoderFamily::WLADLASSO: return DecoderKind::wlad_lasso(p);
  }
  throw std::logic_error("make_kind: unreachable");
}

double noise_magnitude(const NoiseModel& model) {
  return model.type == NoiseModel::Type::SparseCorruption ? model.amplitude : model.beta;
}

std::string cell_key(const std::string& noise, const std::string& decoder, double p) {
  std::ostringstream os;
  os << noise << '|' << decoder << '|' << p;
  return os.str();
}

}  // namespace

SweepResult run_parameter_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.decoders.empty())
    throw std::invalid_argument("run_parameter_sweep: no decoder grids");
  IndexSet Lambda = hyperbolic_cross(config.d, config.s);
  const int n = Lambda.size();
  const int m = config.m > 0 ? config.m : recommended_m(config.s, config.kind, n);

  Rng fn_rng = Rng::substream(config.seed, 0xf);
  ResolvedFunction fn = resolve_function(config, Lambda, fn_rng);
  Eigen::VectorXd x_ref = reference_coefficients(config, Lambda, fn);

  SweepResult result;
  std::map<std::string, std::vector<double>> cell_errors;

  for (int trial = 0; trial < config.trials; ++trial) {
    Rng rng = Rng::substream(config.seed, trial + 1);
    DesignProblem problem;
    try {
      auto points = sample_measure(config.kind, config.d, m, rng);
      std::vector<double> values(m);
      for (int i = 0; i < m; ++i) values[i] = fn.eval(points[i]);
      problem = assemble(config.kind, Lambda, points, values);
    } catch (const std::exception& ex) {
      TrialResult row;
      row.trial = trial;
      row.decoder = "(sampling)";
      row.m = m;
      row.failed = true;
      row.message = ex.what();
      result.rows.push_back(row);
      continue;
    }

    for (const NoiseModel& model : config.noise_levels) {
      auto [y_noisy, e] = apply_noise(problem.y, model, rng);
      for (const DecoderSweep& sweep : config.decoders) {
        for (double p : sweep.grid) {
          TrialResult row;
          row.trial = trial;
          row.decoder = decoder_name(sweep.family);
          row.parameter = p;
          row.m = m;
          row.beta = noise_magnitude(model);
          auto t0 = std::chrono::steady_clock::now();
          try {
            DecoderSolution sol = solve(problem.A, y_noisy, problem.weights,
                                        make_kind(sweep.family, p), config.solver);
            row.l2_error = l2_error(sol.x, x_ref);
            row.linf_surrogate = linf_surrogate(sol.x, x_ref, problem.weights);
            row.iterations = sol.iterations;
          } catch (const std::exception& ex) {
            row.failed = true;
            row.message = ex.what();
          }
          row.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0).count();
          if (!row.failed)
            cell_errors[cell_key(model.label(), row.decoder, p)].push_back(row.l2_error);
          result.rows.push_back(row);
        }
      }
    }
  }

  for (auto& [key, errors] : cell_errors) result.cells[key] = box_stats(errors);
  return result;
}

std::string combination_label(int id) {
  switch (id) {
    case 1: return "wbp";
    case 2: return "wqcbp-oracle";
    case 3: return "wqcbp-cv";
    case 4: return "wlasso-oracle";
    case 5: return "wlasso-cv";
    case 6: return "wsr-lasso-theory";
    case 7: return "wsr-lasso-cv";
    case 8: return "wlad-lasso-theory";
    case 9: return "wlad-lasso-cv";
    case 10: return "wlad-lasso-unit";
  }
  throw std::invalid_argument("combination id must be 1..10");
}

SweepResult run_m_sweep(const ExperimentConfig& config) {
  config.validate();
  IndexSet Lambda = hyperbolic_cross(config.d, config.s);
  const int n = Lambda.size();
  const double Ks = std::pow(double(config.s), basis_gamma(config.kind));

  std::vector<int> m_grid = config.m_grid;
  if (m_grid.empty())
    for (double C = 2.0; C <= 4.0 + 1e-9; C += 0.5)
      m_grid.push_back(static_cast<int>(std::ceil(C * Ks)));

  Rng fn_rng = Rng::substream(config.seed, 0xf);
  ResolvedFunction fn = resolve_function(config, Lambda, fn_rng);
  Eigen::VectorXd x_ls = reference_coefficients(config, Lambda, fn);

  if (config.noise_levels.size() != 1)
    throw std::invalid_argument("run_m_sweep: exactly one noise model");
  const NoiseModel& model = config.noise_levels.front();

  SweepResult result;
  std::map<std::string, std::vector<double>> cell_errors;

  for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
    const int m = m_grid[mi];
    for (int trial = 0; trial < config.trials; ++trial) {
      Rng rng = Rng::substream(config.seed, (mi * config.trials + trial) + 1);
      auto points = sample_measure(config.kind, config.d, m, rng);
      std::vector<double> values(m);
      for (int i = 0; i < m; ++i) values[i] = fn.eval(points[i]);
      DesignProblem problem = assemble(config.kind, Lambda, points, values);
      auto [y_noisy, e] = apply_noise(problem.y, model, rng);

      const double eta_oracle = (problem.A * x_ls - y_noisy).norm();
      const double lambda_oracle = eta_oracle > 0.0
                                       ? std::sqrt(Ks) / eta_oracle
                                       : std::sqrt(Ks) / 1e-12;
      const int k_corrupt = model.type == NoiseModel::Type::SparseCorruption
                                ? static_cast<int>(std::lround(model.fraction * m))
                                : m;

      for (int combo : config.combinations) {
        TrialResult row;
        row.trial = trial;
        row.decoder = combination_label(combo);
        row.m = m;
        row.beta = noise_magnitude(model);
        auto t0 = std::chrono::steady_clock::now();
        try {
          DecoderKind kind;
          CvSpec cv;
          cv.folds = config.cv_folds;
          cv.repetitions = config.cv_repetitions;
          cv.metric = config.cv_metric;
          DecoderFamily cv_family = DecoderFamily::WQCBP;
          bool use_cv = false;
          switch (combo) {
            case 1: kind = DecoderKind::wqcbp(0.0); break;
            case 2: kind = DecoderKind::wqcbp(eta_oracle); break;
            case 3: {
              use_cv = true;
              cv_family = DecoderFamily::WQCBP;
              for (double f : log_grid(-2, 0.5, 2)) cv.grid.push_back(eta_oracle * f);
              break;
            }
            case 4: kind = DecoderKind::wlasso(lambda_oracle); break;
            case 5: {
              use_cv = true;
              cv_family = DecoderFamily::WLASSO;
              for (double f : log_grid(-2, 0.5, 2)) cv.grid.push_back(lambda_oracle * f);
              break;
            }
            case 6: kind = DecoderKind::wsr_lasso(3.0 * std::sqrt(Ks)); break;
            case 7: {
              use_cv = true;
              cv_family = DecoderFamily::WSRLASSO;
              for (double f : log_grid(-2, 0.5, 2)) cv.grid.push_back(3.0 * std::sqrt(Ks) * f);
              break;
            }
            case 8:
              kind = DecoderKind::wlad_lasso(
                  3.0 / std::sqrt((double(k_corrupt) / m) * std::log(double(n))));
              break;
            case 9: {
              use_cv = true;
              cv_family = DecoderFamily::WLADLASSO;
              const double center =
                  3.0 * std::sqrt(double(k_corrupt)) / std::sqrt(m * std::log(double(n)));
              for (double f : log_grid(-2, 0.5, 2)) cv.grid.push_back(center * f);
              break;
            }
            case 10: kind = DecoderKind::wlad_lasso(1.0); break;
            default: throw std::invalid_argument("combination id must be 1..10");
          }
          DesignProblem noisy = problem;
          noisy.y = y_noisy;
          if (use_cv) {
            Rng cv_rng = Rng::substream(config.seed, 0x1000 + mi * 1000 + trial * 16 + combo);
            CvResult cvres = cross_validate(noisy, cv, cv_family, cv_rng, config.solver);
            kind = make_kind(cv_family, cvres.parameter);
          }
          row.parameter = kind.parameter;
          DecoderSolution sol = solve(problem.A, y_noisy, problem.weights, kind, config.solver);
          row.l2_error = l2_error(sol.x, x_ls);
          row.linf_surrogate = linf_surrogate(sol.x, x_ls, problem.weights);
          row.iterations = sol.iterations;
        } catch (const std::exception& ex) {
          row.failed = true;
          row.message = ex.what();
        }
        row.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
        if (!row.failed) {
          std::ostringstream key;
          key << model.label() << '|' << row.decoder << '|' << m;
          cell_errors[key.str()].push_back(row.l2_error);
        }
        result.rows.push_back(row);
      }
    }
  }

  for (auto& [key, errors] : cell_errors) result.cells[key] = box_stats(errors);
  return result;
}

std::string SweepResult::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "trial,decoder,param,m,beta,l2_error,linf_surrogate,iterations,seconds\n";
  for (const TrialResult& r : rows) {
    os << r.trial << ',' << r.decoder << ',' << r.parameter << ',' << r.m << ','
       << r.beta << ',';
    if (r.failed)
      os << "failed,failed,";
    else
      os << r.l2_error << ',' << r.linf_surrogate << ',';
    os << r.iterations << ',' << r.seconds << '\n';
  }
  return os.str();
}

std::string SweepResult::summary_json() const {
  nlohmann::json j;
  for (const auto& [key, stats] : cells) {
    nlohmann::json cell;
    cell["mean"] = stats.mean;
    cell["median"] = stats.median;
    cell["q1"] = stats.q1;
    cell["q3"] = stats.q3;
    cell["lo_whisker"] = stats.lo_whisker;
    cell["hi_whisker"] = stats.hi_whisker;
    cell["outliers"] = stats.outliers;
    j[key] = cell;
  }
  return j.dump(2);
}

void SweepResult::write_outputs(const ExperimentConfig& config) const {
  if (!config.csv_path.empty()) {
    std::ofstream f(config.csv_path);
    if (!f) throw std::runtime_error("cannot write " + config.csv_path);
    f << to_csv();
  }
  if (!config.json_path.empty()) {
    std::ofstream f(config.json_path);
    if (!f) throw std::runtime_error("cannot write " + config.json_path);
    f << summary_json() << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, sep)) out.push_back(part);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<double> parse_grid_value(const std::string& value) {
  if (value.find(':') != std::string::npos) return parse_log_grid(value);
  std::vector<double> out;
  for (const auto& p : split(value, ',')) out.push_back(std::stod(trim(p)));
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  config.noise_levels.clear();
  std::string section;
  std::string noise_model = "none";
  std::vector<double> betas;
  double fraction = 0.1, amplitude = 10.0;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key=value, got: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (section == "function") {
      if (key == "id") config.function_id = value;
      else if (key == "d") config.d = std::stoi(value);
      else if (key == "s") config.s = std::stoi(value);
      else if (key == "basis") config.kind = basis_from_name(value);
      else if (key == "sparse_support") config.sparse_support = std::stoi(value);
      else throw std::invalid_argument("config: unknown [function] key " + key);
    } else if (section == "sampling") {
      if (key == "m") config.m = std::stoi(value);
      else if (key == "m_grid") {
        for (const auto& p : split(value, ',')) config.m_grid.push_back(std::stoi(trim(p)));
      } else if (key == "trials") config.trials = std::stoi(value);
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "oversampling") config.reference_oversampling = std::stoi(value);
      else throw std::invalid_argument("config: unknown [sampling] key " + key);
    } else if (section == "noise") {
      if (key == "model") noise_model = value;
      else if (key == "beta") {
        for (const auto& p : split(value, ',')) betas.push_back(std::stod(trim(p)));
      } else if (key == "fraction") fraction = std::stod(value);
      else if (key == "amplitude") amplitude = std::stod(value);
      else throw std::invalid_argument("config: unknown [noise] key " + key);
    } else if (section == "decoders") {
      if (key == "combinations") {
        config.combinations.clear();
        for (const auto& p : split(value, ','))
          config.combinations.push_back(std::stoi(trim(p)));
      } else {
        DecoderSweep sweep;
        sweep.family = decoder_from_name(key);
        sweep.grid = parse_grid_value(value);
        config.decoders.push_back(std::move(sweep));
      }
    } else if (section == "solver") {
      if (key == "max_iterations") config.solver.max_iterations = std::stoi(value);
      else if (key == "tolerance") config.solver.tolerance = std::stod(value);
      else if (key == "feasibility_tolerance")
        config.solver.feasibility_tolerance = std::stod(value);
      else throw std::invalid_argument("config: unknown [solver] key " + key);
    } else if (section == "cv") {
      if (key == "folds") config.cv_folds = std::stoi(value);
      else if (key == "repetitions") config.cv_repetitions = std::stoi(value);
      else if (key == "metric")
        config.cv_metric = value == "l1" ? CvMetric::L1 : CvMetric::SquaredL2;
      else throw std::invalid_argument("config: unknown [cv] key " + key);
    } else if (section == "output") {
      if (key == "csv") config.csv_path = value;
      else if (key == "json") config.json_path = value;
      else throw std::invalid_argument("config: unknown [output] key " + key);
    } else {
      throw std::invalid_argument("config: unknown section [" + section + "]");
    }
  }

  if (noise_model == "none" || (betas.empty() && noise_model != "sparse-corruption")) {
    if (noise_model != "none" && betas.empty())
      throw std::invalid_argument("config: bounded noise needs beta values");
    if (betas.empty()) config.noise_levels.push_back(NoiseModel::none());
  }
  for (double beta : betas) {
    if (noise_model == "bounded-uniform" || noise_model == "none")
      config.noise_levels.push_back(NoiseModel::bounded_uniform(beta));
    else if (noise_model == "bounded-gaussian")
      config.noise_levels.push_back(NoiseModel::bounded_gaussian(beta));
    else
      throw std::invalid_argument("config: beta list not valid for model " + noise_model);
  }
  if (noise_model == "sparse-corruption")
    config.noise_levels.push_back(NoiseModel::sparse_corruption(fraction, amplitude));
  if (config.noise_levels.empty()) config.noise_levels.push_back(NoiseModel::none());
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_config(os.str());
}

}  // namespace wl1
