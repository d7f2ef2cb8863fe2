// Command-line front end: approximation runs, parameter and sample-count
// sweeps, cross-validation, diagnostics, and least-squares references.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "wl1approx/harness.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct CommonArgs {
  std::string config_path;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string csv_path, json_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file");
  cmd->add_option("--seed", args.seed, "override the master seed")
      ->each([&](const std::string&) { args.has_seed = true; });
  cmd->add_option("--csv", args.csv_path, "override the CSV output path");
  cmd->add_option("--json", args.json_path, "override the JSON summary path");
}

wl1::ExperimentConfig resolve_config(const CommonArgs& args) {
  wl1::ExperimentConfig config;
  if (!args.config_path.empty()) config = wl1::load_config(args.config_path);
  if (args.has_seed) config.seed = args.seed;
  if (!args.csv_path.empty()) config.csv_path = args.csv_path;
  if (!args.json_path.empty()) config.json_path = args.json_path;
  return config;
}

wl1::FunctionEvaluator named_function(const std::string& id) {
  if (id == "synthetic") return [](const wl1::SamplePoint& t) { return wl1::synthetic_f(t); };
  if (id == "oscillator") return [](const wl1::SamplePoint& t) { return wl1::oscillator_qoi(t); };
  throw std::invalid_argument("unknown function id: " + id);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted l1 minimization for high-dimensional function approximation"};
  app.require_subcommand(1);

  // --- diag ---
  auto* diag = app.add_subcommand("diag", "index-set and sample-complexity diagnostics");
  int diag_d = 15, diag_s = 10, diag_m = 0;
  std::string diag_basis = "legendre";
  std::uint64_t diag_seed = 1234;
  diag->add_option("--d", diag_d, "dimension")->check(CLI::PositiveNumber);
  diag->add_option("--s", diag_s, "hyperbolic cross order")->check(CLI::PositiveNumber);
  diag->add_option("--basis", diag_basis, "legendre or chebyshev");
  diag->add_option("--m", diag_m, "sample count for the Q diagnostic (0 = recommended)");
  diag->add_option("--seed", diag_seed, "seed for the sampled design matrix");

  // --- approximate ---
  auto* approx = app.add_subcommand("approximate", "solve one decoder on fresh samples");
  CommonArgs approx_common;
  add_common(approx, approx_common);
  std::string approx_decoder = "wsr-lasso", approx_out, approx_ref;
  double approx_param = -1.0;
  approx->add_option("--decoder", approx_decoder, "wqcbp | wlasso | wsr-lasso | wlad-lasso");
  approx->add_option("--param", approx_param,
                     "tuning parameter (negative = theory recipe where available)");
  approx->add_option("--out", approx_out, "write recovered coefficients here");
  approx->add_option("--reference", approx_ref, "stored reference for error reporting");

  // --- sweep-param / sweep-m ---
  auto* sweep_param = app.add_subcommand("sweep-param", "error vs tuning parameter sweep");
  CommonArgs sweep_param_common;
  add_common(sweep_param, sweep_param_common);
  int sweep_trials = 0;
  bool sweep_paper_scale = false;
  sweep_param->add_option("--trials", sweep_trials, "override trial count");
  sweep_param->add_flag("--paper-scale", sweep_paper_scale,
                        "full-scale study sizes (d=15, s=10, 50 trials); slow");

  auto* sweep_m = app.add_subcommand("sweep-m", "error vs sample count sweep");
  CommonArgs sweep_m_common;
  add_common(sweep_m, sweep_m_common);
  int sweep_m_trials = 0;
  bool sweep_m_paper_scale = false;
  sweep_m->add_option("--trials", sweep_m_trials, "override trial count");
  sweep_m->add_flag("--paper-scale", sweep_m_paper_scale,
                    "full-scale study sizes (d=15, s=10, 50 trials); slow");

  // --- cross-validate ---
  auto* cv = app.add_subcommand("cross-validate", "choose a tuning parameter by k-fold CV");
  CommonArgs cv_common;
  add_common(cv, cv_common);
  std::string cv_decoder = "wsr-lasso", cv_grid_spec = "-2:0.5:2";
  cv->add_option("--decoder", cv_decoder, "decoder family");
  cv->add_option("--grid", cv_grid_spec, "parameter grid, \"a:step:b\" exponents or comma list");

  // --- reference ---
  auto* ref = app.add_subcommand("reference", "build and store a least-squares reference");
  CommonArgs ref_common;
  add_common(ref, ref_common);
  std::string ref_out = "reference.txt";
  ref->add_option("--out", ref_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*diag) {
      wl1::BasisKind kind = wl1::basis_from_name(diag_basis);
      wl1::IndexSet Lambda = wl1::hyperbolic_cross(diag_d, diag_s);
      const int n = Lambda.size();
      std::cout << "n = " << n << "\n";
      std::cout << "|Lambda|_u = " << wl1::weighted_cardinality(Lambda, kind) << "\n";
      std::cout << "K(s) surrogate = "
                << wl1::intrinsic_lower_sparsity(kind, diag_s, diag_d) << "\n";
      if (diag_s <= wl1::kEnumerationMaxS && diag_d <= wl1::kEnumerationMaxD)
        std::cout << "K(s) exact = "
                  << wl1::intrinsic_lower_sparsity(kind, diag_s, diag_d,
                                                   wl1::SparsityMode::Enumerate)
                  << "\n";
      const int m_rec = wl1::recommended_m(diag_s, kind, n);
      std::cout << "recommended m = " << m_rec << "\n";
      const int m = diag_m > 0 ? diag_m : m_rec;
      wl1::Rng rng(diag_seed);
      auto points = wl1::sample_measure(kind, diag_d, m, rng);
      wl1::DesignProblem problem =
          wl1::assemble(kind, Lambda, points, std::vector<double>(m, 0.0));
      wl1::QDiagnostic q = wl1::tail_Q(problem);
      std::cout << "Q (m = " << m << ") = ";
      if (q.rank_deficient)
        std::cout << "inf (rank deficient)\n";
      else
        std::cout << q.value << "\n";
      return 0;
    }

    if (*approx) {
      wl1::ExperimentConfig config = resolve_config(approx_common);
      config.validate();
      wl1::IndexSet Lambda = wl1::hyperbolic_cross(config.d, config.s);
      const int n = Lambda.size();
      const int m = config.m > 0 ? config.m : wl1::recommended_m(config.s, config.kind, n);
      wl1::FunctionEvaluator f = named_function(config.function_id);

      wl1::Rng rng(config.seed);
      auto points = wl1::sample_measure(config.kind, config.d, m, rng);
      std::vector<double> values(m);
      for (int i = 0; i < m; ++i) values[i] = f(points[i]);
      wl1::DesignProblem problem = wl1::assemble(config.kind, Lambda, points, values);

      wl1::DecoderFamily family = wl1::decoder_from_name(approx_decoder);
      double param = approx_param;
      if (param < 0.0) {
        if (family == wl1::DecoderFamily::WSRLASSO || family == wl1::DecoderFamily::WLADLASSO)
          param = wl1::recommend(family, config.s, config.kind);
        else
          throw std::invalid_argument("--param required for " + approx_decoder);
      }
      wl1::DecoderKind kind;
      switch (family) {
        case wl1::DecoderFamily::WQCBP: kind = wl1::DecoderKind::wqcbp(param); break;
        case wl1::DecoderFamily::WLASSO: kind = wl1::DecoderKind::wlasso(param); break;
        case wl1::DecoderFamily::WSRLASSO: kind = wl1::DecoderKind::wsr_lasso(param); break;
        case wl1::DecoderFamily::WLADLASSO: kind = wl1::DecoderKind::wlad_lasso(param); break;
      }
      wl1::DecoderSolution sol = wl1::solve(problem, kind, config.solver);
      std::cout << "decoder = " << wl1::decoder_name(family) << ", parameter = " << param
                << "\n";
      std::cout << "iterations = " << sol.iterations
                << ", converged = " << (sol.converged ? "yes" : "no")
                << ", objective = " << sol.objective << "\n";
      if (!approx_ref.empty()) {
        std::ifstream rf(approx_ref);
        if (!rf) throw std::runtime_error("cannot read reference: " + approx_ref);
        std::ostringstream os;
        os << rf.rdbuf();
        auto reference = wl1::ReferenceSolution::from_text(os.str(), config.d);
        if (reference.index_set.size() != n)
          throw std::runtime_error("reference index set mismatch");
        std::cout << "l2 error vs reference = "
                  << wl1::l2_error(sol.x, reference.coefficients) << "\n";
      }
      if (!approx_out.empty()) {
        wl1::ReferenceSolution out;
        out.index_set = Lambda;
        out.coefficients = sol.x;
        std::ofstream of(approx_out);
        if (!of) throw std::runtime_error("cannot write " + approx_out);
        of << out.to_text();
        std::cout << "coefficients written to " << approx_out << "\n";
      }
      return 0;
    }

    if (*sweep_param || *sweep_m) {
      const bool param_sweep = static_cast<bool>(*sweep_param);
      wl1::ExperimentConfig config =
          resolve_config(param_sweep ? sweep_param_common : sweep_m_common);
      int trials_override = param_sweep ? sweep_trials : sweep_m_trials;
      if (trials_override > 0) config.trials = trials_override;
      if (param_sweep ? sweep_paper_scale : sweep_m_paper_scale) {
        config.d = 15;
        config.s = 10;
        config.kind = wl1::BasisKind::Legendre;
        config.trials = 50;
        config.m = 0;  // recommended m (727 at these sizes)
        if (trials_override > 0) config.trials = trials_override;
      }
      wl1::SweepResult result =
          param_sweep ? wl1::run_parameter_sweep(config) : wl1::run_m_sweep(config);
      result.write_outputs(config);
      if (config.csv_path.empty()) std::cout << result.to_csv();
      int failures = 0;
      for (const auto& row : result.rows) failures += row.failed ? 1 : 0;
      std::cout << "rows = " << result.rows.size() << ", failed = " << failures << "\n";
      for (const auto& [key, stats] : result.cells)
        std::cout << key << ": median = " << stats.median << ", mean = " << stats.mean
                  << "\n";
      return 0;
    }

    if (*cv) {
      wl1::ExperimentConfig config = resolve_config(cv_common);
      config.validate();
      wl1::IndexSet Lambda = wl1::hyperbolic_cross(config.d, config.s);
      const int n = Lambda.size();
      const int m = config.m > 0 ? config.m : wl1::recommended_m(config.s, config.kind, n);
      wl1::FunctionEvaluator f = named_function(config.function_id);
      wl1::Rng rng(config.seed);
      auto points = wl1::sample_measure(config.kind, config.d, m, rng);
      std::vector<double> values(m);
      for (int i = 0; i < m; ++i) values[i] = f(points[i]);
      wl1::DesignProblem problem = wl1::assemble(config.kind, Lambda, points, values);
      if (!config.noise_levels.empty()) {
        auto [y_noisy, e] = wl1::apply_noise(problem.y, config.noise_levels.front(), rng);
        problem.y = y_noisy;
      }
      wl1::CvSpec spec;
      spec.folds = config.cv_folds;
      spec.repetitions = config.cv_repetitions;
      spec.metric = config.cv_metric;
      if (cv_grid_spec.find(':') != std::string::npos)
        spec.grid = wl1::parse_log_grid(cv_grid_spec);
      else {
        std::istringstream gs(cv_grid_spec);
        std::string part;
        while (std::getline(gs, part, ',')) spec.grid.push_back(std::stod(part));
      }
      wl1::Rng cv_rng = wl1::Rng::substream(config.seed, 0xc);
      wl1::CvResult result = wl1::cross_validate(
          problem, spec, wl1::decoder_from_name(cv_decoder), cv_rng, config.solver);
      std::cout << "chosen parameter = " << result.parameter << " (index "
                << result.parameter_index << ")\n";
      std::cout << "eps(t,g,p) table:\n";
      for (std::size_t t = 0; t < result.table.size(); ++t)
        for (std::size_t g = 0; g < result.table[t].size(); ++g) {
          std::cout << "t=" << t << " g=" << g << ":";
          for (double v : result.table[t][g]) std::cout << ' ' << v;
          std::cout << "\n";
        }
      return 0;
    }

    if (*ref) {
      wl1::ExperimentConfig config = resolve_config(ref_common);
      config.validate();
      wl1::IndexSet Lambda = wl1::hyperbolic_cross(config.d, config.s);
      wl1::FunctionEvaluator f = named_function(config.function_id);
      wl1::Rng rng = wl1::Rng::substream(config.seed, 0);
      wl1::ReferenceSolution reference = wl1::least_squares_reference(
          f, Lambda, config.kind, config.reference_oversampling, rng);
      std::ofstream of(ref_out);
      if (!of) throw std::runtime_error("cannot write " + ref_out);
      of << reference.to_text();
      std::cout << "reference written to " << ref_out << " (n = " << Lambda.size()
                << ", fit residual = " << reference.residual_norm << ")\n";
      return 0;
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
