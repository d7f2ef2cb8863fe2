// Python bindings for the main operations.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wl1approx/harness.hpp"

namespace py = pybind11;

namespace {

wl1::BasisKind kind_of(const std::string& name) { return wl1::basis_from_name(name); }

wl1::DecoderKind make_decoder(const std::string& name, double parameter) {
  switch (wl1::decoder_from_name(name)) {
    case wl1::DecoderFamily::WQCBP: return wl1::DecoderKind::wqcbp(parameter);
    case wl1::DecoderFamily::WLASSO: return wl1::DecoderKind::wlasso(parameter);
    case wl1::DecoderFamily::WSRLASSO: return wl1::DecoderKind::wsr_lasso(parameter);
    case wl1::DecoderFamily::WLADLASSO: return wl1::DecoderKind::wlad_lasso(parameter);
  }
  throw std::invalid_argument("unknown decoder: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weighted l1 minimization for high-dimensional function approximation";

  py::class_<wl1::IndexSet>(m, "IndexSet")
      .def_property_readonly("dimension", &wl1::IndexSet::dimension)
      .def("__len__", &wl1::IndexSet::size)
      .def("indices", &wl1::IndexSet::indices)
      .def("to_text", &wl1::IndexSet::to_text)
      .def_static("from_text", &wl1::IndexSet::from_text);

  py::class_<wl1::DesignProblem>(m, "DesignProblem")
      .def_readonly("A", &wl1::DesignProblem::A)
      .def_readonly("y", &wl1::DesignProblem::y)
      .def_readonly("weights", &wl1::DesignProblem::weights)
      .def_readonly("index_set", &wl1::DesignProblem::index_set)
      .def_property_readonly("m", &wl1::DesignProblem::m)
      .def_property_readonly("n", &wl1::DesignProblem::n);

  py::class_<wl1::DecoderSolution>(m, "DecoderSolution")
      .def_readonly("x", &wl1::DecoderSolution::x)
      .def_readonly("objective", &wl1::DecoderSolution::objective)
      .def_readonly("residual", &wl1::DecoderSolution::residual)
      .def_readonly("iterations", &wl1::DecoderSolution::iterations)
      .def_readonly("converged", &wl1::DecoderSolution::converged)
      .def_readonly("duality_gap", &wl1::DecoderSolution::duality_gap);

  m.def("hyperbolic_cross",
        [](int d, int s) { return wl1::hyperbolic_cross(d, s); },
        py::arg("d"), py::arg("s"));
  m.def("is_lower", &wl1::is_lower);
  m.def("intrinsic_weight",
        [](const std::string& basis, const wl1::MultiIndex& i) {
          return wl1::intrinsic_weight(kind_of(basis), i);
        },
        py::arg("basis"), py::arg("index"));
  m.def("weighted_cardinality",
        [](const wl1::IndexSet& S, const std::string& basis) {
          return wl1::weighted_cardinality(S, kind_of(basis));
        });
  m.def("intrinsic_lower_sparsity",
        [](const std::string& basis, int s, int d, bool exact) {
          return wl1::intrinsic_lower_sparsity(
              kind_of(basis), s, d,
              exact ? wl1::SparsityMode::Enumerate : wl1::SparsityMode::Surrogate);
        },
        py::arg("basis"), py::arg("s"), py::arg("d"), py::arg("exact") = false);
  m.def("best_lower_s_term",
        [](const std::vector<double>& z, const wl1::IndexSet& Lambda, int s,
           const std::string& basis) {
          return wl1::best_lower_s_term(z, Lambda, s, kind_of(basis));
        });

  m.def("eval_basis",
        [](const std::string& basis, const wl1::MultiIndex& i, const wl1::SamplePoint& t) {
          return wl1::eval_basis(kind_of(basis), i, t);
        });
  m.def("sample_measure",
        [](const std::string& basis, int d, int m, std::uint64_t seed) {
          wl1::Rng rng(seed);
          return wl1::sample_measure(kind_of(basis), d, m, rng);
        },
        py::arg("basis"), py::arg("d"), py::arg("m"), py::arg("seed"));
  m.def("assemble",
        [](const std::string& basis, const wl1::IndexSet& Lambda,
           const std::vector<wl1::SamplePoint>& points, const std::vector<double>& values) {
          return wl1::assemble(kind_of(basis), Lambda, points, values);
        });

  m.def("weighted_l1_norm", &wl1::weighted_l1_norm);
  m.def("prox_weighted_l1", &wl1::prox_weighted_l1);
  m.def("operator_norm", &wl1::operator_norm);
  m.def("solve",
        [](const Eigen::MatrixXd& A, const Eigen::VectorXd& y, const Eigen::VectorXd& u,
           const std::string& decoder, double parameter, int max_iterations,
           double tolerance) {
          wl1::SolverOptions opts;
          opts.max_iterations = max_iterations;
          opts.tolerance = tolerance;
          return wl1::solve(A, y, u, make_decoder(decoder, parameter), opts);
        },
        py::arg("A"), py::arg("y"), py::arg("u"), py::arg("decoder"), py::arg("parameter"),
        py::arg("max_iterations") = 50000, py::arg("tolerance") = 1e-9);

  m.def("recommend",
        [](const std::string& decoder, int s, const std::string& basis,
           std::optional<double> noise_estimate, std::optional<int> corruption_count,
           std::optional<int> m, std::optional<int> n, double constant) {
          wl1::RecipeInputs inputs;
          inputs.noise_estimate = noise_estimate;
          inputs.corruption_count = corruption_count;
          inputs.m = m;
          inputs.n = n;
          inputs.constant = constant;
          return wl1::recommend(wl1::decoder_from_name(decoder), s, kind_of(basis), inputs);
        },
        py::arg("decoder"), py::arg("s"), py::arg("basis"),
        py::arg("noise_estimate") = py::none(), py::arg("corruption_count") = py::none(),
        py::arg("m") = py::none(), py::arg("n") = py::none(), py::arg("constant") = 3.0);
  m.def("recommended_m",
        [](int s, const std::string& basis, int n) {
          return wl1::recommended_m(s, kind_of(basis), n);
        });
  m.def("theta", &wl1::theta);
  m.def("theta_minimizer", &wl1::theta_minimizer);
  m.def("polylog_L", &wl1::polylog_L);
  m.def("parse_log_grid", &wl1::parse_log_grid);
  m.def("cross_validate",
        [](const wl1::DesignProblem& problem, const std::string& decoder,
           std::vector<double> grid, int folds, int repetitions, std::uint64_t seed,
           const std::string& metric) {
          wl1::CvSpec spec;
          spec.folds = folds;
          spec.repetitions = repetitions;
          spec.grid = std::move(grid);
          spec.metric = metric == "l1" ? wl1::CvMetric::L1 : wl1::CvMetric::SquaredL2;
          wl1::Rng rng(seed);
          wl1::CvResult r = wl1::cross_validate(problem, spec,
                                                wl1::decoder_from_name(decoder), rng);
          return py::make_tuple(r.parameter, r.parameter_index, r.mean_errors);
        },
        py::arg("problem"), py::arg("decoder"), py::arg("grid"), py::arg("folds") = 5,
        py::arg("repetitions") = 3, py::arg("seed") = 0, py::arg("metric") = "l2sq");

  m.def("l2_error", &wl1::l2_error);
  m.def("linf_surrogate", &wl1::linf_surrogate);
  m.def("best_k_term_l1", &wl1::best_k_term_l1);
  m.def("tail_Q", [](const wl1::DesignProblem& p) {
    wl1::QDiagnostic q = wl1::tail_Q(p);
    return py::make_tuple(q.value, q.rank_deficient);
  });
  m.def("tail_term",
        [](const wl1::DesignProblem& p, const Eigen::VectorXd& e, double eta) {
          return wl1::tail_term(p, e, eta);
        });
  m.def("least_squares_reference",
        [](const std::function<double(const wl1::SamplePoint&)>& f,
           const wl1::IndexSet& Lambda, const std::string& basis, int oversampling,
           std::uint64_t seed) {
          wl1::Rng rng(seed);
          wl1::ReferenceSolution ref =
              wl1::least_squares_reference(f, Lambda, kind_of(basis), oversampling, rng);
          return py::make_tuple(ref.coefficients, ref.residual_norm);
        });

  m.def("synthetic_f", &wl1::synthetic_f);
  m.def("oscillator_qoi", &wl1::oscillator_qoi);
  m.def("apply_noise",
        [](const Eigen::VectorXd& y, const std::string& model, double beta, double fraction,
           double amplitude, std::uint64_t seed) {
          wl1::NoiseModel nm;
          if (model == "none") nm = wl1::NoiseModel::none();
          else if (model == "bounded-uniform") nm = wl1::NoiseModel::bounded_uniform(beta);
          else if (model == "bounded-gaussian") nm = wl1::NoiseModel::bounded_gaussian(beta);
          else if (model == "sparse-corruption")
            nm = wl1::NoiseModel::sparse_corruption(fraction, amplitude);
          else throw std::invalid_argument("unknown noise model: " + model);
          wl1::Rng rng(seed);
          auto [y_noisy, e] = wl1::apply_noise(y, nm, rng);
          return py::make_tuple(y_noisy, e);
        },
        py::arg("y"), py::arg("model"), py::arg("beta") = 0.0, py::arg("fraction") = 0.1,
        py::arg("amplitude") = 10.0, py::arg("seed") = 0);
}
