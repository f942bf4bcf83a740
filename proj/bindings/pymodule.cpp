#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adp/dataset.hpp"
#include "adp/harness.hpp"
#include "adp/oracle_check.hpp"
#include "adp/solver.hpp"

namespace py = pybind11;
using namespace adp;

namespace {

Matrix as_matrix(const Eigen::Ref<const Matrix>& m) { return m; }

}  // namespace

PYBIND11_MODULE(adpssl, m) {
    m.doc() = "Graph semi-supervised learning by alternating diffusion: "
              "kNN-Gaussian graphs, label propagation, affinity diffusion, "
              "and the coupled solver.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::enum_<SigmaMode>(m, "SigmaMode")
        .value("adaptive", SigmaMode::adaptive)
        .value("global_", SigmaMode::global);

    py::enum_<AdpVariant>(m, "AdpVariant")
        .value("adp", AdpVariant::adp)
        .value("adp1", AdpVariant::adp1);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](const Eigen::Ref<const Matrix>& features) {
                 Dataset d{as_matrix(features)};
                 validate_dataset(d);
                 return d;
             }),
             py::arg("features"))
        .def_readonly("features", &Dataset::features)
        .def_property_readonly("n", &Dataset::n)
        .def_property_readonly("d", &Dataset::d);

    py::class_<SigmaPolicy>(m, "SigmaPolicy")
        .def_readonly("mode", &SigmaPolicy::mode)
        .def_readonly("k_sigma", &SigmaPolicy::k_sigma)
        .def_readonly("clamped_k_sigma", &SigmaPolicy::clamped_k_sigma)
        .def_readonly("sigma_floor", &SigmaPolicy::sigma_floor)
        .def_readonly("floored", &SigmaPolicy::floored)
        .def_readonly("sigmas", &SigmaPolicy::sigmas);

    py::class_<WeightGraph>(m, "WeightGraph")
        .def_readonly("w", &WeightGraph::w)
        .def_readonly("k", &WeightGraph::k)
        .def_readonly("sigma_policy", &WeightGraph::sigma_policy);

    py::class_<NormalizedGraph>(m, "NormalizedGraph")
        .def_readonly("s", &NormalizedGraph::s)
        .def_readonly("degrees", &NormalizedGraph::degrees)
        .def_readonly("isolated", &NormalizedGraph::isolated);

    py::class_<LabelMatrix>(m, "LabelMatrix")
        .def_readonly("y", &LabelMatrix::y)
        .def_readonly("labeled", &LabelMatrix::labeled)
        .def_readonly("classes", &LabelMatrix::classes);

    py::class_<Classification>(m, "Classification")
        .def_readonly("f", &Classification::f)
        .def_readonly("converged", &Classification::converged)
        .def_readonly("iterations", &Classification::iterations)
        .def_readonly("residual_trace", &Classification::residual_trace)
        .def_readonly("disconnected", &Classification::disconnected);

    py::class_<LabelSimilarity>(m, "LabelSimilarity")
        .def_readonly("z", &LabelSimilarity::z);

    py::class_<DiffusionParams>(m, "DiffusionParams")
        .def(py::init([](double alpha, double tol, int max_iter) {
                 return DiffusionParams{alpha, tol, max_iter};
             }),
             py::arg("alpha"), py::arg("tol") = 1e-6, py::arg("max_iter") = 2000)
        .def_readwrite("alpha", &DiffusionParams::alpha)
        .def_readwrite("tol", &DiffusionParams::tol)
        .def_readwrite("max_iter", &DiffusionParams::max_iter);

    py::class_<Affinity>(m, "Affinity")
        .def_readonly("a", &Affinity::a)
        .def_readonly("iterations", &Affinity::iterations)
        .def_readonly("converged", &Affinity::converged)
        .def_readonly("residual_trace", &Affinity::residual_trace);

    py::class_<AdpConfig>(m, "AdpConfig")
        .def(py::init([](double alpha, double beta, double inner_tol, int max_outer,
                         std::optional<int> max_inner, AdpVariant variant) {
                 AdpConfig cfg;
                 cfg.alpha = alpha;
                 cfg.beta = beta;
                 cfg.inner_tol = inner_tol;
                 cfg.max_outer = max_outer;
                 cfg.max_inner = max_inner;
                 cfg.variant = variant;
                 return cfg;
             }),
             py::arg("alpha") = 0.99, py::arg("beta") = 1e-2,
             py::arg("inner_tol") = 1e-6, py::arg("max_outer") = 100,
             py::arg("max_inner") = std::nullopt,
             py::arg("variant") = AdpVariant::adp)
        .def_readwrite("alpha", &AdpConfig::alpha)
        .def_readwrite("beta", &AdpConfig::beta)
        .def_readwrite("inner_tol", &AdpConfig::inner_tol)
        .def_readwrite("max_outer", &AdpConfig::max_outer)
        .def_readwrite("max_inner", &AdpConfig::max_inner)
        .def_readwrite("variant", &AdpConfig::variant);

    py::class_<OuterDiagnostics>(m, "OuterDiagnostics")
        .def_readonly("residual", &OuterDiagnostics::residual)
        .def_readonly("f_iterations", &OuterDiagnostics::f_iterations)
        .def_readonly("f_converged", &OuterDiagnostics::f_converged)
        .def_readonly("a_iterations", &OuterDiagnostics::a_iterations)
        .def_readonly("a_converged", &OuterDiagnostics::a_converged)
        .def_readonly("seconds", &OuterDiagnostics::seconds);

    py::class_<AdpResult>(m, "AdpResult")
        .def_readonly("f", &AdpResult::f)
        .def_readonly("a", &AdpResult::a)
        .def_readonly("outer_iterations", &AdpResult::outer_iterations)
        .def_readonly("outer_residuals", &AdpResult::outer_residuals)
        .def_readonly("converged", &AdpResult::converged)
        .def_readonly("diagnostics", &AdpResult::diagnostics);

    m.attr("UNLABELED") = kUnlabeled;
    m.attr("UNDECIDED") = kUndecided;

    // graph
    m.def("pairwise_distances",
          [](const Eigen::Ref<const Matrix>& features) {
              return pairwise_distances(Dataset{as_matrix(features)});
          },
          py::arg("features"));
    m.def("build_knn_gaussian",
          [](const Eigen::Ref<const Matrix>& features, int k, int k_sigma,
             SigmaMode mode, double sigma_floor) {
              return build_knn_gaussian(Dataset{as_matrix(features)}, k, k_sigma, mode,
                                        sigma_floor);
          },
          py::arg("features"), py::arg("k") = 10, py::arg("k_sigma") = 27,
          py::arg("sigma_mode") = SigmaMode::adaptive, py::arg("sigma_floor") = 1e-12);
    m.def("symmetric_normalize",
          [](const Eigen::Ref<const Matrix>& w) { return symmetric_normalize(as_matrix(w)); },
          py::arg("w"));

    // propagation
    m.def("one_hot", &one_hot, py::arg("labels"), py::arg("classes"));
    m.def("lgc_iterate", &lgc_iterate, py::arg("s"), py::arg("y"), py::arg("alpha"),
          py::arg("inner_tol") = 1e-6, py::arg("max_iter") = 1000);
    m.def("lgc_closed_form", &lgc_closed_form, py::arg("s"), py::arg("y"),
          py::arg("alpha"));
    m.def("gfhf", &gfhf, py::arg("w"), py::arg("y"));
    m.def("predict", &predict, py::arg("classification"));

    // diffusion
    m.def("label_similarity",
          [](const Eigen::Ref<const Matrix>& f) { return label_similarity(as_matrix(f)); },
          py::arg("f"));
    m.def("diffusion_step", &diffusion_step, py::arg("s"), py::arg("a"), py::arg("z"),
          py::arg("alpha"));
    m.def("diffuse_to_convergence",
          [](const NormalizedGraph& s, const LabelSimilarity& z,
             const DiffusionParams& params, std::optional<Matrix> a0) {
              return diffuse_to_convergence(s, z, params, a0 ? &*a0 : nullptr);
          },
          py::arg("s"), py::arg("z"), py::arg("params"),
          py::arg("a0") = std::nullopt);
    m.def("closed_form_affinity", &closed_form_affinity, py::arg("s"), py::arg("z"),
          py::arg("alpha"), py::arg("size_cap") = 32);

    // solver
    m.def("adp", &adp::adp, py::arg("w"), py::arg("y"), py::arg("config"));
    m.def("adp1", &adp::adp1, py::arg("w"), py::arg("y"), py::arg("config"));

    // harness
    m.def("sample_labels", &sample_labels, py::arg("truth"), py::arg("delta"),
          py::arg("seed"));
    m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"),
          py::arg("evaluate_on"));
    m.def("make_synthetic",
          [](const std::string& kind, Index n, int classes, double noise,
             std::uint64_t seed) {
              SynthSpec spec;
              if (kind == "blobs") spec.kind = SynthKind::blobs;
              else if (kind == "moons") spec.kind = SynthKind::moons;
              else if (kind == "cliques") spec.kind = SynthKind::cliques;
              else throw ValidationError("unknown synthetic kind: " + kind);
              spec.n = n;
              spec.classes = classes;
              spec.noise = noise;
              spec.seed = seed;
              SynthData data = make_synthetic(spec);
              return py::make_tuple(data.data.features, data.truth);
          },
          py::arg("kind"), py::arg("n"), py::arg("classes"), py::arg("noise") = 1.0,
          py::arg("seed") = 0);
    m.def("run_trials",
          [](const Eigen::Ref<const Matrix>& features, const std::vector<int>& truth,
             const std::string& method, int delta, int trials, std::uint64_t seed,
             const AdpConfig& config, int k, int k_sigma, SigmaMode sigma_mode,
             int jobs) {
              TrialPlan plan;
              plan.method = parse_method(method);
              plan.delta = delta;
              plan.trials = trials;
              plan.seed = seed;
              plan.solver = config;
              plan.graph.k = k;
              plan.graph.k_sigma = k_sigma;
              plan.graph.sigma_mode = sigma_mode;
              plan.jobs = jobs;
              const Report report = run_trials(plan, Dataset{as_matrix(features)}, truth);
              return report_to_json(report);
          },
          py::arg("features"), py::arg("truth"), py::arg("method"),
          py::arg("delta") = 1, py::arg("trials") = 10, py::arg("seed") = 0,
          py::arg("config") = AdpConfig{}, py::arg("k") = 10, py::arg("k_sigma") = 27,
          py::arg("sigma_mode") = SigmaMode::adaptive, py::arg("jobs") = 1,
          "Run a seeded benchmark and return the report as a JSON string.");
    m.def("oracle_check",
          [](Index max_n, int cases, double rel_tol, std::uint64_t seed) {
              OracleCheckSpec spec;
              spec.max_n = max_n;
              spec.cases = cases;
              spec.rel_tol = rel_tol;
              spec.seed = seed;
              const OracleCheckResult result = run_oracle_check(spec);
              return py::make_tuple(result.passed, result.max_rel_gap);
          },
          py::arg("max_n") = 6, py::arg("cases") = 20, py::arg("rel_tol") = 1e-6,
          py::arg("seed") = 12345);
}
