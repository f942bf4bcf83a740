#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adp/dataset.hpp"
#include "adp/harness.hpp"
#include "adp/oracle_check.hpp"
#include "adp/solver.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitNonConvergence = 3;

struct GraphOptions {
    int k = 10;
    int k_sigma = 27;
    std::string sigma_mode = "adaptive";
    double sigma_floor = 1e-12;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", k, "neighbors per point")->capture_default_str();
        cmd->add_option("--ksigma", k_sigma, "neighbors for the bandwidth estimate")
            ->capture_default_str();
        cmd->add_option("--sigma-mode", sigma_mode, "adaptive|global")
            ->check(CLI::IsMember({"adaptive", "global"}))
            ->capture_default_str();
        cmd->add_option("--sigma-floor", sigma_floor, "lower bound on bandwidths")
            ->capture_default_str();
    }

    adp::GraphParams params() const {
        adp::GraphParams p;
        p.k = k;
        p.k_sigma = k_sigma;
        p.sigma_mode =
            sigma_mode == "global" ? adp::SigmaMode::global : adp::SigmaMode::adaptive;
        p.sigma_floor = sigma_floor;
        return p;
    }
};

struct SolverOptions {
    double alpha = 0.99;
    double beta = 1e-2;
    double inner_tol = 1e-6;
    int max_outer = 100;
    int max_inner = 0;  // 0: per-phase defaults

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "diffusion trade-off in (0,1)")
            ->capture_default_str();
        cmd->add_option("--beta", beta, "outer tolerance on ||F_next - F||_F")
            ->capture_default_str();
        cmd->add_option("--inner-tol", inner_tol, "inner diffusion tolerance")
            ->capture_default_str();
        cmd->add_option("--max-outer", max_outer, "outer iteration cap")
            ->capture_default_str();
        cmd->add_option("--max-inner", max_inner,
                        "inner iteration cap (0 keeps per-phase defaults)")
            ->capture_default_str();
    }

    adp::AdpConfig config() const {
        adp::AdpConfig cfg;
        cfg.alpha = alpha;
        cfg.beta = beta;
        cfg.inner_tol = inner_tol;
        cfg.max_outer = max_outer;
        if (max_inner > 0) cfg.max_inner = max_inner;
        return cfg;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw adp::ValidationError("cannot write file: " + path);
    }
    out << text;
}

int run_fit(const std::string& features_path, const std::string& labels_path,
            const std::string& method_name, const GraphOptions& graph_opts,
            const SolverOptions& solver_opts, int classes_override,
            const std::string& out_path, const std::string& affinity_path,
            bool strict) {
    const adp::Method method = adp::parse_method(method_name);
    if (!affinity_path.empty() && method != adp::Method::adp &&
        method != adp::Method::adp1) {
        throw adp::ValidationError("--dump-affinity requires --method adp or adp1");
    }

    const adp::Dataset data = adp::load_features_csv(features_path);
    const std::vector<int> labels = adp::load_labels_csv(labels_path);
    if (labels.size() != static_cast<std::size_t>(data.n())) {
        throw adp::ValidationError("fit: label count does not match feature rows");
    }
    int classes = classes_override;
    if (classes == 0) {
        for (int label : labels) classes = std::max(classes, label + 1);
    }
    if (classes < 1) {
        throw adp::ValidationError("fit: no labeled points and no --classes given");
    }
    const adp::LabelMatrix y = adp::one_hot(labels, classes);

    const auto start = std::chrono::steady_clock::now();
    const adp::WeightGraph graph =
        adp::build_knn_gaussian(data, graph_opts.params().k, graph_opts.params().k_sigma,
                                graph_opts.params().sigma_mode,
                                graph_opts.params().sigma_floor);

    std::vector<int> predictions;
    bool converged = true;
    json diagnostics = json::array();
    std::vector<double> residuals;

    switch (method) {
        case adp::Method::adp:
        case adp::Method::adp1: {
            adp::AdpConfig cfg = solver_opts.config();
            cfg.variant = method == adp::Method::adp ? adp::AdpVariant::adp
                                                     : adp::AdpVariant::adp1;
            const adp::AdpResult res = adp::run_adp(graph, y, cfg);
            predictions = adp::predict(res.f);
            converged = res.converged;
            residuals = res.outer_residuals;
            for (const auto& d : res.diagnostics) {
                diagnostics.push_back({{"residual", d.residual},
                                       {"f_iterations", d.f_iterations},
                                       {"f_converged", d.f_converged},
                                       {"a_iterations", d.a_iterations},
                                       {"a_converged", d.a_converged},
                                       {"seconds", d.seconds}});
            }
            if (!affinity_path.empty()) {
                adp::save_matrix_csv(affinity_path, res.a.a);
            }
            break;
        }
        case adp::Method::lgc: {
            const adp::NormalizedGraph s = adp::symmetric_normalize(graph.w);
            const adp::AdpConfig cfg = solver_opts.config();
            const adp::Classification c = adp::lgc_iterate(
                s, y, cfg.alpha, cfg.inner_tol, cfg.max_inner.value_or(1000));
            predictions = adp::predict(c);
            converged = c.converged;
            residuals = c.residual_trace;
            break;
        }
        case adp::Method::gfhf: {
            const adp::Classification c = adp::gfhf(graph, y);
            predictions = adp::predict(c);
            converged = c.converged;
            break;
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json doc;
    doc["format_version"] = 1;
    doc["method"] = method_name;
    doc["n"] = data.n();
    doc["classes"] = classes;
    doc["config"] = {{"alpha", solver_opts.alpha},
                     {"beta", solver_opts.beta},
                     {"inner_tol", solver_opts.inner_tol},
                     {"max_outer", solver_opts.max_outer},
                     {"k", graph_opts.k},
                     {"k_sigma", graph_opts.k_sigma},
                     {"sigma_mode", graph_opts.sigma_mode}};
    doc["converged"] = converged;
    doc["iterations"] = residuals.size();
    doc["residuals"] = residuals;
    doc["diagnostics"] = diagnostics;
    doc["predictions"] = predictions;
    int undecided = 0;
    for (int p : predictions) {
        if (p == adp::kUndecided) ++undecided;
    }
    doc["undecided"] = undecided;
    doc["seconds"] = seconds;

    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_text(out_path, doc.dump(2) + "\n");
        std::cout << "wrote " << out_path << " (converged=" << (converged ? "yes" : "no")
                  << ", undecided=" << undecided << ")\n";
    }
    if (strict && !converged) {
        std::cerr << "fit: did not converge within the iteration caps\n";
        return kExitNonConvergence;
    }
    return kExitOk;
}

int run_benchmark(adp::TrialPlan plan, const std::string& out_path,
                  const std::string& traces_path, bool strict) {
    const adp::Report report = adp::run_trials(plan);
    const std::string body = adp::report_to_json(report);
    if (out_path.empty()) {
        std::cout << body;
    } else {
        write_text(out_path, body);
    }
    if (!traces_path.empty()) {
        adp::save_traces_csv(traces_path, report);
    }
    std::printf("mean accuracy %.4f +- %.4f over %d trials (%s)\n",
                report.mean_accuracy, report.std_accuracy, plan.trials,
                adp::method_name(plan.method).c_str());
    if (strict) {
        for (const auto& t : report.trials) {
            if (!t.converged) {
                std::cerr << "benchmark: trial with seed " << t.seed
                          << " did not converge\n";
                return kExitNonConvergence;
            }
        }
    }
    return kExitOk;
}

int run_oracle_check_cmd(const adp::OracleCheckSpec& spec) {
    const adp::OracleCheckResult result = adp::run_oracle_check(spec);
    for (std::size_t i = 0; i < result.cases.size(); ++i) {
        const auto& c = result.cases[i];
        std::printf("case %2zu: n=%lld alpha=%.2f iterations=%d rel_gap=%.3e %s\n", i,
                    static_cast<long long>(c.n), c.alpha, c.iterations, c.rel_gap,
                    c.passed ? "ok" : "FAIL");
    }
    std::printf("max relative gap %.3e over %zu cases: %s\n", result.max_rel_gap,
                result.cases.size(), result.passed ? "PASS" : "FAIL");
    return result.passed ? kExitOk : kExitNumerical;
}

int run_synth(const std::string& kind, long long n, int classes, double noise,
              std::uint64_t seed, const std::vector<std::string>& out_paths) {
    adp::SynthSpec spec;
    if (kind == "blobs") {
        spec.kind = adp::SynthKind::blobs;
    } else if (kind == "moons") {
        spec.kind = adp::SynthKind::moons;
    } else if (kind == "cliques") {
        spec.kind = adp::SynthKind::cliques;
    } else {
        throw adp::ValidationError("synth: unknown kind " + kind);
    }
    spec.n = static_cast<adp::Index>(n);
    spec.classes = classes;
    spec.noise = noise;
    spec.seed = seed;
    const adp::SynthData synth = adp::make_synthetic(spec);
    adp::save_matrix_csv(out_paths[0], synth.data.features);
    adp::save_labels_csv(out_paths[1], synth.truth);
    std::cout << "wrote " << out_paths[0] << " and " << out_paths[1] << " (" << n
              << " points, " << classes << " classes)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternating-diffusion graph semi-supervised learning toolkit"};
    app.require_subcommand(1);

    // fit
    auto* fit = app.add_subcommand("fit", "propagate labels on one dataset");
    std::string fit_features, fit_labels, fit_method = "adp";
    std::string fit_out, fit_affinity;
    int fit_classes = 0;
    bool fit_strict = false;
    GraphOptions fit_graph;
    SolverOptions fit_solver;
    fit->add_option("--features", fit_features, "feature CSV, one row per point")
        ->required();
    fit->add_option("--labels", fit_labels, "label CSV, -1 for unlabeled")->required();
    fit->add_option("--method", fit_method, "adp|adp1|lgc|gfhf")
        ->check(CLI::IsMember({"adp", "adp1", "lgc", "gfhf"}))
        ->capture_default_str();
    fit_graph.attach(fit);
    fit_solver.attach(fit);
    fit->add_option("--classes", fit_classes, "class count (0: infer from labels)")
        ->capture_default_str();
    fit->add_option("--out", fit_out, "result JSON path (default: stdout)");
    fit->add_option("--dump-affinity", fit_affinity, "write the learned affinity as CSV");
    fit->add_flag("--strict", fit_strict, "exit 3 when the solver does not converge");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "seeded repeated-trial evaluation");
    std::string bench_features, bench_truth, bench_method = "adp";
    std::string bench_out, bench_traces;
    int bench_delta = 1, bench_trials = 10, bench_jobs = 1;
    std::uint64_t bench_seed = 0;
    bool bench_strict = false;
    GraphOptions bench_graph;
    SolverOptions bench_solver;
    bench->add_option("--features", bench_features, "feature CSV")->required();
    bench->add_option("--truth", bench_truth, "ground-truth label CSV")->required();
    bench->add_option("--delta", bench_delta, "labeled points per class")
        ->capture_default_str();
    bench->add_option("--trials", bench_trials, "number of seeded trials")
        ->capture_default_str();
    bench->add_option("--seed", bench_seed, "base seed; trial i uses seed+i")
        ->capture_default_str();
    bench->add_option("--method", bench_method, "adp|adp1|lgc|gfhf")
        ->check(CLI::IsMember({"adp", "adp1", "lgc", "gfhf"}))
        ->capture_default_str();
    bench_graph.attach(bench);
    bench_solver.attach(bench);
    bench->add_option("--jobs", bench_jobs, "worker threads (trials are independent)")
        ->capture_default_str();
    bench->add_option("--out", bench_out, "report JSON path (default: stdout)");
    bench->add_option("--traces", bench_traces, "per-trial residual trace CSV");
    bench->add_flag("--strict", bench_strict, "exit 3 when any trial does not converge");

    // oracle-check
    auto* oracle = app.add_subcommand(
        "oracle-check", "iterative diffusion vs Kronecker closed form");
    adp::OracleCheckSpec oracle_spec;
    long long oracle_n = 6;
    oracle->add_option("--n", oracle_n, "max instance size (sizes drawn from [3, n])")
        ->capture_default_str();
    oracle->add_option("--cases", oracle_spec.cases, "number of random cases")
        ->capture_default_str();
    oracle->add_option("--tol", oracle_spec.rel_tol, "allowed relative Frobenius gap")
        ->capture_default_str();
    oracle->add_option("--seed", oracle_spec.seed, "random seed")->capture_default_str();

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string synth_kind = "blobs";
    long long synth_n = 300;
    int synth_classes = 3;
    double synth_noise = 1.0;
    std::uint64_t synth_seed = 0;
    std::vector<std::string> synth_out;
    synth->add_option("--kind", synth_kind, "blobs|moons|cliques")
        ->check(CLI::IsMember({"blobs", "moons", "cliques"}))
        ->capture_default_str();
    synth->add_option("--n", synth_n, "number of points")->capture_default_str();
    synth->add_option("--classes", synth_classes, "number of classes")
        ->capture_default_str();
    synth->add_option("--noise", synth_noise, "noise scale")->capture_default_str();
    synth->add_option("--seed", synth_seed, "random seed")->capture_default_str();
    synth->add_option("--out", synth_out, "feature CSV and truth CSV paths")
        ->expected(2)
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (fit->parsed()) {
            return run_fit(fit_features, fit_labels, fit_method, fit_graph, fit_solver,
                           fit_classes, fit_out, fit_affinity, fit_strict);
        }
        if (bench->parsed()) {
            adp::TrialPlan plan;
            plan.features_path = bench_features;
            plan.truth_path = bench_truth;
            plan.delta = bench_delta;
            plan.trials = bench_trials;
            plan.seed = bench_seed;
            plan.method = adp::parse_method(bench_method);
            plan.graph = bench_graph.params();
            plan.solver = bench_solver.config();
            plan.jobs = bench_jobs;
            return run_benchmark(plan, bench_out, bench_traces, bench_strict);
        }
        if (oracle->parsed()) {
            oracle_spec.max_n = static_cast<adp::Index>(oracle_n);
            return run_oracle_check_cmd(oracle_spec);
        }
        if (synth->parsed()) {
            return run_synth(synth_kind, synth_n, synth_classes, synth_noise, synth_seed,
                             synth_out);
        }
    } catch (const adp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const adp::NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitValidation;
}
