#include "adp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "adp/rng.hpp"

namespace adp {

using json = nlohmann::ordered_json;

std::string method_name(Method m) {
    switch (m) {
        case Method::adp: return "adp";
        case Method::adp1: return "adp1";
        case Method::lgc: return "lgc";
        case Method::gfhf: return "gfhf";
    }
    throw ValidationError("unknown method");
}

Method parse_method(const std::string& name) {
    if (name == "adp") return Method::adp;
    if (name == "adp1") return Method::adp1;
    if (name == "lgc") return Method::lgc;
    if (name == "gfhf") return Method::gfhf;
    throw ValidationError("unknown method: " + name + " (expected adp|adp1|lgc|gfhf)");
}

namespace {

int infer_classes(const std::vector<int>& truth) {
    int classes = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0) {
            std::ostringstream msg;
            msg << "truth labels: negative class " << truth[i] << " at row " << i;
            throw ValidationError(msg.str());
        }
        classes = std::max(classes, truth[i] + 1);
    }
    return classes;
}

}  // namespace

LabelMatrix sample_labels(const std::vector<int>& truth, int delta,
                          std::uint64_t seed) {
    if (delta < 1) {
        throw ValidationError("sample_labels: delta must be >= 1");
    }
    const int classes = infer_classes(truth);
    std::vector<int> sampled(truth.size(), kUnlabeled);
    SplitMix64 rng(seed);
    for (int c = 0; c < classes; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == c) members.push_back(i);
        }
        if (members.size() < static_cast<std::size_t>(delta)) {
            std::ostringstream msg;
            msg << "sample_labels: class " << c << " has " << members.size()
                << " members, need delta=" << delta;
            throw ValidationError(msg.str());
        }
        for (int t = 0; t < delta; ++t) {
            const std::size_t j =
                t + rng.next_below(static_cast<std::uint64_t>(members.size() - t));
            std::swap(members[static_cast<std::size_t>(t)], members[j]);
            sampled[members[static_cast<std::size_t>(t)]] = c;
        }
    }
    return one_hot(sampled, classes);
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                const std::vector<Index>& evaluate_on) {
    if (predicted.size() != truth.size()) {
        throw ValidationError("accuracy: prediction/truth size mismatch");
    }
    if (evaluate_on.empty()) {
        throw ValidationError("accuracy: empty evaluation set");
    }
    std::size_t hits = 0;
    for (Index idx : evaluate_on) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= truth.size()) {
            throw ValidationError("accuracy: evaluation index out of range");
        }
        const auto i = static_cast<std::size_t>(idx);
        if (predicted[i] != kUndecided && predicted[i] == truth[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(evaluate_on.size());
}

namespace {

TrialResult run_one_trial(const TrialPlan& plan, const WeightGraph& graph,
                          const NormalizedGraph& s, const std::vector<int>& truth,
                          int trial_index) {
    TrialResult out;
    out.seed = plan.seed + static_cast<std::uint64_t>(trial_index);
    const LabelMatrix y = sample_labels(truth, plan.delta, out.seed);

    std::vector<int> predictions;
    switch (plan.method) {
        case Method::adp:
        case Method::adp1: {
            AdpConfig cfg = plan.solver;
            cfg.variant = plan.method == Method::adp ? AdpVariant::adp : AdpVariant::adp1;
            AdpResult res = run_adp(graph, y, cfg);
            predictions = predict(res.f);
            out.iterations = res.outer_iterations;
            out.converged = res.converged;
            out.residual_trace = res.outer_residuals;
            break;
        }
        case Method::lgc: {
            const Classification c =
                lgc_iterate(s, y, plan.solver.alpha, plan.solver.inner_tol,
                            plan.solver.max_inner.value_or(1000));
            predictions = predict(c);
            out.iterations = c.iterations;
            out.converged = c.converged;
            out.residual_trace = c.residual_trace;
            break;
        }
        case Method::gfhf: {
            const Classification c = gfhf(graph, y);
            predictions = predict(c);
            out.iterations = 0;
            out.converged = c.converged;
            break;
        }
    }

    std::vector<Index> evaluate_on;
    std::vector<bool> labeled(truth.size(), false);
    for (Index i : y.labeled) labeled[static_cast<std::size_t>(i)] = true;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!labeled[i]) evaluate_on.push_back(static_cast<Index>(i));
    }
    out.accuracy = accuracy(predictions, truth, evaluate_on);
    return out;
}

}  // namespace

Report run_trials(const TrialPlan& plan, const Dataset& data,
                  const std::vector<int>& truth) {
    if (plan.trials < 1) {
        throw ValidationError("run_trials: trials must be >= 1");
    }
    if (truth.size() != static_cast<std::size_t>(data.n())) {
        throw ValidationError("run_trials: truth length does not match dataset");
    }
    const int classes = infer_classes(truth);
    if (static_cast<Index>(plan.delta) * classes > data.n()) {
        throw ValidationError("run_trials: delta * classes exceeds n");
    }

    // The graph depends only on the features; build it once for all trials.
    const WeightGraph graph =
        build_knn_gaussian(data, plan.graph.k, plan.graph.k_sigma,
                           plan.graph.sigma_mode, plan.graph.sigma_floor);
    const NormalizedGraph s = symmetric_normalize(graph.w);

    Report report;
    report.plan = plan;
    report.n = data.n();
    report.classes = classes;
    report.trials.resize(static_cast<std::size_t>(plan.trials));

    const int jobs = std::max(1, std::min(plan.jobs, plan.trials));
    if (jobs == 1) {
        for (int t = 0; t < plan.trials; ++t) {
            report.trials[static_cast<std::size_t>(t)] =
                run_one_trial(plan, graph, s, truth, t);
        }
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= plan.trials) return;
                try {
                    report.trials[static_cast<std::size_t>(t)] =
                        run_one_trial(plan, graph, s, truth, t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    double sum = 0.0;
    for (const auto& t : report.trials) sum += t.accuracy;
    report.mean_accuracy = sum / static_cast<double>(plan.trials);
    double var = 0.0;
    for (const auto& t : report.trials) {
        const double d = t.accuracy - report.mean_accuracy;
        var += d * d;
    }
    report.std_accuracy = std::sqrt(var / static_cast<double>(plan.trials));
    return report;
}

Report run_trials(const TrialPlan& plan) {
    const Dataset data = load_features_csv(plan.features_path);
    std::vector<int> truth = load_labels_csv(plan.truth_path);
    return run_trials(plan, data, truth);
}

std::string report_to_json(const Report& report) {
    json doc;
    doc["format_version"] = report.format_version;
    json plan;
    plan["features"] = report.plan.features_path;
    plan["truth"] = report.plan.truth_path;
    plan["method"] = method_name(report.plan.method);
    plan["delta"] = report.plan.delta;
    plan["trials"] = report.plan.trials;
    plan["seed"] = report.plan.seed;
    json graph;
    graph["k"] = report.plan.graph.k;
    graph["k_sigma"] = report.plan.graph.k_sigma;
    graph["sigma_mode"] =
        report.plan.graph.sigma_mode == SigmaMode::adaptive ? "adaptive" : "global";
    graph["sigma_floor"] = report.plan.graph.sigma_floor;
    plan["graph"] = graph;
    json solver;
    solver["alpha"] = report.plan.solver.alpha;
    solver["beta"] = report.plan.solver.beta;
    solver["inner_tol"] = report.plan.solver.inner_tol;
    solver["max_outer"] = report.plan.solver.max_outer;
    if (report.plan.solver.max_inner) {
        solver["max_inner"] = *report.plan.solver.max_inner;
    } else {
        solver["max_inner"] = nullptr;
    }
    plan["solver"] = solver;
    doc["plan"] = plan;
    doc["n"] = report.n;
    doc["classes"] = report.classes;
    doc["trials"] = json::array();
    for (const auto& t : report.trials) {
        json trial;
        trial["seed"] = t.seed;
        trial["accuracy"] = t.accuracy;
        trial["iterations"] = t.iterations;
        trial["converged"] = t.converged;
        trial["residual_trace"] = t.residual_trace;
        doc["trials"].push_back(trial);
    }
    doc["mean_accuracy"] = report.mean_accuracy;
    doc["std_accuracy"] = report.std_accuracy;
    return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report parse error: ") + e.what());
    }
    try {
        Report report;
        report.format_version = doc.at("format_version").get<int>();
        if (report.format_version != 1) {
            throw ValidationError("unsupported report format_version");
        }
        const auto& plan = doc.at("plan");
        report.plan.features_path = plan.at("features").get<std::string>();
        report.plan.truth_path = plan.at("truth").get<std::string>();
        report.plan.method = parse_method(plan.at("method").get<std::string>());
        report.plan.delta = plan.at("delta").get<int>();
        report.plan.trials = plan.at("trials").get<int>();
        report.plan.seed = plan.at("seed").get<std::uint64_t>();
        const auto& graph = plan.at("graph");
        report.plan.graph.k = graph.at("k").get<int>();
        report.plan.graph.k_sigma = graph.at("k_sigma").get<int>();
        report.plan.graph.sigma_mode = graph.at("sigma_mode").get<std::string>() == "global"
                                           ? SigmaMode::global
                                           : SigmaMode::adaptive;
        report.plan.graph.sigma_floor = graph.at("sigma_floor").get<double>();
        const auto& solver = plan.at("solver");
        report.plan.solver.alpha = solver.at("alpha").get<double>();
        report.plan.solver.beta = solver.at("beta").get<double>();
        report.plan.solver.inner_tol = solver.at("inner_tol").get<double>();
        report.plan.solver.max_outer = solver.at("max_outer").get<int>();
        if (!solver.at("max_inner").is_null()) {
            report.plan.solver.max_inner = solver.at("max_inner").get<int>();
        }
        report.n = doc.at("n").get<Index>();
        report.classes = doc.at("classes").get<int>();
        for (const auto& t : doc.at("trials")) {
            TrialResult trial;
            trial.seed = t.at("seed").get<std::uint64_t>();
            trial.accuracy = t.at("accuracy").get<double>();
            trial.iterations = t.at("iterations").get<int>();
            trial.converged = t.at("converged").get<bool>();
            trial.residual_trace = t.at("residual_trace").get<std::vector<double>>();
            report.trials.push_back(std::move(trial));
        }
        report.mean_accuracy = doc.at("mean_accuracy").get<double>();
        report.std_accuracy = doc.at("std_accuracy").get<double>();

        // Aggregates must be re-derivable from the per-trial values.
        double sum = 0.0;
        for (const auto& t : report.trials) sum += t.accuracy;
        const double mean = sum / static_cast<double>(report.trials.size());
        double var = 0.0;
        for (const auto& t : report.trials) {
            var += (t.accuracy - mean) * (t.accuracy - mean);
        }
        const double sd = std::sqrt(var / static_cast<double>(report.trials.size()));
        if (std::abs(mean - report.mean_accuracy) > 1e-12 ||
            std::abs(sd - report.std_accuracy) > 1e-12) {
            throw ValidationError("report aggregates do not match per-trial values");
        }
        return report;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("report field error: ") + e.what());
    }
}

void save_traces_csv(const std::string& path, const Report& report) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write file: " + path);
    }
    out << "trial,iteration,residual\n";
    char buf[32];
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
        const auto& trace = report.trials[t].residual_trace;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", trace[i]);
            out << t << ',' << i + 1 << ',' << buf << '\n';
        }
    }
}

}  // namespace adp
