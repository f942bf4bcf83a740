#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adp/dataset.hpp"
#include "adp/solver.hpp"

namespace adp {

enum class Method { adp, adp1, lgc, gfhf };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct GraphParams {
    int k = 10;
    int k_sigma = 27;
    SigmaMode sigma_mode = SigmaMode::adaptive;
    double sigma_floor = 1e-12;
};

/// A benchmark plan: `trials` seeded runs of `method`, each labeling `delta`
/// points per class. Trial i draws its label mask from seed + i.
struct TrialPlan {
    std::string features_path;
    std::string truth_path;
    int delta = 1;
    int trials = 10;
    std::uint64_t seed = 0;
    Method method = Method::adp;
    GraphParams graph;
    AdpConfig solver;
    int jobs = 1;  ///< worker threads; results are identical for any value
};

struct TrialResult {
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    int iterations = 0;  ///< outer iterations (adp/adp1) or inner (lgc)
    bool converged = false;
    std::vector<double> residual_trace;
};

struct Report {
    int format_version = 1;
    TrialPlan plan;
    Index n = 0;
    int classes = 0;
    std::vector<TrialResult> trials;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  ///< population convention: std([x]) = 0
};

/// Exactly delta labeled points per class, drawn with SplitMix64(seed) by a
/// partial Fisher-Yates pass over each class's members in ascending class
/// order. Identical (truth, delta, seed) gives an identical mask.
LabelMatrix sample_labels(const std::vector<int>& truth, int delta,
                          std::uint64_t seed);

/// Exact-match fraction over evaluate_on; kUndecided never matches.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth,
                const std::vector<Index>& evaluate_on);

/// Runs the plan on already-loaded data. The graph is built once; trial i
/// samples labels with seed plan.seed + i and is evaluated on its unlabeled
/// points only.
Report run_trials(const TrialPlan& plan, const Dataset& data,
                  const std::vector<int>& truth);

/// Loads features/truth from the plan's paths first.
Report run_trials(const TrialPlan& plan);

/// Deterministic report body; excludes wall-clock measurements.
std::string report_to_json(const Report& report);

/// Parses a report and re-derives mean/std from the per-trial values,
/// rejecting a body whose aggregates do not match.
Report report_from_json(const std::string& text);

/// Per-trial residual traces as CSV rows (trial, iteration, residual).
void save_traces_csv(const std::string& path, const Report& report);

}  // namespace adp
