#pragma once

#include <optional>
#include <vector>

#include "adp/diffusion.hpp"
#include "adp/graph.hpp"
#include "adp/propagation.hpp"

namespace adp {

enum class AdpVariant { adp, adp1 };

/// Solver configuration. beta is the outer tolerance on ||F^(t+1)-F^(t)||_F;
/// inner_tol drives both inner diffusions. max_inner, when set, overrides the
/// per-phase defaults (1000 label iterations, 2000 affinity iterations).
struct AdpConfig {
    double alpha = 0.99;
    double beta = 1e-2;
    double inner_tol = 1e-6;
    int max_outer = 100;
    std::optional<int> max_inner;
    AdpVariant variant = AdpVariant::adp;
};

/// Per-outer-iteration record consumed by the harness.
struct OuterDiagnostics {
    double residual = 0.0;
    int f_iterations = 0;
    bool f_converged = false;
    int a_iterations = 0;
    bool a_converged = false;
    double seconds = 0.0;
};

struct AdpResult {
    Classification f;
    Affinity a;
    int outer_iterations = 0;
    std::vector<double> outer_residuals;
    bool converged = false;
    std::vector<OuterDiagnostics> diagnostics;
};

/// Alternating variant: each outer round runs the label diffusion to
/// convergence on the renormalized current affinity, then the affinity
/// diffusion to convergence under the updated label similarity (warm-started
/// from the previous affinity). At least one outer round always executes.
AdpResult adp(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg);

/// Joint variant: a single interleaved step of each diffusion per outer
/// round, propagating on the renormalization of the evolving affinity.
AdpResult adp1(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg);

/// Dispatch on cfg.variant.
AdpResult run_adp(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg);

}  // namespace adp
