#include "adp/solver.hpp"

#include <chrono>
#include <sstream>
#include <utility>

namespace adp {

namespace {

constexpr int kDefaultMaxInnerLabel = 1000;
constexpr int kDefaultMaxInnerAffinity = 2000;

void validate(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg) {
    if (w.w.rows() != y.y.rows()) {
        throw ValidationError("adp: graph and label matrix disagree on n");
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        std::ostringstream msg;
        msg << "adp: alpha=" << cfg.alpha << " outside (0, 1)";
        throw ValidationError(msg.str());
    }
    if (!(cfg.beta > 0.0)) {
        throw ValidationError("adp: beta must be > 0");
    }
    if (!(cfg.inner_tol > 0.0)) {
        throw ValidationError("adp: inner_tol must be > 0");
    }
    if (cfg.max_outer < 1 || (cfg.max_inner && *cfg.max_inner < 1)) {
        throw ValidationError("adp: iteration caps must be >= 1");
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

AdpResult adp(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg) {
    validate(w, y, cfg);
    const int max_inner_f = cfg.max_inner.value_or(kDefaultMaxInnerLabel);
    const int max_inner_a = cfg.max_inner.value_or(kDefaultMaxInnerAffinity);

    const NormalizedGraph s = symmetric_normalize(w.w);
    AdpResult out;
    Matrix f_prev = y.y;
    out.a = Affinity{s.s, 0, true, {}};

    for (int t = 0; t < cfg.max_outer; ++t) {
        const auto start = std::chrono::steady_clock::now();

        const NormalizedGraph s_a = symmetric_normalize(out.a.a);
        Classification f = lgc_iterate(s_a, y, cfg.alpha, cfg.inner_tol, max_inner_f);
        const double residual = num::frobenius_distance(f.f, f_prev);

        const LabelSimilarity z = label_similarity(f);
        out.a = diffuse_to_convergence(
            s, z, DiffusionParams{cfg.alpha, cfg.inner_tol, max_inner_a}, &out.a.a);

        f_prev = f.f;
        out.outer_residuals.push_back(residual);
        out.diagnostics.push_back({residual, f.iterations, f.converged,
                                   out.a.iterations, out.a.converged,
                                   seconds_since(start)});
        out.f = std::move(f);
        if (residual <= cfg.beta) {
            out.converged = true;
            break;
        }
    }
    out.outer_iterations = static_cast<int>(out.outer_residuals.size());
    return out;
}

AdpResult adp1(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg) {
    validate(w, y, cfg);

    const NormalizedGraph s = symmetric_normalize(w.w);
    AdpResult out;
    Matrix f = y.y;
    Affinity a{s.s, 0, true, {}};
    const Matrix jump = (1.0 - cfg.alpha) * y.y;

    for (int t = 0; t < cfg.max_outer; ++t) {
        const auto start = std::chrono::steady_clock::now();

        const NormalizedGraph s_t = symmetric_normalize(a.a);
        Matrix f_next = cfg.alpha * (s_t.s * f);
        f_next += jump;

        const LabelSimilarity z = label_similarity(f_next);
        a = diffusion_step(s, a, z, cfg.alpha);

        const double residual = num::frobenius_distance(f_next, f);
        f = std::move(f_next);
        out.outer_residuals.push_back(residual);
        out.diagnostics.push_back({residual, 1, false, 1, false, seconds_since(start)});
        if (residual <= cfg.beta) {
            out.converged = true;
            break;
        }
    }
    out.outer_iterations = static_cast<int>(out.outer_residuals.size());
    num::require_finite(f, "adp1 classification");
    out.f = Classification{std::move(f), out.converged, out.outer_iterations,
                           out.outer_residuals, {}};
    a.iterations = out.outer_iterations;
    a.converged = out.converged;
    out.a = std::move(a);
    return out;
}

AdpResult run_adp(const WeightGraph& w, const LabelMatrix& y, const AdpConfig& cfg) {
    return cfg.variant == AdpVariant::adp ? adp(w, y, cfg) : adp1(w, y, cfg);
}

}  // namespace adp
