#include "adp/oracle_check.hpp"

#include <algorithm>

#include "adp/rng.hpp"

namespace adp {

OracleCheckResult run_oracle_check(const OracleCheckSpec& spec) {
    if (spec.max_n < 2) {
        throw ValidationError("oracle check: max_n must be >= 2");
    }
    if (spec.max_n > 32) {
        throw OracleCapacityError("oracle check: max_n exceeds the oracle size cap 32");
    }
    if (spec.cases < 1) {
        throw ValidationError("oracle check: cases must be >= 1");
    }

    static constexpr double kAlphas[] = {0.5, 0.9, 0.99};
    NormalSampler normal(spec.seed);
    SplitMix64& rng = normal.uniform();

    OracleCheckResult out;
    const Index n_min = std::min<Index>(3, spec.max_n);
    for (int c = 0; c < spec.cases; ++c) {
        OracleCheckCase record;
        record.n = n_min + static_cast<Index>(rng.next_below(
                               static_cast<std::uint64_t>(spec.max_n - n_min + 1)));
        record.alpha = kAlphas[c % 3];

        Matrix features(record.n, 2);
        for (Index i = 0; i < record.n; ++i) {
            features(i, 0) = normal.next();
            features(i, 1) = normal.next();
        }
        const int k = static_cast<int>(std::min<Index>(2, record.n - 1));
        const int k_sigma = static_cast<int>(std::min<Index>(3, record.n - 1));
        const WeightGraph graph =
            build_knn_gaussian(Dataset{features}, k, k_sigma, SigmaMode::adaptive);
        const NormalizedGraph s = symmetric_normalize(graph.w);

        Matrix scores(record.n, 3);
        for (Index i = 0; i < record.n; ++i) {
            for (Index j = 0; j < 3; ++j) {
                scores(i, j) = rng.next_double();
            }
        }
        const LabelSimilarity z = label_similarity(scores);

        const Affinity iterative = diffuse_to_convergence(
            s, z, DiffusionParams{record.alpha, spec.diffusion_tol, spec.max_iter});
        const Affinity closed = closed_form_affinity(s, z, record.alpha);

        record.iterations = iterative.iterations;
        record.converged = iterative.converged;
        record.rel_gap =
            num::frobenius_distance(iterative.a, closed.a) / closed.a.norm();
        record.passed = iterative.converged && record.rel_gap <= spec.rel_tol;
        out.max_rel_gap = std::max(out.max_rel_gap, record.rel_gap);
        out.cases.push_back(record);
    }
    out.passed = std::all_of(out.cases.begin(), out.cases.end(),
                             [](const OracleCheckCase& c) { return c.passed; });
    return out;
}

}  // namespace adp
