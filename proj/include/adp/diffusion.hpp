#pragma once

#include <vector>

#include "adp/graph.hpp"
#include "adp/matrix.hpp"
#include "adp/propagation.hpp"

namespace adp {

/// Gram matrix Z = F_hat * F_hat^T of the row-normalized classification;
/// symmetric, positive semidefinite, entries in [0, 1].
struct LabelSimilarity {
    Matrix z;
};

LabelSimilarity label_similarity(const Matrix& f);

inline LabelSimilarity label_similarity(const Classification& f) {
    return label_similarity(f.f);
}

/// Controls one affinity diffusion run. alpha = 1/(mu+1) trades smoothness
/// against the identity prior.
struct DiffusionParams {
    double alpha = 0.99;
    double tol = 1e-6;
    int max_iter = 2000;
};

/// Learned affinity matrix with its convergence record.
struct Affinity {
    Matrix a;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_trace;
};

/// One update A -> alpha * S (A + Z) S^T + (1 - alpha) * I.
Affinity diffusion_step(const NormalizedGraph& s, const Affinity& a,
                        const LabelSimilarity& z, double alpha);

/// Repeats diffusion_step from a0 (default: S itself) until the Frobenius
/// distance of successive iterates drops to params.tol or max_iter runs out.
Affinity diffuse_to_convergence(const NormalizedGraph& s, const LabelSimilarity& z,
                                const DiffusionParams& params,
                                const Matrix* a0 = nullptr);

/// Exact fixed point through the Kronecker-lifted n^2 x n^2 system
///   vec(A) = ((I - alpha S(x)S)^-1 - I) vec(Z)
///            + (1 - alpha)(I - alpha S(x)S)^-1 vec(I).
/// Refuses n > size_cap; the lifted solve is for small oracle instances only.
Affinity closed_form_affinity(const NormalizedGraph& s, const LabelSimilarity& z,
                              double alpha, Index size_cap = 32);

}  // namespace adp
