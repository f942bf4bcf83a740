#pragma once

#include <vector>

#include "adp/graph.hpp"
#include "adp/matrix.hpp"

namespace adp {

/// Marker for unlabeled points in label vectors.
inline constexpr int kUnlabeled = -1;

/// predict() output for all-zero score rows; never matches a class.
inline constexpr int kUndecided = -1;

/// One-hot label matrix; unlabeled rows are all-zero.
struct LabelMatrix {
    Matrix y;
    std::vector<Index> labeled;  ///< ascending indices of labeled points
    int classes = 0;

    Index n() const { return y.rows(); }
};

LabelMatrix one_hot(const std::vector<int>& labels, int classes);

/// Score matrix produced by a propagation run, with its convergence record.
struct Classification {
    Matrix f;
    bool converged = false;
    int iterations = 0;
    std::vector<double> residual_trace;
    std::vector<Index> disconnected;  ///< unlabeled points no label can reach
};

/// F^(t+1) = alpha * S_A * F^(t) + (1 - alpha) * Y from F^(0) = Y, stopping
/// when the Frobenius distance of successive iterates drops to inner_tol.
/// Hitting max_iter is not an error; the converged flag reports it.
Classification lgc_iterate(const NormalizedGraph& s_a, const LabelMatrix& y,
                           double alpha, double inner_tol = 1e-6,
                           int max_iter = 1000);

/// Exact fixed point (I - alpha * S_A)^-1 * Y. Note the iteration's limit is
/// (1 - alpha) times this; their argmax labels agree.
Classification lgc_closed_form(const NormalizedGraph& s_a, const LabelMatrix& y,
                               double alpha);

/// Harmonic propagation with labeled rows clamped to Y. Unlabeled points
/// with no path to a label get an all-zero row and are listed in
/// `disconnected`.
Classification gfhf(const WeightGraph& w, const LabelMatrix& y);

/// Row argmax; ties break toward the smaller class index, all-zero rows map
/// to kUndecided.
std::vector<int> predict(const Classification& c);

}  // namespace adp
