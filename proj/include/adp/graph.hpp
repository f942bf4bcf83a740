#pragma once

#include <vector>

#include "adp/matrix.hpp"

namespace adp {

/// Raw feature matrix, one row per point.
struct Dataset {
    Matrix features;

    Index n() const { return features.rows(); }
    Index d() const { return features.cols(); }
};

/// Throws ValidationError unless n >= 2, d >= 1 and all entries are finite.
void validate_dataset(const Dataset& data);

enum class SigmaMode { adaptive, global };

/// Record of how the Gaussian bandwidths were chosen.
struct SigmaPolicy {
    SigmaMode mode = SigmaMode::adaptive;
    int k_sigma = 0;              ///< effective neighbor count after clamping
    bool clamped_k_sigma = false; ///< requested k_sigma exceeded n-1
    double sigma_floor = 0.0;
    bool floored = false;         ///< some bandwidth hit the floor
    std::vector<double> sigmas;   ///< per point (adaptive) or one entry (global)
};

/// Symmetric nonnegative kNN-Gaussian weight matrix with zero diagonal.
struct WeightGraph {
    Matrix w;
    int k = 0;
    SigmaPolicy sigma_policy;
};

/// S = D^(-1/2) W D^(-1/2) with the 0/0 -> 0 convention for isolated
/// vertices; spectrum lies in [-1, 1].
struct NormalizedGraph {
    Matrix s;
    Vector degrees;
    std::vector<Index> isolated;  ///< vertices with zero degree
};

/// Euclidean distance matrix: symmetric, zero diagonal.
Matrix pairwise_distances(const Dataset& data);

/// kNN graph with Gaussian weights. Adaptive mode uses per-point bandwidths
/// sigma_i = mean distance to the k_sigma nearest neighbors and weight
/// exp(-d^2 / (sigma_i * sigma_j)); global mode uses the dataset-wide mean
/// of all k_sigma-NN distances in exp(-d^2 / (2 sigma^2)). Neighborhoods are
/// symmetrized by elementwise max with the transpose; kNN ties break toward
/// the smaller index. Bandwidths below sigma_floor are raised to it (a zero
/// floor turns duplicate points into a degenerate-bandwidth error).
WeightGraph build_knn_gaussian(const Dataset& data, int k, int k_sigma,
                               SigmaMode mode = SigmaMode::adaptive,
                               double sigma_floor = 1e-12);

/// Symmetric normalization of any symmetric nonnegative matrix.
NormalizedGraph symmetric_normalize(const Matrix& w);

inline NormalizedGraph symmetric_normalize(const WeightGraph& g) {
    return symmetric_normalize(g.w);
}

}  // namespace adp
