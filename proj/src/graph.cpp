#include "adp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adp {

void validate_dataset(const Dataset& data) {
    if (data.n() < 2) {
        throw ValidationError("dataset: need at least 2 points");
    }
    if (data.d() < 1) {
        throw ValidationError("dataset: need at least 1 feature dimension");
    }
    if (!data.features.allFinite()) {
        throw ValidationError("dataset: features contain a non-finite entry");
    }
}

Matrix pairwise_distances(const Dataset& data) {
    validate_dataset(data);
    const Index n = data.n();
    Matrix dist = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d = (data.features.row(i) - data.features.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
}

namespace {

// Indices of the m nearest neighbors of i (self excluded), ties toward the
// smaller index.
std::vector<Index> nearest_neighbors(const Matrix& dist, Index i, Index m) {
    const Index n = dist.rows();
    std::vector<Index> order;
    order.reserve(n - 1);
    for (Index j = 0; j < n; ++j) {
        if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + m, order.end(),
                      [&](Index a, Index b) {
                          if (dist(i, a) != dist(i, b)) return dist(i, a) < dist(i, b);
                          return a < b;
                      });
    order.resize(m);
    return order;
}

}  // namespace

WeightGraph build_knn_gaussian(const Dataset& data, int k, int k_sigma,
                               SigmaMode mode, double sigma_floor) {
    validate_dataset(data);
    const Index n = data.n();
    if (k < 1 || k >= n) {
        std::ostringstream msg;
        msg << "build_knn_gaussian: k=" << k << " outside [1, " << n - 1 << "]";
        throw ValidationError(msg.str());
    }
    if (k_sigma < 1) {
        throw ValidationError("build_knn_gaussian: k_sigma must be >= 1");
    }
    if (sigma_floor < 0.0) {
        throw ValidationError("build_knn_gaussian: sigma_floor must be >= 0");
    }

    SigmaPolicy policy;
    policy.mode = mode;
    policy.sigma_floor = sigma_floor;
    policy.clamped_k_sigma = k_sigma > n - 1;
    policy.k_sigma = policy.clamped_k_sigma ? static_cast<int>(n - 1) : k_sigma;

    const Matrix dist = pairwise_distances(data);

    // Bandwidths from the k_sigma nearest distances of every point.
    std::vector<double> point_sigma(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        const auto nbrs = nearest_neighbors(dist, i, policy.k_sigma);
        double sum = 0.0;
        for (Index j : nbrs) sum += dist(i, j);
        point_sigma[i] = sum / static_cast<double>(policy.k_sigma);
    }

    auto apply_floor = [&](double sigma) {
        if (sigma < sigma_floor) {
            policy.floored = true;
            return sigma_floor;
        }
        return sigma;
    };

    if (mode == SigmaMode::adaptive) {
        policy.sigmas.resize(n);
        for (Index i = 0; i < n; ++i) {
            policy.sigmas[i] = apply_floor(point_sigma[i]);
        }
    } else {
        const double mean =
            std::accumulate(point_sigma.begin(), point_sigma.end(), 0.0) /
            static_cast<double>(n);
        policy.sigmas.assign(1, apply_floor(mean));
    }
    for (double sigma : policy.sigmas) {
        if (sigma <= 0.0) {
            throw ValidationError(
                "build_knn_gaussian: degenerate bandwidth (duplicate points and "
                "sigma_floor=0)");
        }
    }

    Matrix w = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto nbrs = nearest_neighbors(dist, i, k);
        for (Index j : nbrs) {
            const double d2 = dist(i, j) * dist(i, j);
            double value;
            if (mode == SigmaMode::adaptive) {
                value = std::exp(-d2 / (policy.sigmas[i] * policy.sigmas[j]));
            } else {
                value = std::exp(-d2 / (2.0 * policy.sigmas[0] * policy.sigmas[0]));
            }
            w(i, j) = value;
        }
    }
    w = w.cwiseMax(w.transpose().eval());
    w.diagonal().setZero();
    num::require_finite(w, "weight graph");

    return WeightGraph{std::move(w), k, std::move(policy)};
}

NormalizedGraph symmetric_normalize(const Matrix& w) {
    const Index n = w.rows();
    if (w.cols() != n) {
        throw ValidationError("symmetric_normalize: matrix is not square");
    }
    num::require_finite(w, "symmetric_normalize input");
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < j; ++i) {
            if (w(i, j) != w(j, i)) {
                throw ValidationError("symmetric_normalize: matrix is not symmetric");
            }
        }
    }
    if ((w.array() < 0.0).any()) {
        throw ValidationError("symmetric_normalize: matrix has negative entries");
    }

    NormalizedGraph out;
    out.degrees = w.rowwise().sum();
    for (Index i = 0; i < n; ++i) {
        if (out.degrees(i) <= 0.0) out.isolated.push_back(i);
    }
    // s(i,j) = w(i,j) / sqrt(D_ii * D_jj), 0/0 -> 0. One rounding per entry
    // pair keeps s symmetric to the last bit.
    out.s.resize(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i <= j; ++i) {
            double v = 0.0;
            if (w(i, j) != 0.0) {
                v = w(i, j) / std::sqrt(out.degrees(i) * out.degrees(j));
            }
            out.s(i, j) = v;
            out.s(j, i) = v;
        }
    }
    num::require_finite(out.s, "normalized graph");
    return out;
}

}  // namespace adp
