#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adp/graph.hpp"

namespace adp {

/// Comma-separated reals, one row per point; a non-numeric first line is
/// treated as a header and skipped.
Dataset load_features_csv(const std::string& path);

/// One integer per row; -1 marks an unlabeled point.
std::vector<int> load_labels_csv(const std::string& path);

void save_matrix_csv(const std::string& path, const Matrix& m);
void save_labels_csv(const std::string& path, const std::vector<int>& labels);

enum class SynthKind { blobs, moons, cliques };

struct SynthSpec {
    SynthKind kind = SynthKind::blobs;
    Index n = 300;
    int classes = 3;
    double noise = 1.0;
    std::uint64_t seed = 0;
};

struct SynthData {
    Dataset data;
    std::vector<int> truth;
};

/// Deterministic 2-D benchmark generators:
///  - blobs: Gaussian clusters centered on a circle of radius 5,
///  - moons: two interleaved half-circles (classes must be 2),
///  - cliques: tight clusters spaced far enough apart that a kNN graph
///    splits into one component per class.
SynthData make_synthetic(const SynthSpec& spec);

}  // namespace adp
