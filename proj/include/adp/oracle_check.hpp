#pragma once

#include <cstdint>
#include <vector>

#include "adp/diffusion.hpp"

namespace adp {

/// Randomized equivalence suite between the iterative affinity diffusion and
/// its Kronecker-lifted closed form.
struct OracleCheckSpec {
    Index max_n = 6;        ///< instance sizes are drawn from [3, max_n]
    int cases = 20;
    double rel_tol = 1e-6;  ///< allowed relative Frobenius gap
    std::uint64_t seed = 12345;
    double diffusion_tol = 1e-10;
    int max_iter = 30000;
};

struct OracleCheckCase {
    Index n = 0;
    double alpha = 0.0;
    double rel_gap = 0.0;
    int iterations = 0;
    bool converged = false;
    bool passed = false;
};

struct OracleCheckResult {
    std::vector<OracleCheckCase> cases;
    double max_rel_gap = 0.0;
    bool passed = false;
};

/// Each case builds a kNN-Gaussian graph on random 2-D points, a label
/// similarity from a random nonnegative score matrix, and an alpha cycling
/// through {0.5, 0.9, 0.99}, then compares both solution routes.
OracleCheckResult run_oracle_check(const OracleCheckSpec& spec);

}  // namespace adp
