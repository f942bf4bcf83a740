#pragma once

#include <Eigen/Dense>

#include "adp/errors.hpp"

namespace adp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace num {

/// Default cap on either dimension of a Kronecker product result. 32x32
/// operands lift to 1024x1024 systems; anything larger is refused unless
/// the caller raises the cap.
inline constexpr Index kKronDimCap = 1024;

bool all_finite(const Matrix& a);

/// Throws NumericError naming `what` when `a` has a NaN/Inf entry.
void require_finite(const Matrix& a, const char* what);

/// Kronecker product: block (i,j) of the result equals a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b, Index dim_cap = kKronDimCap);

/// Column-stacking vectorization, mn x 1.
Matrix vec(const Matrix& a);

/// Inverse of vec: reshape an mn x 1 column back to m x n.
Matrix vec_inverse(const Matrix& v, Index rows, Index cols);

/// Dense partial-pivot LU solve of a*x = b. Rejects matrices whose
/// reciprocal condition estimate falls below rcond_min and verifies
/// ||a*x - b||_F <= 1e-8 * (1 + ||b||_F) on the way out.
Matrix solve_dense(const Matrix& a, const Matrix& b, double rcond_min = 1e-12);

/// Frobenius norm of (a - b); dimensions must match.
double frobenius_distance(const Matrix& a, const Matrix& b);

}  // namespace num
}  // namespace adp
