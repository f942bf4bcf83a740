#include "adp/matrix.hpp"

#include <sstream>

namespace adp::num {

bool all_finite(const Matrix& a) {
    return a.allFinite();
}

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite()) {
        throw NumericError(std::string(what) + ": non-finite entry");
    }
}

Matrix kron(const Matrix& a, const Matrix& b, Index dim_cap) {
    require_finite(a, "kron lhs");
    require_finite(b, "kron rhs");
    const Index m = a.rows(), n = a.cols(), p = b.rows(), q = b.cols();
    if (m * p > dim_cap || n * q > dim_cap) {
        std::ostringstream msg;
        msg << "kron result " << m * p << "x" << n * q
            << " exceeds the oracle size cap " << dim_cap << "x" << dim_cap;
        throw OracleCapacityError(msg.str());
    }
    Matrix out(m * p, n * q);
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) {
            out.block(i * p, j * q, p, q) = a(i, j) * b;
        }
    }
    return out;
}

Matrix vec(const Matrix& a) {
    // Eigen stores column-major, so a straight reshape is column stacking.
    return a.reshaped(a.size(), 1);
}

Matrix vec_inverse(const Matrix& v, Index rows, Index cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) {
        std::ostringstream msg;
        msg << "vec_inverse: length " << v.rows() << "x" << v.cols()
            << " does not match " << rows << "*" << cols;
        throw ValidationError(msg.str());
    }
    return v.reshaped(rows, cols);
}

Matrix solve_dense(const Matrix& a, const Matrix& b, double rcond_min) {
    if (a.rows() != a.cols()) {
        throw ValidationError("solve_dense: matrix is not square");
    }
    if (b.rows() != a.rows()) {
        throw ValidationError("solve_dense: right-hand side row count mismatch");
    }
    require_finite(a, "solve_dense lhs");
    require_finite(b, "solve_dense rhs");

    Eigen::PartialPivLU<Matrix> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond >= rcond_min)) {
        std::ostringstream msg;
        msg << "solve_dense: matrix singular or ill-conditioned (rcond="
            << rcond << ", threshold=" << rcond_min << ")";
        throw SolverError(msg.str());
    }
    Matrix x = lu.solve(b);
    const double residual = (a * x - b).norm();
    if (!(residual <= 1e-8 * (1.0 + b.norm()))) {
        std::ostringstream msg;
        msg << "solve_dense: residual " << residual
            << " exceeds 1e-8*(1+||b||) (rcond=" << rcond << ")";
        throw SolverError(msg.str());
    }
    require_finite(x, "solve_dense result");
    return x;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("frobenius_distance: dimension mismatch");
    }
    return (a - b).norm();
}

}  // namespace adp::num
