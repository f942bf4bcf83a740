#include "adp/diffusion.hpp"

#include <Eigen/SparseCore>

#include <sstream>
#include <utility>

namespace adp {

namespace {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "diffusion: alpha=" << alpha << " outside (0, 1)";
        throw ValidationError(msg.str());
    }
}

// Mirror the strict upper triangle onto the lower one after averaging, so a
// product that is symmetric in exact arithmetic stays symmetric to the bit.
void symmetrize_in_place(Matrix& m) {
    const Index n = m.rows();
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < j; ++i) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
    }
}

// Evaluates A -> alpha * S (A + Z) S^T + (1 - alpha) * I. S is fixed across a
// run, so the kernel decides once whether to route the two products through a
// sparse view of S (kNN graphs are ~5% dense and the run is iteration-bound).
class StepKernel {
public:
    explicit StepKernel(const Matrix& s) : dense_(s) {
        const Index n = s.rows();
        const Index nnz = static_cast<Index>((s.array() != 0.0).count());
        use_sparse_ = n >= 64 && nnz * 4 < n * n;
        if (use_sparse_) {
            sparse_ = s.sparseView();
            sparse_.makeCompressed();
        }
        sum_.resize(n, n);
        t_.resize(n, n);
    }

    void apply(const Matrix& a, const Matrix& z, double alpha, Matrix& out) const {
        sum_ = a + z;
        if (use_sparse_) {
            t_.noalias() = sparse_ * sum_;
            out.noalias() = alpha * (t_ * sparse_);
        } else {
            t_.noalias() = dense_ * sum_;
            out.noalias() = alpha * (t_ * dense_);
        }
        out.diagonal().array() += 1.0 - alpha;
        symmetrize_in_place(out);
    }

private:
    const Matrix& dense_;
    Eigen::SparseMatrix<double> sparse_;
    bool use_sparse_ = false;
    mutable Matrix sum_, t_;
};

void validate_inputs(const NormalizedGraph& s, const LabelSimilarity& z) {
    if (s.s.rows() != z.z.rows() || z.z.rows() != z.z.cols()) {
        throw ValidationError("diffusion: graph and label similarity disagree on n");
    }
}

}  // namespace

LabelSimilarity label_similarity(const Matrix& f) {
    num::require_finite(f, "label_similarity input");
    if ((f.array() < 0.0).any()) {
        throw ValidationError("label_similarity: classification has negative entries");
    }
    Matrix f_hat = f;
    for (Index i = 0; i < f_hat.rows(); ++i) {
        const double row_sum = f_hat.row(i).sum();
        if (row_sum > 0.0) {
            f_hat.row(i) /= row_sum;  // all-zero rows stay zero
        }
    }
    Matrix z = f_hat * f_hat.transpose();
    symmetrize_in_place(z);
    return LabelSimilarity{std::move(z)};
}

Affinity diffusion_step(const NormalizedGraph& s, const Affinity& a,
                        const LabelSimilarity& z, double alpha) {
    validate_alpha(alpha);
    validate_inputs(s, z);
    if (a.a.rows() != s.s.rows() || a.a.cols() != s.s.cols()) {
        throw ValidationError("diffusion_step: affinity dimensions disagree with graph");
    }
    StepKernel kernel(s.s);
    Affinity out;
    out.a.resize(s.s.rows(), s.s.cols());
    kernel.apply(a.a, z.z, alpha, out.a);
    out.iterations = 1;
    out.converged = false;
    num::require_finite(out.a, "diffusion_step result");
    return out;
}

Affinity diffuse_to_convergence(const NormalizedGraph& s, const LabelSimilarity& z,
                                const DiffusionParams& params, const Matrix* a0) {
    validate_alpha(params.alpha);
    validate_inputs(s, z);
    if (!(params.tol > 0.0) || params.max_iter < 1) {
        throw ValidationError("diffusion: need tol > 0 and max_iter >= 1");
    }

    Matrix a = a0 ? *a0 : s.s;
    if (a.rows() != s.s.rows() || a.cols() != s.s.cols()) {
        throw ValidationError("diffusion: a0 dimensions disagree with graph");
    }

    StepKernel kernel(s.s);
    Affinity out;
    Matrix a_next(a.rows(), a.cols());
    for (int t = 0; t < params.max_iter; ++t) {
        kernel.apply(a, z.z, params.alpha, a_next);
        const double r = (a_next - a).norm();
        out.residual_trace.push_back(r);
        a.swap(a_next);
        if (r <= params.tol) {
            out.converged = true;
            break;
        }
    }
    out.iterations = static_cast<int>(out.residual_trace.size());
    out.a = std::move(a);
    num::require_finite(out.a, "diffusion result");
    return out;
}

Affinity closed_form_affinity(const NormalizedGraph& s, const LabelSimilarity& z,
                              double alpha, Index size_cap) {
    validate_alpha(alpha);
    validate_inputs(s, z);
    const Index n = s.s.rows();
    if (n > size_cap) {
        std::ostringstream msg;
        msg << "closed_form_affinity: n=" << n << " exceeds the oracle size cap "
            << size_cap << " (lifted system would be " << n * n << "x" << n * n << ")";
        throw OracleCapacityError(msg.str());
    }

    const Matrix lifted = num::kron(s.s, s.s, n * n);
    const Matrix system = Matrix::Identity(n * n, n * n) - alpha * lifted;
    Matrix rhs(n * n, 2);
    rhs.col(0) = num::vec(z.z);
    rhs.col(1) = num::vec(Matrix::Identity(n, n));
    Matrix solved;
    try {
        solved = num::solve_dense(system, rhs);
    } catch (const SolverError& e) {
        // Cannot happen for alpha < 1 and rho(S) <= 1; surface as internal.
        throw NumericError(std::string("closed_form_affinity: lifted system solve failed: ") + e.what());
    }

    Affinity out;
    out.a = num::vec_inverse(
        (solved.col(0) - rhs.col(0)) + (1.0 - alpha) * solved.col(1), n, n);
    out.iterations = 0;
    out.converged = true;
    num::require_finite(out.a, "closed_form_affinity result");
    return out;
}

}  // namespace adp
