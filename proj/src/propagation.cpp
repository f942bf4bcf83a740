#include "adp/propagation.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <utility>

namespace adp {

namespace {

void validate_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "alpha=" << alpha << " outside (0, 1)";
        throw ValidationError(msg.str());
    }
}

void validate_shapes(const NormalizedGraph& s_a, const LabelMatrix& y) {
    if (s_a.s.rows() != y.y.rows()) {
        throw ValidationError("propagation: graph and label matrix disagree on n");
    }
}

}  // namespace

LabelMatrix one_hot(const std::vector<int>& labels, int classes) {
    if (classes < 1) {
        throw ValidationError("one_hot: need at least one class");
    }
    LabelMatrix out;
    out.classes = classes;
    out.y = Matrix::Zero(static_cast<Index>(labels.size()), classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int label = labels[i];
        if (label == kUnlabeled) continue;
        if (label < 0 || label >= classes) {
            std::ostringstream msg;
            msg << "one_hot: label " << label << " at row " << i
                << " outside [0, " << classes << ")";
            throw ValidationError(msg.str());
        }
        out.y(static_cast<Index>(i), label) = 1.0;
        out.labeled.push_back(static_cast<Index>(i));
    }
    return out;
}

Classification lgc_iterate(const NormalizedGraph& s_a, const LabelMatrix& y,
                           double alpha, double inner_tol, int max_iter) {
    validate_alpha(alpha);
    validate_shapes(s_a, y);
    if (!(inner_tol > 0.0) || max_iter < 1) {
        throw ValidationError("lgc_iterate: need inner_tol > 0 and max_iter >= 1");
    }

    Classification out;
    Matrix f = y.y;
    Matrix f_next(f.rows(), f.cols());
    const Matrix jump = (1.0 - alpha) * y.y;
    for (int t = 0; t < max_iter; ++t) {
        f_next.noalias() = alpha * (s_a.s * f);
        f_next += jump;
        const double r = (f_next - f).norm();
        out.residual_trace.push_back(r);
        f.swap(f_next);
        if (r <= inner_tol) {
            out.converged = true;
            break;
        }
    }
    out.iterations = static_cast<int>(out.residual_trace.size());
    out.f = std::move(f);
    num::require_finite(out.f, "lgc_iterate result");
    return out;
}

Classification lgc_closed_form(const NormalizedGraph& s_a, const LabelMatrix& y,
                               double alpha) {
    validate_alpha(alpha);
    validate_shapes(s_a, y);
    const Index n = s_a.s.rows();
    const Matrix system = Matrix::Identity(n, n) - alpha * s_a.s;
    Classification out;
    out.f = num::solve_dense(system, y.y);
    out.converged = true;
    out.iterations = 0;
    return out;
}

Classification gfhf(const WeightGraph& w, const LabelMatrix& y) {
    const Index n = w.w.rows();
    if (n != y.y.rows()) {
        throw ValidationError("gfhf: graph and label matrix disagree on n");
    }

    std::vector<bool> labeled(n, false);
    for (Index i : y.labeled) labeled[static_cast<std::size_t>(i)] = true;

    // BFS from the labeled points over positive-weight edges.
    std::vector<bool> reachable(n, false);
    std::deque<Index> queue;
    for (Index i : y.labeled) {
        reachable[static_cast<std::size_t>(i)] = true;
        queue.push_back(i);
    }
    while (!queue.empty()) {
        const Index i = queue.front();
        queue.pop_front();
        for (Index j = 0; j < n; ++j) {
            if (!reachable[static_cast<std::size_t>(j)] && w.w(i, j) > 0.0) {
                reachable[static_cast<std::size_t>(j)] = true;
                queue.push_back(j);
            }
        }
    }

    std::vector<Index> unlabeled_reachable;
    Classification out;
    out.f = Matrix::Zero(n, y.classes);
    for (Index i = 0; i < n; ++i) {
        if (labeled[static_cast<std::size_t>(i)]) {
            out.f.row(i) = y.y.row(i);  // clamp, bit-exact
        } else if (reachable[static_cast<std::size_t>(i)]) {
            unlabeled_reachable.push_back(i);
        } else {
            out.disconnected.push_back(i);
        }
    }

    const Index u = static_cast<Index>(unlabeled_reachable.size());
    if (u > 0) {
        // Harmonic block: (D_uu - W_uu) F_u = W_ul Y_l.
        const Vector degrees = w.w.rowwise().sum();
        Matrix laplacian_uu(u, u);
        for (Index a = 0; a < u; ++a) {
            const Index i = unlabeled_reachable[static_cast<std::size_t>(a)];
            for (Index b = 0; b < u; ++b) {
                const Index j = unlabeled_reachable[static_cast<std::size_t>(b)];
                laplacian_uu(a, b) = (a == b ? degrees(i) : 0.0) - w.w(i, j);
            }
        }
        Matrix rhs = Matrix::Zero(u, y.classes);
        for (Index a = 0; a < u; ++a) {
            const Index i = unlabeled_reachable[static_cast<std::size_t>(a)];
            for (Index l : y.labeled) {
                if (w.w(i, l) > 0.0) {
                    rhs.row(a) += w.w(i, l) * y.y.row(l);
                }
            }
        }
        const Matrix f_u = num::solve_dense(laplacian_uu, rhs).cwiseMax(0.0);
        for (Index a = 0; a < u; ++a) {
            out.f.row(unlabeled_reachable[static_cast<std::size_t>(a)]) = f_u.row(a);
        }
    }

    out.converged = true;
    out.iterations = 0;
    num::require_finite(out.f, "gfhf result");
    return out;
}

std::vector<int> predict(const Classification& c) {
    std::vector<int> labels(static_cast<std::size_t>(c.f.rows()), kUndecided);
    for (Index i = 0; i < c.f.rows(); ++i) {
        if (c.f.row(i).isZero(0.0)) continue;  // exact zeros only
        int arg = 0;
        double best = c.f(i, 0);
        for (Index j = 1; j < c.f.cols(); ++j) {
            if (c.f(i, j) > best) {  // strict: ties keep the smaller index
                best = c.f(i, j);
                arg = static_cast<int>(j);
            }
        }
        labels[static_cast<std::size_t>(i)] = arg;
    }
    return labels;
}

}  // namespace adp
