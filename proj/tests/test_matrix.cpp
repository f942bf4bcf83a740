#include <doctest.h>

#include "adp/matrix.hpp"
#include "adp/rng.hpp"
#include "test_support.hpp"

using namespace adp;
using adp::testing::random_matrix;

namespace {

// Naive triple-loop product, the independent route for the vec identity.
Matrix brute_product(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < b.cols(); ++j) {
            for (Index k = 0; k < a.cols(); ++k) {
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("kron identity blocks") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK(num::kron(i2, i2) == Matrix::Identity(4, 4));
}

TEST_CASE("kron 1x2 by 2x1 block expansion") {
    Matrix a(1, 2);
    a << 1, 2;
    Matrix b(2, 1);
    b << 3, 4;
    Matrix expected(2, 2);
    expected << 3, 6, 4, 8;
    CHECK(num::kron(a, b) == expected);
}

TEST_CASE("kron bilinearity in the first argument") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix a = random_matrix(2, 2, rng, -1.0, 1.0);
        const Matrix b = random_matrix(3, 3, rng, -1.0, 1.0);
        const double scale = 2.5;
        const Matrix lhs = num::kron(scale * a, b);
        const Matrix rhs = scale * num::kron(a, b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("kron refuses results beyond the size cap") {
    const Matrix big = Matrix::Identity(40, 40);
    CHECK_THROWS_AS(num::kron(big, big), OracleCapacityError);
    CHECK_NOTHROW(num::kron(big, big, 1600));
}

TEST_CASE("vec stacks columns") {
    Matrix a(2, 2);
    a << 1, 2, 3, 4;
    Matrix expected(4, 1);
    expected << 1, 3, 2, 4;
    CHECK(num::vec(a) == expected);
}

TEST_CASE("vec of the identity puts units at k*(n+1)") {
    for (Index n : {2, 3, 5}) {
        const Matrix v = num::vec(Matrix::Identity(n, n));
        for (Index p = 0; p < n * n; ++p) {
            const double expected = (p % (n + 1) == 0) ? 1.0 : 0.0;
            CHECK(v(p, 0) == expected);
        }
    }
}

TEST_CASE("vec_inverse round-trips") {
    SplitMix64 rng(3);
    const Matrix a = random_matrix(4, 3, rng, -2.0, 2.0);
    CHECK(num::vec_inverse(num::vec(a), 4, 3) == a);
}

TEST_CASE("vec_inverse rejects length mismatch") {
    CHECK_THROWS_AS(num::vec_inverse(Matrix::Zero(5, 1), 2, 2), ValidationError);
    CHECK_THROWS_AS(num::vec_inverse(Matrix::Zero(4, 2), 4, 2), ValidationError);
}

TEST_CASE("vec identity vec(A B C^T) = kron(C, A) vec(B)") {
    SplitMix64 rng(17);
    for (Index n : {3, 4}) {
        const Matrix a = random_matrix(n, n, rng, -1.0, 1.0);
        const Matrix b = random_matrix(n, n, rng, -1.0, 1.0);
        const Matrix c = random_matrix(n, n, rng, -1.0, 1.0);
        const Matrix lhs = num::vec(brute_product(brute_product(a, b), c.transpose()));
        const Matrix rhs = brute_product(num::kron(c, a), num::vec(b));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("solve_dense identity system") {
    SplitMix64 rng(5);
    const Matrix b = random_matrix(4, 2, rng, -1.0, 1.0);
    CHECK(num::solve_dense(Matrix::Identity(4, 4), b) == b);
}

TEST_CASE("solve_dense diagonal system") {
    Matrix a(2, 2);
    a << 2, 0, 0, 4;
    Matrix b(2, 1);
    b << 2, 8;
    Matrix expected(2, 1);
    expected << 1, 2;
    CHECK(num::solve_dense(a, b) == expected);
}

TEST_CASE("solve_dense residual stays under tolerance on random systems") {
    SplitMix64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        // Diagonal dominance keeps the system comfortably well-conditioned.
        Matrix a = random_matrix(6, 6, rng, -1.0, 1.0);
        a += 8.0 * Matrix::Identity(6, 6);
        const Matrix b = random_matrix(6, 3, rng, -1.0, 1.0);
        const Matrix x = num::solve_dense(a, b);
        CHECK((a * x - b).norm() <= 1e-8 * (1.0 + b.norm()));
    }
}

TEST_CASE("solve_dense rejects singular and ill-conditioned systems") {
    Matrix singular(2, 2);
    singular << 2, 0, 0, 0;
    CHECK_THROWS_AS(num::solve_dense(singular, Matrix::Identity(2, 2)), SolverError);

    Matrix nearly(2, 2);
    nearly << 1, 1, 1, 1 + 1e-15;
    CHECK_THROWS_AS(num::solve_dense(nearly, Matrix::Identity(2, 2)), SolverError);
}

TEST_CASE("solve_dense validates shapes and finiteness") {
    CHECK_THROWS_AS(num::solve_dense(Matrix::Zero(2, 3), Matrix::Zero(2, 1)),
                    ValidationError);
    CHECK_THROWS_AS(num::solve_dense(Matrix::Identity(2, 2), Matrix::Zero(3, 1)),
                    ValidationError);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(num::solve_dense(bad, Matrix::Zero(2, 1)), NumericError);
}

TEST_CASE("frobenius_distance basics") {
    Matrix a(2, 2);
    a << 1, 0, 0, 1;
    CHECK(num::frobenius_distance(a, a) == 0.0);
    CHECK(num::frobenius_distance(a, Matrix::Zero(2, 2)) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(num::frobenius_distance(a, Matrix::Zero(3, 2)), ValidationError);
}

TEST_CASE("frobenius_distance triangle inequality") {
    SplitMix64 rng(31);
    for (int rep = 0; rep < 25; ++rep) {
        const Matrix a = random_matrix(3, 3, rng, -2.0, 2.0);
        const Matrix b = random_matrix(3, 3, rng, -2.0, 2.0);
        const Matrix c = random_matrix(3, 3, rng, -2.0, 2.0);
        CHECK(num::frobenius_distance(a, c) <=
              num::frobenius_distance(a, b) + num::frobenius_distance(b, c) + 1e-12);
    }
}
