#include <gtest/gtest.h>

#include <qchan/sampling.hpp>

using namespace qchan;

namespace {

RMatrix sym3(double f12, double f13, double f23) {
    RMatrix F(3, 3);
    F << 1 - f12 - f13, f12, f13, f12, 1 - f12 - f23, f23, f13, f23, 1 - f13 - f23;
    return F;
}

Matrix random_psd(Index n, SeededRng& rng) {
    Matrix g = ginibre(n, n, rng);
    return g * g.adjoint();
}

} // namespace

TEST(Matfun, SqrtMatchesFrozenOracle) {
    Matrix A(3, 3);
    const cplx i(0, 1);
    A << 2, i, 0, -i, 3, 1, 0, 1, 1.5;
    Matrix want(3, 3);
    want << 1.373105110266509, 0.335180238218128 * i, -0.047292325677969 * i,
        -0.335180238218128 * i, 1.660993022806669, 0.358826401057113,
        0.047292325677969 * i, 0.358826401057113, 1.17004574689897;
    EXPECT_LT(max_abs(psd_sqrt(A) - want), 1e-12);
}

TEST(Matfun, SqrtSquaresBack) {
    SeededRng rng(1);
    for (int t = 0; t < 50; ++t) {
        Matrix H = random_psd(1 + t % 5, rng);
        Matrix s = psd_sqrt(H);
        EXPECT_LT(max_abs(s * s - H), 1e-10 * (1 + max_abs(H)));
        EXPECT_GE(min_eig(s), -1e-12);
    }
}

TEST(Matfun, NegativeMatrixRejected) {
    Matrix H = identity(2);
    H(1, 1) = -0.5;
    EXPECT_THROW(psd_sqrt(H), not_psd);
    try {
        psd_sqrt(H);
    } catch (const not_psd& e) {
        EXPECT_NEAR(e.min_eig, -0.5, 1e-14);
    }
}

TEST(Matfun, PowAndInverse) {
    SeededRng rng(2);
    Matrix H = random_psd(4, rng) + 0.1 * identity(4);
    EXPECT_LT(max_abs(psd_pow(H, 2.0) - H * H), 1e-10);
    EXPECT_LT(max_abs(herm_inverse(H) * H - identity(4)), 1e-10);
    EXPECT_LT(max_abs(inverse_sqrt(H) * inverse_sqrt(H) * H - identity(4)), 1e-9);
    EXPECT_THROW(herm_inverse(Matrix::Zero(2, 2)), singular_matrix);
}

TEST(Matfun, KronAndPartialTrace) {
    SeededRng rng(3);
    Matrix A = random_psd(2, rng), B = random_psd(3, rng);
    Matrix AB = kron(A, B);
    EXPECT_LT(max_abs(partial_trace(AB, 2, 3, 2) - B.trace() * A), 1e-12);
    EXPECT_LT(max_abs(partial_trace(AB, 2, 3, 1) - A.trace() * B), 1e-12);
    EXPECT_THROW(partial_trace(AB, 2, 2, 1), invalid_input);
    EXPECT_THROW(partial_trace(AB, 2, 3, 3), invalid_input);
}

// reshuffling A (x) B gives the outer product of the row-major vectorizations
TEST(Matfun, ReshuffleOfProduct) {
    SeededRng rng(4);
    Matrix A = ginibre(3, 3, rng), B = ginibre(3, 3, rng);
    Vector a(9), b(9);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) {
            a(i * 3 + j) = A(i, j);
            b(i * 3 + j) = B(i, j);
        }
    EXPECT_LT(max_abs(reshuffle(kron(A, B)) - a * b.transpose()), 1e-12);
    Matrix M = ginibre(9, 9, rng);
    EXPECT_LT(max_abs(reshuffle(reshuffle(M)) - M), 0.0 + 1e-15);
    EXPECT_THROW(reshuffle(Matrix::Zero(5, 5)), invalid_input);
}

TEST(Matfun, PolarFullRankAndSingular) {
    SeededRng rng(5);
    for (int t = 0; t < 20; ++t) {
        Index n = 2 + t % 3;
        Matrix X = ginibre(n, n, rng);
        if (t % 2) X.col(0).setZero();
        auto p = polar(X);
        EXPECT_LT(max_abs(p.P * p.W - X), 1e-10);
        EXPECT_LT(max_abs(p.W * p.W.adjoint() - identity(n)), 1e-10);
        EXPECT_GE(min_eig(p.P), -1e-12);
    }
}

TEST(Matfun, SqrtProductSquaresToProduct) {
    SeededRng rng(6);
    Matrix r = random_psd(3, rng), s = random_psd(3, rng);
    r /= r.trace().real();
    s /= s.trace().real();
    Matrix q = sqrt_product(r, s);
    EXPECT_LT(max_abs(q * q - r * s), 1e-10);
    Matrix pure = Matrix::Zero(3, 3);
    pure(0, 0) = 1;
    EXPECT_THROW(sqrt_product(pure, s, false), singular_matrix);
    EXPECT_NO_THROW(sqrt_product(pure, s, true));
}

TEST(Matfun, SchurComplement) {
    Matrix A = identity(2), B = 0.5 * identity(2), C = identity(2);
    EXPECT_TRUE(schur_positive(A, B, C));
    EXPECT_FALSE(schur_positive(A, 2.0 * identity(2), C));
}

TEST(Matfun, Sqrt2x2) {
    SeededRng rng(7);
    Matrix X = random_psd(2, rng);
    Matrix s = sqrt2x2(X);
    EXPECT_LT(max_abs(s * s - X), 1e-12);
    EXPECT_LT(max_abs(s - psd_sqrt(X)), 1e-12);
}

TEST(Matfun, Stochastic3LogMatchesFrozenOracle) {
    RMatrix want(3, 3);
    want << -0.17126884991789, 0.124640591171138, 0.046628258746752, 0.124640591171138, -0.405305847191047,
        0.280665256019909, 0.046628258746752, 0.280665256019909, -0.327293514766661;
    auto l = stochastic3_log(sym3(0.1, 0.05, 0.2));
    EXPECT_LT((l.L - want).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_FALSE(l.boundary);
}

TEST(Matfun, Stochastic3LogNonSymmetricOracle) {
    Eigen::Vector3d p(0.5, 0.3, 0.2);
    double f21 = 0.1, f31 = 0.05, f32 = 0.2;
    double f12 = f21 * p(0) / p(1), f13 = f31 * p(0) / p(2), f23 = f32 * p(1) / p(2);
    RMatrix F(3, 3);
    F << 1 - f21 - f31, f12, f13, f21, 1 - f12 - f32, f23, f31, f32, 1 - f13 - f23;
    RMatrix want(3, 3);
    want << -0.178986397243384, 0.211686337348084, 0.129936487086333, 0.12701180240885, -0.55796039312492,
        0.519411083665254, 0.051974594834533, 0.346274055776836, -0.649347570751587;
    EXPECT_LT((stochastic3_log(F).L - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Matfun, Stochastic3LogRoundTripAndEigFallbackAgree) {
    SeededRng rng(8);
    int done = 0;
    for (int t = 0; t < 200; ++t) {
        RMatrix F = sym3(0.3 * rng.uniform(), 0.3 * rng.uniform(), 0.3 * rng.uniform());
        Stochastic3Log l;
        try {
            l = stochastic3_log(F);
        } catch (const no_real_log&) {
            continue;
        }
        ++done;
        EXPECT_LT((l.L.exp() - F).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((stochastic_log_eig(F).L - l.L).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT(l.L.colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_GT(done, 100);
}

TEST(Matfun, Stochastic3LogErrors) {
    RMatrix rot(3, 3);
    rot << 0.1, 0, 0.9, 0.9, 0.1, 0, 0, 0.9, 0.1;
    EXPECT_THROW(stochastic3_log(rot), no_real_log);
    EXPECT_THROW(stochastic3_log(RMatrix::Identity(3, 3)), degenerate_spectrum);
    RMatrix bad = RMatrix::Identity(3, 3);
    bad(0, 0) = 0.5;
    EXPECT_THROW(stochastic3_log(bad), invalid_input);
}

// spectrum {1, 1, 0}: the limit convention leaves finite entries where the coefficient vanishes
TEST(Matfun, BoundarySpectrumUsesLimitConvention) {
    auto l = stochastic_log_eig(sym3(0, 0, 0.5));
    EXPECT_TRUE(l.boundary);
    EXPECT_EQ(l.L(1, 0), 0.0);
    EXPECT_EQ(l.L(2, 0), 0.0);
    EXPECT_TRUE(std::isinf(l.L(2, 1)) && l.L(2, 1) > 0);
}

TEST(Matfun, LogTerm) {
    EXPECT_DOUBLE_EQ(log_term(std::exp(1.0), 2.0), 2.0);
    EXPECT_EQ(log_term(0.0, 0.0), 0.0);
    EXPECT_EQ(log_term(0.0, 1.0), -kInf);
    EXPECT_EQ(log_term(0.0, -1.0), kInf);
}

TEST(Matfun, PerfectSqrt) {
    EXPECT_EQ(perfect_sqrt(16), 4);
    EXPECT_THROW(perfect_sqrt(15), invalid_input);
}
