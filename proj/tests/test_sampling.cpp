#include <gtest/gtest.h>

#include <qchan/sampling.hpp>

using namespace qchan;

TEST(Sampling, SplitMixFrozenSequence) {
    // reference outputs of splitmix64 seeded with 0
    std::uint64_t x = 0;
    auto next = [&] {
        x += splitmix_gamma;
        return splitmix(x);
    };
    EXPECT_EQ(next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(next(), 0x6e789e6aa1b965f4ULL);
    EXPECT_EQ(next(), 0x06c45d188009454fULL);
}

TEST(Sampling, SameSeedAndStreamReproduce) {
    SeededRng a(42, 3), b(42, 3);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
    SeededRng c(42, 3);
    Matrix u1 = haar_unitary(3, c);
    SeededRng d(42, 3);
    EXPECT_EQ(max_abs(u1 - haar_unitary(3, d)), 0.0);
}

TEST(Sampling, StreamsDiffer) {
    SeededRng a(42, 0), b(42, 1), c(43, 0);
    auto x = a(), y = b(), z = c();
    EXPECT_NE(x, y);
    EXPECT_NE(x, z);
    // drawing from one stream leaves another untouched
    SeededRng b2(42, 1);
    for (int i = 0; i < 50; ++i) a();
    EXPECT_EQ(b2(), y);
}

TEST(Sampling, UniformAndNormalMoments) {
    SeededRng rng(51);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        su += u;
        double g = rng.normal();
        sn += g;
        sn2 += g * g;
    }
    EXPECT_NEAR(su / n, 0.5, 0.005);
    EXPECT_NEAR(sn / n, 0.0, 0.01);
    EXPECT_NEAR(sn2 / n, 1.0, 0.01);
}

TEST(Sampling, HaarUnitaryIsUnitaryWithUniformPhaseMoments) {
    SeededRng rng(52);
    cplx s = 0;
    double s2 = 0;
    const int n = 4000;
    for (int t = 0; t < n; ++t) {
        Matrix U = haar_unitary(3, rng);
        ASSERT_LT(max_abs(U * U.adjoint() - identity(3)), 1e-12);
        s += U(0, 0);
        s2 += std::norm(U(0, 0));
    }
    // E U_00 = 0, E |U_00|^2 = 1/N
    EXPECT_LT(std::abs(s) / n, 0.02);
    EXPECT_NEAR(s2 / n, 1.0 / 3, 0.01);
}

TEST(Sampling, HsDensityMomentsMatchKnownPurity) {
    // E tr rho^2 = 2N / (N^2 + 1) under the Hilbert-Schmidt measure
    SeededRng rng(53);
    const int n = 20000;
    double s = 0;
    for (int t = 0; t < n; ++t) {
        Matrix r = hs_random_density(2, rng);
        ASSERT_TRUE(is_state(r));
        s += purity(r);
    }
    EXPECT_NEAR(s / n, 0.8, 0.005);
}

TEST(Sampling, DirichletMeanAndSupport) {
    SeededRng rng(54);
    RVector m = RVector::Zero(3);
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        RVector p = dirichlet(3, rng);
        ASSERT_NEAR(p.sum(), 1.0, 1e-12);
        ASSERT_GE(p.minCoeff(), 0.0);
        m += p;
    }
    EXPECT_LT((m / n - RVector::Constant(3, 1.0 / 3)).cwiseAbs().maxCoeff(), 0.01);
    EXPECT_THROW(dirichlet(0, rng), invalid_input);
    EXPECT_THROW(dirichlet(3, rng, 0.0), invalid_input);
    RVector a = dirichlet(4, rng, 0.5);
    EXPECT_NEAR(a.sum(), 1.0, 1e-12);
}

TEST(Sampling, RandomChannelIsCptpWithFullRank) {
    SeededRng rng(55);
    for (Index m : {1, 2, 4}) {
        Channel phi = random_channel(3, m, rng);
        EXPECT_TRUE(is_cptp(phi).cp && is_cptp(phi).tp);
        RVector ev = herm_eigenvalues(phi.choi());
        EXPECT_EQ((ev.array() > 1e-10).count(), m);
    }
}

TEST(Sampling, EnsemblesAreValid) {
    SeededRng rng(56);
    Ensemble e = random_ensemble(4, 3, rng);
    EXPECT_NO_THROW(e.validate());
    Ensemble p = random_pure_ensemble(3, 2, rng);
    EXPECT_NO_THROW(p.validate());
    for (const auto& s : p.states) EXPECT_TRUE(is_pure(s));
}
