#include <gtest/gtest.h>

#include <qchan/sampling.hpp>

using namespace qchan;

namespace {

Matrix rho_a() {
    Matrix r(2, 2);
    r << 0.7, cplx(0.2, -0.1), cplx(0.2, 0.1), 0.3;
    return r;
}

Matrix rho_b() {
    Matrix s(2, 2);
    s << 0.4, -0.1, -0.1, 0.6;
    return s;
}

} // namespace

TEST(Entropy, FrozenValues) {
    EXPECT_NEAR(vn_entropy(rho_a()), 0.5004024235381879, 1e-12);
    EXPECT_NEAR(vn_entropy(rho_a(), EntropyOrder::renyi(2)), 0.38566248081198445, 1e-12);
    EXPECT_NEAR(vn_entropy(rho_a(), EntropyOrder::renyi(0.5)), 0.5877866649021187, 1e-12);
    EXPECT_NEAR(vn_entropy(rho_a(), EntropyOrder::tsallis(2)), 0.32, 1e-12);
    Matrix q(3, 3);
    const cplx i(0, 1);
    q << 0.5, 0.1 * i, 0.05, -0.1 * i, 0.3, 0.02, 0.05, 0.02, 0.2;
    EXPECT_NEAR(vn_entropy(q), 0.9942720232651766, 1e-12);
}

TEST(Entropy, RelativeEntropyFrozenValues) {
    EXPECT_NEAR(relative_entropy(rho_a(), rho_b()), 0.3989195103225083, 1e-12);
    EXPECT_NEAR(relative_entropy(rho_a(), rho_b(), EntropyOrder::renyi(2)), 0.6021754023542185, 1e-12);
    EXPECT_NEAR(relative_entropy(rho_a(), rho_b(), EntropyOrder::tsallis(2)), 0.826086956521739, 1e-12);
    EXPECT_NEAR(relative_entropy(rho_a(), rho_a()), 0.0, 1e-12);
}

TEST(Entropy, RelativeEntropyInfiniteOffSupport) {
    Matrix p0 = from_bloch(Bloch(0, 0, 1)), p1 = from_bloch(Bloch(0, 0, -1));
    EXPECT_TRUE(std::isinf(relative_entropy(maximally_mixed(2), p0)));
    EXPECT_NEAR(relative_entropy(p0, maximally_mixed(2)), std::log(2.0), 1e-12);
    EXPECT_TRUE(std::isinf(relative_entropy(p0, p1, EntropyOrder::renyi(2))));
}

TEST(Entropy, OrderLimitsAndBounds) {
    SeededRng rng(21);
    for (int t = 0; t < 50; ++t) {
        Matrix r = hs_random_density(3, rng);
        double s = vn_entropy(r);
        EXPECT_NEAR(vn_entropy(r, EntropyOrder::renyi(1.0 + 1e-7)), s, 1e-6);
        EXPECT_NEAR(vn_entropy(r, EntropyOrder::tsallis(1.0 - 1e-7)), s, 1e-6);
        EXPECT_GE(vn_entropy(r, EntropyOrder::renyi(0.5)), s - 1e-12);
        EXPECT_LE(vn_entropy(r, EntropyOrder::renyi(2)), s + 1e-12);
        EXPECT_LE(s, std::log(3.0) + 1e-12);
    }
    EXPECT_NEAR(vn_entropy(maximally_mixed(4), EntropyOrder::renyi(5)), std::log(4.0), 1e-12);
    EXPECT_THROW(vn_entropy(rho_a(), EntropyOrder::renyi(0)), invalid_input);
    EXPECT_THROW(vn_entropy(rho_a(), EntropyOrder::tsallis(-1)), invalid_input);
}

TEST(Entropy, PureStatesHaveZeroEntropyAtEveryOrder) {
    SeededRng rng(22);
    Matrix p = projector(random_pure(4, rng));
    for (double q : {0.5, 1.0, 2.0, 5.0}) {
        EXPECT_NEAR(vn_entropy(p, EntropyOrder::renyi(q)), 0.0, 1e-12);
        EXPECT_NEAR(vn_entropy(p, EntropyOrder::tsallis(q)), 0.0, 1e-12);
    }
}

TEST(Entropy, ClassicalEntropyAndValidation) {
    RVector p(3);
    p << 0.5, 0.25, 0.25;
    EXPECT_NEAR(classical_entropy(p), 1.5 * std::log(2.0), 1e-14);
    EXPECT_NEAR(to_base(classical_entropy(p), 2.0), 1.5, 1e-14);
    RVector bad(2);
    bad << 0.5, 0.6;
    EXPECT_THROW(classical_entropy(bad), invalid_input);
    bad << 1.1, -0.1;
    EXPECT_THROW(classical_entropy(bad), invalid_input);
}

TEST(Entropy, MutualInformationFrozen) {
    RMatrix J(2, 2);
    J << 0.3, 0.1, 0.2, 0.4;
    EXPECT_NEAR(mutual_information_classical(J), 0.08630462173553388, 1e-13);
    RMatrix prod = RVector::Constant(2, 0.5) * RVector::Constant(3, 1.0 / 3).transpose();
    EXPECT_NEAR(mutual_information_classical(prod), 0.0, 1e-14);
    J(0, 0) = 0.5;
    EXPECT_THROW(mutual_information_classical(J), invalid_input);
}

TEST(Entropy, QuantumMutualInformationOfBellState) {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1 / std::sqrt(2.0);
    EXPECT_NEAR(quantum_mutual_information(projector(bell), 2, 2), 2 * std::log(2.0), 1e-12);
    EXPECT_THROW(quantum_mutual_information(projector(bell), 2, 3), invalid_input);
}

TEST(Entropy, JensenShannonFrozen) {
    RVector P(2), Q(2);
    P << 0.2, 0.8;
    Q << 0.6, 0.4;
    EXPECT_NEAR(jsd(P, Q), 0.0863046217355341, 1e-13);
    EXPECT_NEAR(transmission_distance(P, Q), std::sqrt(0.0863046217355341), 1e-12);
    EXPECT_NEAR(jsd(P, P), 0.0, 1e-15);
    RVector R(3);
    R << 0.2, 0.3, 0.5;
    EXPECT_THROW(jsd(P, R), invalid_input);
}

TEST(Entropy, EntropicDistanceEndpoints) {
    Matrix p0 = from_bloch(Bloch(0, 0, 1)), p1 = from_bloch(Bloch(0, 0, -1));
    EXPECT_NEAR(entropic_distance(p0, p0), 0.0, 1e-7);
    EXPECT_NEAR(entropic_distance(p0, p1), std::sqrt(std::log(2.0)), 1e-12);
}

TEST(Entropy, StrongSubadditivityOnSamples) {
    SeededRng rng(23);
    for (int t = 0; t < 30; ++t) {
        Matrix r = hs_random_density(8, rng);
        Matrix ab = partial_trace(r, 4, 2, 2), bc = partial_trace(r, 2, 4, 1);
        Matrix b = partial_trace(ab, 2, 2, 1);
        EXPECT_LE(vn_entropy(r) + vn_entropy(b), vn_entropy(ab) + vn_entropy(bc) + 1e-9);
    }
}
