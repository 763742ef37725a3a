#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include <qchan/bounds.hpp>
#include <qchan/sampling.hpp>

using namespace qchan;

namespace {

Ensemble fixed_ensemble() {
    Matrix r(2, 2), s(2, 2), t(2, 2);
    const cplx i(0, 1);
    r << 0.7, 0.2 - 0.1 * i, 0.2 + 0.1 * i, 0.3;
    s << 0.4, -0.1, -0.1, 0.6;
    t << 0.5, 0.3 * i, -0.3 * i, 0.5;
    RVector p(3);
    p << 0.2, 0.3, 0.5;
    return {p, {r, s, t}};
}

} // namespace

TEST(Bounds, FrozenEnsembleQuantities) {
    Ensemble e = fixed_ensemble();
    BoundReport r = bound_report(e);
    EXPECT_NEAR(r.chi, 0.11248572545661684, 1e-12);
    EXPECT_NEAR(r.s_fid, 0.2505788290689726, 1e-12);
    EXPECT_NEAR(r.s_sigma, 0.25475702267678957, 1e-12);
    EXPECT_NEAR(r.s_fid_sq, 0.4037783637867806, 1e-12);
    EXPECT_NEAR(r.h_p, 1.0296530140645737, 1e-12);
    EXPECT_NEAR(r.b, std::sqrt(3.0), 1e-15);
}

TEST(Bounds, GeneralizedHolevoFrozen) {
    Ensemble e = fixed_ensemble();
    EXPECT_NEAR(holevo(e, EntropyOrder::renyi(2)), 0.09939725948852163, 1e-12);
    EXPECT_NEAR(holevo(e, EntropyOrder::tsallis(2)), 0.22284242164018875, 1e-12);
    EXPECT_NEAR(holevo(e, EntropyOrder::renyi(1)), holevo(e), 0.0);
}

TEST(Bounds, HolevoOfSingleStateIsZeroAndOfOrthogonalPureIsShannon) {
    SeededRng rng(61);
    Ensemble one{RVector::Ones(1), {hs_random_density(3, rng)}};
    EXPECT_NEAR(holevo(one), 0.0, 1e-12);
    RVector p(3);
    p << 0.5, 0.3, 0.2;
    Ensemble orth{p, {}};
    for (Index i = 0; i < 3; ++i) {
        Matrix s = Matrix::Zero(3, 3);
        s(i, i) = 1;
        orth.states.push_back(s);
    }
    EXPECT_NEAR(holevo(orth), classical_entropy(p), 1e-12);
    EXPECT_NEAR(vn_entropy(fidelity_matrix(orth, FidelityVariant::G)), classical_entropy(p), 1e-12);
}

TEST(Bounds, TheoremOneOnRandomInstances) {
    SeededRng rng(62);
    for (int t = 0; t < 200; ++t) {
        Index n = 2 + t % 2, k = 1 + t % 4;
        auto r = theorem1_check(hs_random_density(n, rng), random_channel(n, k, rng).kraus());
        EXPECT_TRUE(r.ok) << r.chi << " " << r.s_sigma << " " << r.h_p;
    }
}

TEST(Bounds, TheoremOneSaturatesForPureInput) {
    SeededRng rng(63);
    for (int t = 0; t < 50; ++t) {
        auto r = theorem1_check(projector(random_pure(3, rng)), random_channel(3, 3, rng).kraus());
        EXPECT_NEAR(r.chi, r.s_sigma, 1e-9);
    }
}

TEST(Bounds, CorrelationMatrixDiagonalIsOutcomeDistribution) {
    SeededRng rng(64);
    Matrix rho = hs_random_density(2, rng);
    Channel phi = random_channel(2, 3, rng);
    Matrix s = correlation_matrix(rho, phi.kraus());
    Ensemble e = output_ensemble(phi, rho);
    for (Index i = 0; i < 3; ++i) EXPECT_NEAR(s(i, i).real(), e.probs(i), 1e-12);
    EXPECT_THROW(correlation_matrix(rho, {0.5 * identity(2)}), invalid_channel);
}

TEST(Bounds, KrausFromEnsembleRealizesCorrelationMatrix) {
    SeededRng rng(65);
    Ensemble e = random_ensemble(3, 2, rng);
    std::vector<Matrix> U{identity(2), haar_unitary(2, rng), haar_unitary(2, rng)};
    auto ec = kraus_from_ensemble(e, U);
    // tr K^i rho K^j+ = sqrt(p_i p_j) tr sqrt(rho_j) sqrt(rho_i) U_i U_j+
    std::vector<Matrix> Ud;
    for (const auto& u : U) Ud.push_back(u.adjoint());
    Matrix direct = correlation_from_ensemble(e, Ud).transpose();
    Matrix via = correlation_matrix(ec.rho, ec.channel.kraus());
    EXPECT_LT(max_abs(direct - via), 1e-9);
    EXPECT_NEAR(vn_entropy(direct), vn_entropy(correlation_from_ensemble(e, Ud)), 1e-12);
}

TEST(Bounds, InformationGainAndConcatenation) {
    SeededRng rng(66);
    for (int t = 0; t < 50; ++t) {
        Matrix rho = hs_random_density(2, rng);
        EXPECT_TRUE(info_gain_check(rho, random_channel(2, 3, rng).kraus()));
        Channel a = random_channel(2, 2, rng), b = random_channel(2, 2, rng);
        auto c = concat_bound_check(a, b, rho);
        EXPECT_TRUE(c.ok) << c.min_slack;
        double lo = composition_map_entropy_lower(a, b);
        EXPECT_GE(lo, -1e-9);
        EXPECT_LE(lo, map_entropy(compose(b, a)) + 1e-9);
    }
}

TEST(Bounds, LindbladInequalities) {
    SeededRng rng(67);
    for (int t = 0; t < 50; ++t) {
        auto r = lindblad_check(hs_random_density(3, rng), random_channel(3, 2, rng));
        EXPECT_TRUE(r.ok) << r.slack_lower << " " << r.slack_upper << " " << r.slack_three;
    }
}

TEST(Bounds, FidelityMatrixBoundsHolevoForQubitTriples) {
    SeededRng rng(68);
    for (int t = 0; t < 300; ++t) {
        Ensemble e = random_ensemble(3, 2, rng);
        double chi = holevo(e);
        EXPECT_LE(chi, vn_entropy(fidelity_matrix(e, FidelityVariant::G)) + 1e-9);
        EXPECT_GE(min_eig(fidelity_matrix(e, FidelityVariant::G)), -1e-10);
    }
}

TEST(Bounds, IndefiniteFidelityMatrixExistsForFourPureStates) {
    auto s = find_indefinite_g(4, 2, 2000, 42);
    EXPECT_TRUE(s.found);
    EXPECT_LT(s.min_eig, -1e-10);
}

TEST(Bounds, FidelityVariantsShareDiagonalAndValidateB) {
    Ensemble e = fixed_ensemble();
    for (auto v : {FidelityVariant::G, FidelityVariant::G_over_b, FidelityVariant::F_squared, FidelityVariant::layered}) {
        Matrix G = fidelity_matrix(e, v);
        for (Index i = 0; i < 3; ++i) EXPECT_NEAR(G(i, i).real(), e.probs(i), 1e-12);
        EXPECT_NEAR(G.trace().real(), 1.0, 1e-12);
    }
    EXPECT_THROW(fidelity_matrix(e, FidelityVariant::G_over_b, 1.5), invalid_input);
    EXPECT_NO_THROW(fidelity_matrix(e, FidelityVariant::G_over_b, 2.5));
}

TEST(Bounds, LayeredNeighboursCarryRootFidelity) {
    SeededRng rng(69);
    Ensemble e = random_ensemble(4, 3, rng);
    Matrix L = fidelity_matrix(e, FidelityVariant::layered);
    for (Index i = 0; i + 1 < 4; ++i) {
        double w = std::sqrt(e.probs(i) * e.probs(i + 1));
        EXPECT_NEAR(L(i, i + 1).real(), w * root_fidelity(e.states[static_cast<size_t>(i)], e.states[static_cast<size_t>(i + 1)]), 1e-10);
        EXPECT_NEAR(L(i, i + 1).imag(), 0.0, 1e-10);
    }
    EXPECT_LT(max_abs(L - layered_closed_form(e)), 1e-9);
    EXPECT_GE(min_eig(L), -1e-12);
}

TEST(Bounds, LayeredRejectsSingularWhenAsked) {
    SeededRng rng(70);
    Ensemble e = random_pure_ensemble(3, 2, rng);
    EXPECT_THROW(fidelity_matrix(e, FidelityVariant::layered, 0.0, false), singular_matrix);
    EXPECT_NO_THROW(fidelity_matrix(e, FidelityVariant::layered));
}

TEST(Bounds, StarGramRowCarriesRootFidelity) {
    SeededRng rng(71);
    Ensemble e = random_ensemble(3, 2, rng);
    Matrix S = star_gram(e);
    for (Index j = 1; j < 3; ++j)
        EXPECT_NEAR(std::abs(S(0, j)), std::sqrt(e.probs(0) * e.probs(j)) * root_fidelity(e.states[0], e.states[static_cast<size_t>(j)]),
                    1e-10);
}

TEST(Bounds, HierarchyNormalization) {
    SeededRng rng(72);
    BoundReport r = hierarchy(random_ensemble(3, 2, rng));
    EXPECT_TRUE(r.normalized);
    EXPECT_EQ(r.chi, 0.0);
    EXPECT_EQ(r.h_p, 1.0);
    EXPECT_GE(r.s_sigma, -1e-9);
    Ensemble same{RVector::Constant(2, 0.5), {maximally_mixed(2), maximally_mixed(2)}};
    EXPECT_FALSE(hierarchy(same).skipped);
    Ensemble orth{RVector::Constant(2, 0.5), {from_bloch(Bloch(0, 0, 1)), from_bloch(Bloch(0, 0, -1))}};
    EXPECT_TRUE(hierarchy(orth).skipped);
}

TEST(Bounds, HolevoBoundsMutualInformation) {
    SeededRng rng(73);
    for (int t = 0; t < 100; ++t) {
        Ensemble e = random_ensemble(3, 2, rng);
        auto r = holevo_mutual_check(e, random_povm(2, 4, rng));
        EXPECT_TRUE(r.ok) << r.mi << " " << r.chi;
    }
    // projective measurement of orthogonal pure states attains the bound
    Ensemble orth{RVector::Constant(2, 0.5), {from_bloch(Bloch(0, 0, 1)), from_bloch(Bloch(0, 0, -1))}};
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    EXPECT_NEAR(holevo_mutual_check(orth, {p0, p1}).mi, std::log(2.0), 1e-12);
}

TEST(Bounds, TripleGeometryIdentities) {
    SeededRng rng(74);
    int done = 0;
    for (int t = 0; t < 200 && done < 50; ++t) {
        double a = rng.uniform(), b = rng.uniform(), al = std::numbers::pi * rng.uniform(), be = std::numbers::pi * rng.uniform();
        TripleGeometry g;
        try {
            g = triple_from_params(a, b, al, be);
        } catch (const invalid_input&) {
            continue;
        }
        ++done;
        EXPECT_LT((g.ensemble.average() - from_bloch(g.A)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT(fidelity_sum_identity(g), 1e-12);
        TripleGeometry g0 = triple_from_params(a, b, al, 0.0);
        EXPECT_NEAR(triple_fidelity_product(g0), triple_fidelity_product_closed(a, b, al), 1e-12);
    }
    EXPECT_GT(done, 20);
    EXPECT_THROW(triple_from_params(0.9, 0.1, std::numbers::pi, 0.0), invalid_input);
    EXPECT_THROW(triple_from_params(0.1, 1.5, 0.0, 0.0), invalid_input);
}

TEST(Bounds, BungaMatrixAndHolevo) {
    for (double b : {0.3, 0.7, 1.0})
        for (double F = 0.5 * (1 - b); F <= 0.5 * (1 + b); F += 0.05) {
            auto r = bunga_check(F, b);
            EXPECT_TRUE(r.ok) << F << " " << b;
        }
    // b = 1: three pure states, chi equals S(G)
    for (double F : {0.5, 0.7, 0.9, 1.0}) {
        auto r = bunga_check(F, 1.0);
        EXPECT_NEAR(r.chi, r.s_g, 1e-8);
    }
    EXPECT_THROW(bunga_matrix(0.95, 0.5), invalid_input);
    EXPECT_THROW(bunga_matrix(0.6, 0.0), invalid_input);
}

TEST(Bounds, Gram3EigenvaluesMatchEigensolver) {
    SeededRng rng(75);
    for (int t = 0; t < 100; ++t) {
        double f12 = rng.uniform(), f13 = rng.uniform(), f23 = rng.uniform();
        RMatrix G(3, 3);
        G << 1, std::sqrt(f12), std::sqrt(f13), std::sqrt(f12), 1, std::sqrt(f23), std::sqrt(f13), std::sqrt(f23), 1;
        Eigen::SelfAdjointEigenSolver<RMatrix> es(G / 3.0);
        Eigen::Vector3d a = gram3_eigenvalues(f12, f13, f23);
        std::sort(a.data(), a.data() + 3);
        EXPECT_LT((a - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
    }
}
