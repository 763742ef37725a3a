// bounds.hpp: Holevo quantities and the entropy bounds built from correlation, Gram and
// fidelity matrices; Lindblad-type comparisons; the three-qubit geometry of two pure states
// and one mixed state

#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "qubit.hpp"

namespace qchan {

inline constexpr double kBoundSlack = 1e-9;

// von Neumann: S(avg) - sum p S(rho_i); Tsallis: sum p D^T(rho_i, avg);
// Renyi: 1/(q-1) log tr (sum p rho_i^q)^{1/q}
inline double holevo(const Ensemble& e, const EntropyOrder& o = {}) {
    o.check();
    Matrix avg = e.average();
    if (o.is_shannon()) {
        double s = vn_entropy(avg);
        for (Index i = 0; i < e.size(); ++i) s -= e.probs(i) * vn_entropy(e.states[static_cast<size_t>(i)]);
        return std::max(0.0, s);
    }
    if (o.kind == EntropyKind::tsallis) {
        double s = 0.0;
        for (Index i = 0; i < e.size(); ++i)
            if (e.probs(i) > 0.0) s += e.probs(i) * relative_entropy(e.states[static_cast<size_t>(i)], avg, o);
        return s;
    }
    Matrix m = Matrix::Zero(e.dim(), e.dim());
    for (Index i = 0; i < e.size(); ++i)
        if (e.probs(i) > 0.0) m += e.probs(i) * psd_pow(e.states[static_cast<size_t>(i)], o.q, kPsdTol, 0.0);
    double t = psd_pow(m, 1.0 / o.q, kPsdTol, 0.0).trace().real();
    return std::log(t) / (o.q - 1.0);
}

inline double povm_residual(const KrausList& K) {
    if (K.empty()) throw invalid_input("empty Kraus list");
    Matrix T = Matrix::Zero(K[0].cols(), K[0].cols());
    for (const auto& k : K) T += k.adjoint() * k;
    return max_abs(T - identity(T.rows()));
}

inline void check_povm(const KrausList& K, double tol = kChannelTol) {
    double r = povm_residual(K);
    if (r > tol) throw invalid_channel("identity resolution", r);
}

// sigma_ij = tr K^i rho K^j^dag
inline Matrix correlation_matrix(const Matrix& rho, const KrausList& K) {
    check_povm(K);
    Index m = static_cast<Index>(K.size());
    Matrix s(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            s(i, j) = (K[static_cast<size_t>(i)] * rho * K[static_cast<size_t>(j)].adjoint()).trace();
    return hermitize(s);
}

// sigma_ij = sqrt(p_i p_j) tr sqrt(rho_i) sqrt(rho_j) U_j^dag U_i
inline Matrix correlation_from_ensemble(const Ensemble& e, const std::vector<Matrix>& U) {
    if (static_cast<Index>(U.size()) != e.size()) throw invalid_input("correlation_from_ensemble: one unitary per state");
    std::vector<Matrix> v;
    for (Index i = 0; i < e.size(); ++i) {
        check_unitary(U[static_cast<size_t>(i)]);
        v.push_back(std::sqrt(std::max(0.0, e.probs(i))) * psd_sqrt(e.states[static_cast<size_t>(i)]));
    }
    Index k = e.size();
    Matrix s(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            s(i, j) = (v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)] * U[static_cast<size_t>(j)].adjoint() *
                       U[static_cast<size_t>(i)]).trace();
    return hermitize(s);
}

inline std::vector<Matrix> identities(Index k, Index n) { return std::vector<Matrix>(static_cast<size_t>(k), identity(n)); }

struct Theorem1Result {
    double chi, s_sigma, h_p;
    bool ok;
};

inline Theorem1Result theorem1_check(const Matrix& rho, const KrausList& K, double tol = kBoundSlack) {
    Matrix s = correlation_matrix(rho, K);
    Channel phi(K);
    Ensemble e = output_ensemble(phi, rho);
    Theorem1Result r{holevo(e), vn_entropy(s), classical_entropy(e.probs), false};
    r.ok = r.chi <= r.s_sigma + tol && r.s_sigma <= r.h_p + tol;
    return r;
}

// sum p_i S(rho_i) <= S(rho)
inline double info_gain_slack(const Matrix& rho, const KrausList& K) {
    Ensemble e = output_ensemble(Channel(K), rho);
    double avg = 0.0;
    for (Index i = 0; i < e.size(); ++i) avg += e.probs(i) * vn_entropy(e.states[static_cast<size_t>(i)]);
    return vn_entropy(rho) - avg;
}

inline bool info_gain_check(const Matrix& rho, const KrausList& K, double tol = kBoundSlack) {
    return info_gain_slack(rho, K) >= -tol;
}

struct ConcatReport {
    double lhs;           // S(phi2 phi1 rho) - sum p_i S(phi2 rho_i)
    double holevo_bound;  // S(phi1 rho) - sum p_i S(rho_i)
    double s_sigma_ii;    // entropy of the complementary output of phi2 o phi1
    bool ok;
    double min_slack;
};

inline ConcatReport concat_bound_check(const Channel& phi1, const Channel& phi2, const Matrix& rho, double tol = kBoundSlack) {
    Ensemble e = output_ensemble(phi1, rho);
    Channel c = compose(phi2, phi1);
    double avg2 = 0.0, avg1 = 0.0;
    for (Index i = 0; i < e.size(); ++i) {
        const Matrix& s = e.states[static_cast<size_t>(i)];
        avg2 += e.probs(i) * vn_entropy(phi2.apply(s));
        avg1 += e.probs(i) * vn_entropy(s);
    }
    ConcatReport r{};
    r.lhs = vn_entropy(c.apply(rho)) - avg2;
    r.holevo_bound = vn_entropy(phi1.apply(rho)) - avg1;
    r.s_sigma_ii = exchange_entropy(c, rho);
    r.min_slack = std::min(r.holevo_bound - r.lhs, r.s_sigma_ii - r.lhs);
    r.ok = r.min_slack >= -tol;
    return r;
}

// MAX{S(phi2 phi1 rho*) - sum p_i S(phi2 rho_i), S^map(phi1) + S(phi2 phi1 rho*) - S(phi1 rho*)}
inline double composition_map_entropy_lower(const Channel& phi1, const Channel& phi2) {
    Matrix rs = maximally_mixed(phi1.dim_in());
    Ensemble e = output_ensemble(phi1, rs);
    Channel c = compose(phi2, phi1);
    double out = vn_entropy(c.apply(rs));
    double avg = 0.0;
    for (Index i = 0; i < e.size(); ++i) avg += e.probs(i) * vn_entropy(phi2.apply(e.states[static_cast<size_t>(i)]));
    double first = out - avg;
    double second = map_entropy(phi1) + out - vn_entropy(phi1.apply(rs));
    return std::max(first, second);
}

struct LindbladReport {
    double s_rho, s_out, s_sigma, chi;
    double slack_lower;   // S(sigma) - |S(rho') - S(rho)|
    double slack_upper;   // S(rho') + S(rho) - S(sigma)
    double slack_three;   // S(sigma) + S(rho') - S(rho) - chi
    bool ok;
};

inline LindbladReport lindblad_check(const Matrix& rho, const Channel& phi, double tol = kBoundSlack) {
    LindbladReport r{};
    Matrix out = phi.apply(rho);
    r.s_rho = vn_entropy(rho);
    r.s_out = vn_entropy(out);
    r.s_sigma = exchange_entropy(phi, rho);
    r.chi = holevo(output_ensemble(phi, rho));
    r.slack_lower = r.s_sigma - std::abs(r.s_out - r.s_rho);
    r.slack_upper = r.s_out + r.s_rho - r.s_sigma;
    r.slack_three = r.s_sigma + r.s_out - r.s_rho - r.chi;
    r.ok = std::min({r.slack_lower, r.slack_upper, r.slack_three}) >= -tol;
    return r;
}

// [[l, sqrt(l(1-l)) sqrt F], [.., 1-l]]
inline Matrix sigma_min_two(const Matrix& rho1, const Matrix& rho2, double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw invalid_input("sigma_min_two: lambda must lie in [0,1]");
    double off = std::sqrt(lambda * (1.0 - lambda)) * root_fidelity(rho1, rho2);
    Matrix s(2, 2);
    s << lambda, off, off, 1.0 - lambda;
    return s;
}

enum class FidelityVariant { G, G_over_b, F_squared, layered };

inline double default_b(Index dim) { return dim == 2 ? std::sqrt(3.0) : 2.0; }

// chain of unitaries U_1 = I, U_j = U_{j-1} V_{j-1,j} with sqrt(rho_i) sqrt(rho_j) = |.| V_{i,j};
// neighbours then carry the root fidelity
inline std::vector<Matrix> layered_unitaries(const std::vector<Matrix>& states) {
    std::vector<Matrix> U{identity(states.front().rows())};
    for (size_t j = 1; j < states.size(); ++j) {
        Matrix X = psd_sqrt(states[j - 1]) * psd_sqrt(states[j]);
        U.push_back(U.back() * polar(X).W);
    }
    return U;
}

inline Matrix fidelity_matrix(const Ensemble& e, FidelityVariant v, double b = 0.0, bool regularize_singular = true) {
    e.validate();
    Index k = e.size();
    if (v == FidelityVariant::layered) {
        std::vector<Matrix> st = e.states;
        for (auto& s : st)
            if (min_eig(s) <= 1e-10) {
                if (!regularize_singular) throw singular_matrix("layered matrix: singular state");
                s = regularize(s);
            }
        Ensemble r{e.probs, st};
        return correlation_from_ensemble(r, layered_unitaries(st));
    }
    if (v == FidelityVariant::G_over_b) {
        if (b == 0.0) b = default_b(e.dim());
        if (b < default_b(e.dim()) - 1e-12) throw invalid_input("fidelity_matrix: b below the admissible minimum");
    }
    Matrix G = Matrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
        G(i, i) = e.probs(i);
        for (Index j = i + 1; j < k; ++j) {
            double f = root_fidelity(e.states[static_cast<size_t>(i)], e.states[static_cast<size_t>(j)]);
            double w = std::sqrt(e.probs(i) * e.probs(j));
            double x = v == FidelityVariant::F_squared ? f * f : f;
            if (v == FidelityVariant::G_over_b) x /= b;
            G(i, j) = G(j, i) = w * x;
        }
    }
    return G;
}

// the printed chain formula: sigma_13 = sqrt(p1 p3) tr sqrt(rho3 rho2) rho2^{-1} sqrt(rho2 rho1), generalized
inline Matrix layered_closed_form(const Ensemble& e) {
    Index k = e.size();
    std::vector<Matrix> st = e.states;
    for (auto& s : st)
        if (min_eig(s) <= 1e-10) s = regularize(s);
    Matrix S = Matrix::Zero(k, k);
    for (Index i = 0; i < k; ++i) {
        S(i, i) = e.probs(i);
        Matrix chain = identity(e.dim());
        for (Index j = i + 1; j < k; ++j) {
            if (j > i + 1) chain = herm_inverse(st[static_cast<size_t>(j - 1)], 1e-14) * chain;
            chain = sqrt_product(st[static_cast<size_t>(j)], st[static_cast<size_t>(j - 1)]) * chain;
            cplx v = std::sqrt(e.probs(i) * e.probs(j)) * chain.trace();
            S(i, j) = v;
            S(j, i) = std::conj(v);
        }
    }
    return S;
}

// U_1 = I, U_j aligned with rho_1 through the Uhlmann unitary: Gram matrix of purifications
inline Matrix star_gram(const Ensemble& e) {
    std::vector<Matrix> U{identity(e.dim())};
    for (size_t j = 1; j < e.states.size(); ++j) U.push_back(polar(Matrix(psd_sqrt(e.states[0]) * psd_sqrt(e.states[j]))).W);
    return correlation_from_ensemble(e, U);
}

struct BoundReport {
    double chi = 0, s_sigma = 0, s_gram = 0, s_fid = 0, s_fid_b = 0, s_fid_sq = 0, s_layered = 0, h_p = 0;
    bool normalized = false;
    bool skipped = false;
    double b = 0;
};

inline BoundReport bound_report(const Ensemble& e, double b = 0.0) {
    BoundReport r;
    r.b = b == 0.0 ? default_b(e.dim()) : b;
    r.chi = holevo(e);
    r.h_p = classical_entropy(e.probs);
    r.s_sigma = vn_entropy(correlation_from_ensemble(e, identities(e.size(), e.dim())));
    r.s_gram = vn_entropy(star_gram(e));
    r.s_fid = vn_entropy(fidelity_matrix(e, FidelityVariant::G));
    r.s_fid_b = vn_entropy(fidelity_matrix(e, FidelityVariant::G_over_b, r.b));
    r.s_fid_sq = vn_entropy(fidelity_matrix(e, FidelityVariant::F_squared));
    r.s_layered = vn_entropy(fidelity_matrix(e, FidelityVariant::layered));
    return r;
}

// (x - chi) / (H(P) - chi); trials with H(P) - chi < 1e-10 are flagged and left unnormalized
inline BoundReport hierarchy(const Ensemble& e, double b = 0.0) {
    BoundReport r = bound_report(e, b);
    double d = r.h_p - r.chi;
    if (d < 1e-10) {
        r.skipped = true;
        return r;
    }
    auto nz = [&](double x) { return (x - r.chi) / d; };
    r.s_sigma = nz(r.s_sigma);
    r.s_gram = nz(r.s_gram);
    r.s_fid = nz(r.s_fid);
    r.s_fid_b = nz(r.s_fid_b);
    r.s_fid_sq = nz(r.s_fid_sq);
    r.s_layered = nz(r.s_layered);
    r.chi = 0.0;
    r.h_p = 1.0;
    r.normalized = true;
    return r;
}

struct HolevoMutual {
    double mi, chi;
    bool ok;
};

// p(x,y) = p_x tr K^y^dag K^y rho_x
inline HolevoMutual holevo_mutual_check(const Ensemble& e, const KrausList& K, double tol = kBoundSlack) {
    check_povm(K);
    RMatrix J(e.size(), static_cast<Index>(K.size()));
    for (Index x = 0; x < e.size(); ++x)
        for (Index y = 0; y < J.cols(); ++y) {
            const Matrix& k = K[static_cast<size_t>(y)];
            J(x, y) = e.probs(x) * (k.adjoint() * k * e.states[static_cast<size_t>(x)]).trace().real();
        }
    J = J.cwiseMax(0.0);
    J /= J.sum();
    HolevoMutual r{mutual_information_classical(J), holevo(e), false};
    r.ok = r.mi <= r.chi + tol;
    return r;
}

struct ConjectureReport {
    long trials = 0;
    long violations = 0;
    double max_excess = -kInf;  // max of chi - S(G)
};

// counts chi > S(G) + tol over random ensembles of k states in dimension n; trial t uses stream t
inline ConjectureReport conjecture_fuzz(Index k, Index n, long trials, std::uint64_t seed, bool pure = false,
                                        double tol = kBoundSlack) {
    ConjectureReport r;
    for (long t = 0; t < trials; ++t) {
        SeededRng rng(seed, static_cast<std::uint64_t>(t));
        Ensemble e = pure ? random_pure_ensemble(k, n, rng) : random_ensemble(k, n, rng);
        double x = holevo(e) - vn_entropy(fidelity_matrix(e, FidelityVariant::G));
        r.max_excess = std::max(r.max_excess, x);
        ++r.trials;
        if (x > tol) ++r.violations;
    }
    return r;
}

struct IndefiniteSearch {
    bool found = false;
    long tried = 0;
    double min_eig = kInf;
    Ensemble ensemble;
};

// random pure ensembles of k states until the fidelity matrix has a negative eigenvalue
inline IndefiniteSearch find_indefinite_g(Index k, Index n, long max_trials, std::uint64_t seed, double tol = 1e-10) {
    IndefiniteSearch r;
    for (long t = 0; t < max_trials; ++t) {
        SeededRng rng(seed, static_cast<std::uint64_t>(t));
        Ensemble e = random_pure_ensemble(k, n, rng);
        double m = herm_eigenvalues(fidelity_matrix(e, FidelityVariant::G))(0);
        ++r.tried;
        if (m < r.min_eig) {
            r.min_eig = m;
            r.ensemble = e;
        }
        if (m < -tol) {
            r.found = true;
            break;
        }
    }
    return r;
}

inline Eigen::Matrix3d rot_x(double a) {
    Eigen::Matrix3d R;
    R << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    return R;
}
inline Eigen::Matrix3d rot_y(double a) {
    Eigen::Matrix3d R;
    R << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return R;
}
inline Eigen::Matrix3d rot_z(double a) {
    Eigen::Matrix3d R;
    R << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return R;
}

struct TripleGeometry {
    double a, b, alpha, beta, gamma, nu;
    Bloch A, B, C, D, E, F, G;
    Ensemble ensemble;  // rho_1 = F (pure), rho_2 = G (pure), rho_3 = B (mixed), uniform weights
};

inline TripleGeometry triple_from_params(double a, double b, double alpha, double beta) {
    if (a < 0.0 || b < 0.0 || b > 1.0) throw invalid_input("triple_from_params: lengths out of range");
    if (alpha < 0.0 || alpha > std::numbers::pi || beta < 0.0 || beta > std::numbers::pi)
        throw invalid_input("triple_from_params: angles must lie in [0, pi]");
    if (0.5 * std::sqrt(std::max(0.0, 9 * a * a - 6 * a * b * std::cos(alpha) + b * b)) > 1.0 + 1e-12)
        throw invalid_input("triple_from_params: the midpoint of the pure pair leaves the Bloch ball");
    TripleGeometry g{};
    g.a = a;
    g.b = b;
    g.alpha = alpha;
    g.beta = beta;
    g.A = Bloch(0, 0, a);
    g.B = Bloch(0, b * std::sin(alpha), b * std::cos(alpha));
    g.C = 0.5 * (3.0 * g.A - g.B);
    double c = std::min(1.0, g.C.norm());
    g.gamma = std::acos(c);
    g.nu = c > 0.0 ? std::atan2(-g.C(1), g.C(2)) : 0.0;
    Bloch z(0, 0, 1);
    g.D = rot_x(g.nu - g.gamma) * z;
    g.E = rot_x(g.nu + g.gamma) * z;
    Eigen::Matrix3d U = rot_z(-std::numbers::pi / 2) * rot_y(g.nu) * rot_z(beta) * rot_y(g.nu).transpose() *
                        rot_z(-std::numbers::pi / 2).transpose();
    g.F = U * g.D;
    g.G = U * g.E;
    g.ensemble.probs = RVector::Constant(3, 1.0 / 3.0);
    g.ensemble.states = {from_bloch(g.F), from_bloch(g.G), from_bloch(g.B)};
    return g;
}

// |F12 + F13 + F23 - (9 tr avg^2 - tr rho_3^2 - 2)/2|
inline double fidelity_sum_identity(const TripleGeometry& g) {
    const auto& s = g.ensemble.states;
    double sum = fidelity_qubit_bloch(g.F, g.G) + fidelity_qubit_bloch(g.F, g.B) + fidelity_qubit_bloch(g.G, g.B);
    Matrix avg = g.ensemble.average();
    return std::abs(sum - 0.5 * (9.0 * purity(avg) - purity(s[2]) - 2.0));
}

// product of the three fidelities at beta = 0 in closed form
inline double triple_fidelity_product_closed(double a, double b, double alpha) {
    double ca = std::cos(alpha), sa = std::sin(alpha);
    double m = 9 * a * a - 6 * a * b * ca + b * b;
    double t = b * b - 3 * a * b * ca - 2;
    return m * t * t / 64.0 + 9 * a * a * b * b * (m - 4) * sa * sa / 64.0;
}

inline double triple_fidelity_product(const TripleGeometry& g) {
    return fidelity_qubit_bloch(g.F, g.G) * fidelity_qubit_bloch(g.F, g.B) * fidelity_qubit_bloch(g.G, g.B);
}

// two-pure-one-mixed matrix with fidelity parameter F and mixed-state Bloch length b
inline Matrix bunga_matrix(double F, double b) {
    if (b < 0.0 || b > 1.0) throw invalid_input("bunga: b must lie in [0,1]");
    if (F < 0.5 * (1.0 - b) - 1e-12 || F > 0.5 * (1.0 + b) + 1e-12) throw invalid_input("bunga: F outside [(1-b)/2, (1+b)/2]");
    double d = std::abs(2.0 * F - 1.0);
    double corner;
    if (b == 0.0) {
        if (d > 1e-12) throw invalid_input("bunga: b = 0 requires F = 1/2");
        corner = 0.0;
    } else {
        corner = d / b;
    }
    double r = std::sqrt(std::max(0.0, F));
    Matrix G(3, 3);
    G << 1, r, corner, r, 1, r, corner, r, 1;
    return G / 3.0;
}

inline double bunga_chi(double F, double b) {
    double a = b > 0.0 ? std::abs((b + 2.0 * (2.0 * F - 1.0) / b) / 3.0) : 0.0;
    return entropy_of_qubit_radius(a, {}) - entropy_of_qubit_radius(b, {}) / 3.0;
}

struct BungaResult {
    double chi, s_g;
    bool ok;
};

inline BungaResult bunga_check(double F, double b, double tol = kBoundSlack) {
    Matrix G = bunga_matrix(F, b);
    BungaResult r{bunga_chi(F, b), vn_entropy(G), false};
    r.ok = r.chi <= r.s_g + tol;
    return r;
}

// eigenvalues of (1/3)[[1, sqrt f12, sqrt f13], [.., 1, sqrt f23], [.., .., 1]] by the trigonometric root formula
inline Eigen::Vector3d gram3_eigenvalues(double f12, double f13, double f23) {
    double p = -(f12 + f13 + f23) / 9.0;
    double q = 2.0 * std::sqrt(std::max(0.0, f12 * f13 * f23)) / 27.0;
    Eigen::Vector3d ev;
    if (p > -1e-300) {
        ev.setConstant(1.0 / 3.0);
        return ev;
    }
    double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    for (int k = 0; k < 3; ++k)
        ev(k) = 1.0 / 3.0 - 2.0 * std::sqrt(-p / 3.0) * std::cos(std::acos(arg) / 3.0 + 2.0 * std::numbers::pi * k / 3.0);
    std::sort(ev.data(), ev.data() + 3);
    return ev;
}

} // namespace qchan
