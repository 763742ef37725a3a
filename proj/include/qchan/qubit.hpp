// qubit.hpp: one-qubit channels in Bloch form, Pauli and depolarizing families, minimal
// output entropy, the (S_q^map, S_q^min) scatter, sandwich bounds, the additivity region,
// S^min-preserving transformations and the maximal output 2-norm

#pragma once

#include <array>
#include <string>
#include <vector>

#include "optimize.hpp"
#include "sampling.hpp"

namespace qchan {

// r -> T r + t
struct BlochAffine {
    Eigen::Matrix3d T;
    Eigen::Vector3d t;
};

inline BlochAffine bloch_affine(const Channel& phi) {
    if (phi.dim_in() != 2 || phi.dim_out() != 2) throw invalid_input("bloch_affine: qubit channel required");
    const auto& s = paulis();
    BlochAffine b;
    Matrix c = phi.apply(s[0]);
    for (int i = 0; i < 3; ++i) b.t(i) = 0.5 * (s[i + 1] * c).trace().real();
    for (int j = 0; j < 3; ++j) {
        Matrix o = phi.apply(s[j + 1]);
        for (int i = 0; i < 3; ++i) b.T(i, j) = 0.5 * (s[i + 1] * o).trace().real();
    }
    return b;
}

// superoperator of the affine map r -> T r + t
inline Matrix superoperator_from_bloch(const Eigen::Matrix3d& T, const Eigen::Vector3d& t) {
    const auto& s = paulis();
    auto image = [&](const Matrix& X) {
        // X = x0 I + x.sigma, x0 = tr X / 2
        cplx x0 = 0.5 * X.trace();
        Eigen::Vector3cd x;
        for (int i = 0; i < 3; ++i) x(i) = 0.5 * (s[i + 1] * X).trace();
        Eigen::Vector3cd y = T.cast<cplx>() * x + x0 * t.cast<cplx>();
        Matrix out = x0 * s[0];
        for (int i = 0; i < 3; ++i) out += y(i) * s[i + 1];
        return out;
    };
    Matrix S(4, 4);
    for (Index k = 0; k < 2; ++k)
        for (Index l = 0; l < 2; ++l) {
            Matrix E = Matrix::Zero(2, 2);
            E(k, l) = 1.0;
            Matrix o = image(E);
            for (Index i = 0; i < 2; ++i)
                for (Index j = 0; j < 2; ++j) S(i * 2 + j, k * 2 + l) = o(i, j);
        }
    return S;
}

struct QubitChannelParams {
    Eigen::Vector3d eta;
    Eigen::Vector3d kappa;
};

inline Channel qubit_channel(const QubitChannelParams& q) {
    for (int i = 0; i < 3; ++i)
        if (std::abs(q.eta(i)) > 1.0 + 1e-12) throw invalid_input("qubit_channel: |eta_i| must not exceed 1");
    return from_superoperator(superoperator_from_bloch(q.eta.asDiagonal(), q.kappa));
}

// Kraus sqrt(p_i) sigma_i
inline Channel pauli_channel(const RVector& p) {
    if (p.size() != 4) throw invalid_input("pauli_channel: four weights required");
    RVector w = clean_probs(p);
    KrausList K;
    for (int i = 0; i < 4; ++i)
        if (w(i) > 0.0) K.push_back(std::sqrt(w(i)) * paulis()[static_cast<size_t>(i)]);
    return Channel(std::move(K));
}

// edges of the asymmetric tetrahedron with vertices A = (1,0,0,0), B = (1/2,1/2,0,0),
// C = (1/3,1/3,1/3,0), D = (1/4,1/4,1/4,1/4); u in [0,1] runs from the first vertex to the second
enum class Edge { AB, BD, AD, CD };

inline RVector tetra_vertex(char v) {
    RVector p(4);
    switch (v) {
    case 'A': p << 1, 0, 0, 0; break;
    case 'B': p << 0.5, 0.5, 0, 0; break;
    case 'C': p << 1.0 / 3, 1.0 / 3, 1.0 / 3, 0; break;
    case 'D': p << 0.25, 0.25, 0.25, 0.25; break;
    default: throw invalid_input("unknown tetrahedron vertex");
    }
    return p;
}

inline const char* edge_name(Edge e) {
    switch (e) {
    case Edge::AB: return "AB";
    case Edge::BD: return "BD";
    case Edge::AD: return "AD";
    case Edge::CD: return "CD";
    }
    return "";
}

inline RVector edge_point(Edge e, double u) {
    if (u < 0.0 || u > 1.0) throw invalid_input("edge parameter must lie in [0,1]");
    std::string n = edge_name(e);
    return (1.0 - u) * tetra_vertex(n[0]) + u * tetra_vertex(n[1]);
}

inline std::array<Edge, 4> tetrahedron_edges() { return {Edge::AB, Edge::BD, Edge::AD, Edge::CD}; }

// weyl operators X^a Z^b
inline Matrix weyl(Index n, Index a, Index b) {
    Matrix W = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>(b * j) / static_cast<double>(n);
        W((j + a) % n, j) = std::polar(1.0, ang);
    }
    return W;
}

// (1-s) rho + s I/N
inline Channel depolarizing(Index n, double s) {
    if (n < 1) throw invalid_input("depolarizing: dimension must be positive");
    if (s < 0.0 || s > 1.0) throw invalid_input("depolarizing: mixing weight must lie in [0,1]");
    double nn = static_cast<double>(n * n);
    KrausList K{std::sqrt(1.0 - s + s / nn) * identity(n)};
    if (s > 0.0)
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                if (a || b) K.push_back(std::sqrt(s / nn) * weyl(n, a, b));
    return Channel(std::move(K));
}

// Renyi-2 minimal output entropy of a depolarizing channel with Renyi-2 map entropy s_map
inline double smin_from_smap(double s_map, Index n) {
    double nd = static_cast<double>(n);
    if (n < 1 || s_map < -1e-12 || s_map > 2.0 * std::log(nd) + 1e-12)
        throw invalid_input("smin_from_smap: map entropy outside [0, 2 log N]");
    return -std::log((1.0 + nd * std::exp(-s_map)) / (nd + 1.0));
}

struct MinOutput {
    double value;
    Matrix minimizer;  // pure input state
};

// max over unit n of |T n + t|, grid then Nelder-Mead in (theta, phi)
inline std::pair<double, Eigen::Vector3d> max_bloch_image(const BlochAffine& b, int grid = 20000) {
    auto len = [&](const Eigen::Vector3d& n) { return (b.T * n + b.t).norm(); };
    Eigen::Vector3d best = Eigen::Vector3d::UnitZ();
    double bv = -1.0;
    for (const auto& n : fibonacci_sphere(grid)) {
        double v = len(n);
        if (v > bv) {
            bv = v;
            best = n;
        }
    }
    RVector x0(2);
    x0 << std::acos(std::clamp(best(2), -1.0, 1.0)), std::atan2(best(1), best(0));
    auto r = nelder_mead([&](const RVector& x) { return -len(sphere_point(x(0), x(1))); }, x0, 0.02, 1e-15);
    Eigen::Vector3d n = sphere_point(r.x(0), r.x(1));
    if (-r.value < bv) return {bv, best};
    return {-r.value, n};
}

inline Matrix pure_from_bloch(const Eigen::Vector3d& n) { return from_bloch(n / n.norm()); }

inline double entropy_of_qubit_radius(double r, const EntropyOrder& o) {
    r = std::clamp(r, 0.0, 1.0);
    RVector ev(2);
    ev << 0.5 * (1.0 + r), 0.5 * (1.0 - r);
    return entropy_of_weights(ev, o);
}

// pure input as a complex unit vector from 2N reals
inline Vector unpack_state(const RVector& x, Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = cplx(x(2 * i), x(2 * i + 1));
    double nv = v.norm();
    return nv > 0.0 ? Vector(v / nv) : Vector(Vector::Unit(n, 0));
}

inline MinOutput min_output_entropy(const Channel& phi, const EntropyOrder& o = {}, std::uint64_t seed = 7) {
    o.check();
    if (phi.dim_in() == 2 && phi.dim_out() == 2) {
        // every entropy decreases with the output Bloch radius
        auto [r, n] = max_bloch_image(bloch_affine(phi));
        return {std::max(0.0, entropy_of_qubit_radius(r, o)), pure_from_bloch(n)};
    }
    Index n = phi.dim_in();
    auto f = [&](const RVector& x) { return vn_entropy(phi.apply(projector(unpack_state(x, n))), o); };
    SeededRng rng(seed, 0x6d696e);
    MinOutput best{kInf, Matrix()};
    int starts = 12 + 4 * static_cast<int>(n);
    for (int s = 0; s < starts; ++s) {
        RVector x0(2 * n);
        if (s < n) {
            x0.setZero();
            x0(2 * s) = 1.0;
        } else {
            Vector v = random_pure(n, rng);
            for (Index i = 0; i < n; ++i) {
                x0(2 * i) = v(i).real();
                x0(2 * i + 1) = v(i).imag();
            }
        }
        auto r = nelder_mead(f, x0, 0.1, 1e-14, 6000);
        r = nelder_mead(f, r.x, 0.01, 1e-15, 6000);
        if (r.value < best.value) best = {r.value, projector(unpack_state(r.x, n))};
    }
    best.value = std::max(0.0, best.value);
    return best;
}

// largest eigenvalue of the output maximized over pure inputs
inline double max_output_2norm(const Channel& phi, std::uint64_t seed = 11) {
    if (phi.dim_in() == 2 && phi.dim_out() == 2) return 0.5 * (1.0 + max_bloch_image(bloch_affine(phi)).first);
    // alternate: psi <- top eigenvector of Phi*(|phi><phi|), phi <- top eigenvector of Phi(|psi><psi|)
    Index n = phi.dim_in();
    SeededRng rng(seed, 0x326e6f);
    auto top = [](const Matrix& H) {
        auto e = herm_eig(H);
        return std::pair<double, Vector>(e.values(e.values.size() - 1), e.vectors.col(e.vectors.cols() - 1));
    };
    auto dual = [&](const Matrix& Y) {
        Matrix out = Matrix::Zero(n, n);
        for (const auto& k : phi.kraus()) out += k.adjoint() * Y * k;
        return out;
    };
    double best = 0.0;
    int starts = 24 + 8 * static_cast<int>(n);
    for (int s = 0; s < starts; ++s) {
        Vector psi = s < n ? Vector(Vector::Unit(n, s)) : random_pure(n, rng);
        double prev = -1.0;
        for (int it = 0; it < 2000; ++it) {
            auto [lam, out] = top(phi.apply(projector(psi)));
            psi = top(dual(projector(out))).second;
            if (lam - prev < 1e-15) {
                prev = std::max(prev, lam);
                break;
            }
            prev = lam;
        }
        best = std::max(best, prev);
    }
    return best;
}

struct ScatterPoint {
    double s_map;
    double s_min;
    double q;
    std::string tag;
};

inline ScatterPoint scatter_point(const Channel& phi, double q, const std::string& tag) {
    EntropyOrder o = q == 1.0 ? EntropyOrder::vn() : EntropyOrder::renyi(q);
    return {map_entropy(phi, o), min_output_entropy(phi, o).value, q, tag};
}

// Pauli channel Bloch form: eta_i = p0 + p_i - p_j - p_k
inline Eigen::Vector3d pauli_eta(const RVector& p) {
    return {p(0) + p(1) - p(2) - p(3), p(0) - p(1) + p(2) - p(3), p(0) - p(1) - p(2) + p(3)};
}

// fast exact (S_q^map, S_q^min) of a Pauli channel
inline ScatterPoint pauli_scatter_point(const RVector& p, double q, const std::string& tag) {
    EntropyOrder o = q == 1.0 ? EntropyOrder::vn() : EntropyOrder::renyi(q);
    double r = pauli_eta(p).cwiseAbs().maxCoeff();
    return {entropy_of_weights(p.cwiseMax(0.0), o), entropy_of_qubit_radius(r, o), q, tag};
}

inline std::vector<ScatterPoint> scatter(const std::vector<Channel>& family, double q, const std::string& tag) {
    std::vector<ScatterPoint> pts;
    for (const auto& phi : family) pts.push_back(scatter_point(phi, q, tag));
    return pts;
}

// S_min on an edge at the point where its S_map equals s (bisection on the edge parameter);
// NaN if the edge does not reach s
inline double edge_smin_at(Edge e, double s_map, double q) {
    auto at = [&](double u) { return pauli_scatter_point(edge_point(e, u), q, ""); };
    double lo = 0.0, hi = 1.0;
    double a = at(lo).s_map, b = at(hi).s_map;
    bool inc = b > a;
    if (s_map < std::min(a, b) - 1e-12 || s_map > std::max(a, b) + 1e-12) return std::nan("");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double v = at(mid).s_map;
        if ((v < s_map) == inc) lo = mid;
        else hi = mid;
    }
    return at(0.5 * (lo + hi)).s_min;
}

struct Envelope {
    double lower;
    double upper;
};

// q = 2 envelope of the Pauli set: upper edge AD, lower AB (S_min = 0) then BD
inline Envelope pauli_envelope(double s_map, double q = 2.0) {
    double up = edge_smin_at(Edge::AD, s_map, q);
    double lo = s_map <= pauli_scatter_point(tetra_vertex('B'), q, "").s_map + 1e-15 ? 0.0 : edge_smin_at(Edge::BD, s_map, q);
    return {lo, up};
}

struct SandwichReport {
    double lower, middle, upper;
    double lower_t2, middle_t2, upper_t2;
    double renyi2_lower, middle_r2;
    bool ok;
    double min_slack;
};

inline Vector max_entangled(Index n) {
    Vector v = Vector::Zero(n * n);
    for (Index i = 0; i < n; ++i) v(i * n + i) = 1.0;
    return v / std::sqrt(static_cast<double>(n));
}

inline double renyi2_lower(const Channel& phi1, const Channel& phi2) {
    auto r2 = EntropyOrder::renyi(2.0);
    return -std::log(1.0 - std::abs(std::exp(-map_entropy(phi1, r2)) - std::exp(-map_entropy(phi2, r2))));
}

// |S^map(1) - S^map(2)| <= S((1 (x) 2)(phi+)) <= S^map(1) + S^map(2), von Neumann and Tsallis-2,
// plus the Renyi-2 lower bound
inline SandwichReport sandwich_check(const Channel& phi1, const Channel& phi2, double tol = 1e-9) {
    if (phi1.dim_in() != phi2.dim_in()) throw invalid_input("sandwich_check: channels must share the input dimension");
    Matrix out = tensor(phi1, phi2).apply(projector(max_entangled(phi1.dim_in())));
    SandwichReport r{};
    auto t2 = EntropyOrder::tsallis(2.0);
    double a = map_entropy(phi1), b = map_entropy(phi2);
    r.lower = std::abs(a - b);
    r.middle = vn_entropy(out);
    r.upper = a + b;
    double at = map_entropy(phi1, t2), bt = map_entropy(phi2, t2);
    r.lower_t2 = std::abs(at - bt);
    r.middle_t2 = vn_entropy(out, t2);
    r.upper_t2 = at + bt;
    r.renyi2_lower = renyi2_lower(phi1, phi2);
    r.middle_r2 = vn_entropy(out, EntropyOrder::renyi(2.0));
    r.min_slack = std::min({r.middle - r.lower, r.upper - r.middle, r.middle_t2 - r.lower_t2, r.upper_t2 - r.middle_t2,
                            r.middle_r2 - r.renyi2_lower});
    r.ok = r.min_slack >= -tol;
    return r;
}

inline bool additivity_region(double s1, double s2, Index n, Index m) {
    double nm = static_cast<double>(n * m);
    return 1.0 - (nm + 1.0) / nm * std::abs(std::exp(-s1) - std::exp(-s2)) <= std::exp(-(s1 + s2));
}

inline bool additivity_region(const Channel& phi1, const Channel& phi2) {
    auto r2 = EntropyOrder::renyi(2.0);
    return additivity_region(map_entropy(phi1, r2), map_entropy(phi2, r2), phi1.dim_in(), phi2.dim_in());
}

// U with U|0> = (sqrt p, sqrt(1-p)); its superoperator is the rotation of the construction
inline Matrix rotation_unitary(double p) {
    Matrix U(2, 2);
    double a = std::sqrt(p), b = std::sqrt(1.0 - p);
    U << a, -b, b, a;
    return U;
}

inline Matrix rotation_superoperator(double p) {
    Matrix U = rotation_unitary(p);
    return kron(U, U.conjugate());
}

inline Matrix ellipsoid_superoperator(const Eigen::Vector3d& eta) {
    Matrix S = Matrix::Zero(4, 4);
    S(0, 0) = 1.0;
    S(0, 3) = 1.0 - eta(2);
    S(3, 3) = eta(2);
    S(1, 1) = S(2, 2) = 0.5 * (eta(0) + eta(1));
    S(1, 2) = S(2, 1) = 0.5 * (eta(0) - eta(1));
    return S;
}

inline Matrix direction_superoperator(double t, double n, double p) {
    const cplx i(0, 1);
    double a = std::sqrt((1.0 - p) / p), b = std::sqrt(p / (1.0 - p));
    Matrix S(4, 4);
    S << a * t, -t, -t, b * t,
         i * a * n, -i * n, -i * n, i * b * n,
         -i * a * n, i * n, i * n, -i * b * n,
         -a * t, t, t, -b * t;
    return 0.5 * S;
}

// Phi2 = Phi1 Rot Ell Rot^T + Dir; phi1 must have its minimizer at the real state rho_p
inline Channel preserve_smin(const Channel& phi1, const Eigen::Vector3d& eta, double t, double n, double p) {
    if (phi1.dim_in() != 2 || phi1.dim_out() != 2) throw invalid_input("preserve_smin: qubit channel required");
    if (!(p > 0.0 && p < 1.0)) throw invalid_input("preserve_smin: p must lie in (0,1)");
    Matrix ell = ellipsoid_superoperator(eta);
    auto er = is_cptp(ell);
    if (!er.cp) throw invalid_channel("complete positivity", er.min_choi_eig);
    Matrix R = rotation_superoperator(p);
    Matrix S = phi1.superoperator() * R * ell * R.transpose() + direction_superoperator(t, n, p);
    auto rep = is_cptp(S);
    if (!rep.tp) throw invalid_channel("trace preservation", rep.tp_residual);
    if (!rep.cp) throw invalid_channel("complete positivity", rep.min_choi_eig);
    return from_superoperator(S);
}

// Phi o V with V unitary sending rho_p to the minimizer of Phi
inline std::pair<Channel, double> align_minimizer(const Channel& phi, double p) {
    Matrix m = min_output_entropy(phi).minimizer;
    auto e = herm_eig(m);
    Vector v = e.vectors.col(1);
    Matrix Wm(2, 2);
    Wm.col(0) = v;
    Wm(0, 1) = -std::conj(v(1));
    Wm(1, 1) = std::conj(v(0));
    Matrix V = Wm * rotation_unitary(p).adjoint();
    return {compose(phi, unitary_channel(V)), p};
}

} // namespace qchan
