// davies.hpp: Davies maps of a qubit and the zero-frequency block of a qutrit:
// validity, semigroup membership, minimal output entropy, the set of embeddable blocks

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qubit.hpp"

namespace qchan {

inline constexpr double kDaviesTol = 1e-12;

// a: jump weight, c: coherence damping, p: occupation of the ground level
struct DaviesQubit {
    double a, c, p;

    double b() const { return a * p / (1.0 - p); }

    void validate() const {
        if (!(p > 0.0 && p < 1.0)) throw invalid_input("davies qubit: 0 < p < 1 violated");
        if (!(a >= 0.0 && a < 1.0)) throw invalid_input("davies qubit: 0 <= a < 1 violated");
        if (!(a + p < 1.0)) throw invalid_input("davies qubit: a + p < 1 violated");
        if (!(c > 0.0)) throw invalid_input("davies qubit: c > 0 violated");
        if (c > std::sqrt(1.0 - a / (1.0 - p)) + kDaviesTol)
            throw invalid_input("davies qubit: c <= sqrt(1 - a/(1-p)) violated");
    }
};

// A: population relaxation, gamma: dephasing, 2 gamma >= A
struct DaviesRates {
    double A, gamma, t, p;

    void validate() const {
        if (A < 0.0 || gamma < 0.0 || t < 0.0) throw invalid_input("davies rates: A, gamma, t must be nonnegative");
        if (2.0 * gamma < A - kDaviesTol) throw invalid_input("davies rates: 2 gamma >= A violated");
        if (!(p > 0.0 && p < 1.0)) throw invalid_input("davies rates: 0 < p < 1 violated");
    }
};

inline DaviesQubit from_rates(const DaviesRates& r) {
    r.validate();
    return {(1.0 - r.p) * (1.0 - std::exp(-r.A * r.t)), std::exp(-r.gamma * r.t), r.p};
}

inline double occupation(double energy_gap, double beta) { return 1.0 / (1.0 + std::exp(-beta * energy_gap)); }

inline Matrix qubit_davies_superoperator(const DaviesQubit& d) {
    d.validate();
    double a = d.a, b = d.b(), c = d.c;
    Matrix S = Matrix::Zero(4, 4);
    S(0, 0) = 1.0 - a;
    S(0, 3) = b;
    S(3, 0) = a;
    S(3, 3) = 1.0 - b;
    S(1, 1) = c;
    S(2, 2) = c;
    return S;
}

inline Channel qubit_superoperator(const DaviesQubit& d) { return from_superoperator(qubit_davies_superoperator(d)); }

inline QubitChannelParams bloch_params(const DaviesQubit& d) {
    d.validate();
    QubitChannelParams q;
    q.eta = Eigen::Vector3d(d.c, d.c, 1.0 - d.a / (1.0 - d.p));
    q.kappa = Eigen::Vector3d(0.0, 0.0, d.a * (2.0 * d.p - 1.0) / (1.0 - d.p));
    return q;
}

// generator with population rate alpha and coherence eigenvalue lambda
inline Matrix qubit_generator(double alpha, double lambda, double p) {
    double r = alpha * p / (1.0 - p);
    Matrix L = Matrix::Zero(4, 4);
    L(0, 0) = -alpha;
    L(0, 3) = r;
    L(3, 0) = alpha;
    L(3, 3) = -r;
    L(1, 1) = lambda;
    L(2, 2) = lambda;
    return L;
}

// alpha = A (1-p) reproduces a = (1-p)(1 - exp(-A t)) at time t
inline Matrix qubit_generator(const DaviesRates& r) {
    r.validate();
    return qubit_generator(r.A * (1.0 - r.p), -r.gamma, r.p);
}

struct DaviesMinimizer {
    double mu;         // input sqrt(mu)|0> + sqrt(1-mu)|1>
    double s_min;
    bool interior;     // stationary point inside (0,1)
    bool fallback;     // degenerate denominator, optimizer used
};

inline double davies_output_entropy(const DaviesQubit& d, double mu) {
    Vector v(2);
    v << std::sqrt(std::clamp(mu, 0.0, 1.0)), std::sqrt(std::clamp(1.0 - mu, 0.0, 1.0));
    return vn_entropy(qubit_superoperator(d).apply(projector(v)));
}

// maximize |output Bloch|^2 = c^2 (1 - z^2) + (eta3 z + kappa3)^2 over z = 2 mu - 1
inline DaviesMinimizer qubit_minimizer(const DaviesQubit& d) {
    auto q = bloch_params(d);
    double c = d.c, e3 = q.eta(2), k3 = q.kappa(2);
    double den = c * c - e3 * e3;
    DaviesMinimizer r{0.0, 0.0, false, false};
    auto radius2 = [&](double z) { return c * c * (1.0 - z * z) + (e3 * z + k3) * (e3 * z + k3); };
    if (std::abs(den) < 1e-12) {
        r.fallback = true;
        auto m = min_output_entropy(qubit_superoperator(d));
        double z = std::clamp(to_bloch(m.minimizer)(2), -1.0, 1.0);
        r.mu = 0.5 * (1.0 + z);
        r.s_min = m.value;
        return r;
    }
    double z = k3 >= 0.0 ? 1.0 : -1.0;
    if (den > 0.0) {
        double zs = e3 * k3 / den;
        if (std::abs(zs) < 1.0) {
            z = zs;
            r.interior = true;
        }
    }
    if (!r.interior && radius2(-z) > radius2(z)) z = -z;
    r.mu = 0.5 * (1.0 + z);
    r.s_min = entropy_of_qubit_radius(std::sqrt(std::max(0.0, radius2(z))), {});
    return r;
}

// the printed form: mu = 0 when c^2 <= (1-a-b)(1-2b), else the stationary point
inline double qubit_minimizer_mu_printed(const DaviesQubit& d) {
    double a = d.a, b = d.b(), c = d.c;
    if (c * c <= (1.0 - a - b) * (1.0 - 2.0 * b)) return 0.0;
    return ((a + b - 1.0) * (2.0 * b - 1.0) - c * c) / (2.0 * (a + b - 1.0) * (a + b - 1.0) - 2.0 * c * c);
}

// largest output eigenvalue over all inputs
inline double qubit_max_norm(const DaviesQubit& d) {
    auto q = bloch_params(d);
    double e1 = q.eta(0), e3 = q.eta(2), k3 = q.kappa(2);
    double den = e1 * e1 - e3 * e3;
    if (den > 1e-12) {
        double zs = e3 * k3 / den;
        if (std::abs(zs) <= 1.0) return 0.5 * (1.0 + std::sqrt(e1 * e1 + k3 * k3 * e1 * e1 / den));
    }
    if (std::abs(den) <= 1e-12 && std::abs(k3) > 1e-12) return max_output_2norm(qubit_superoperator(d));
    return 0.5 * (1.0 + std::max(std::abs(e3 + k3), std::abs(-e3 + k3)));
}

// off-diagonal generator entries must be nonnegative
struct DaviesGeneratorBlock {
    RMatrix L;
    double l21() const { return L(1, 0); }
    double l31() const { return L(2, 0); }
    double l32() const { return L(2, 1); }
    bool valid(double tol = 1e-12) const { return l21() >= -tol && l31() >= -tol && l32() >= -tol; }
};

struct DaviesQutritBlock {
    RMatrix F;                   // column-stochastic zero-frequency block
    Eigen::Vector3d p;           // Gibbs weights
    Eigen::Vector3d mu{0, 0, 0}; // coherence damping of levels (1,2), (1,3), (2,3)
    std::optional<Eigen::Vector3d> energies;
    std::optional<double> beta;

    double f(int i, int j) const { return F(i - 1, j - 1); }

    // F_ij p_j = F_ji p_i
    double detailed_balance_defect() const {
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(F(i, j) * p(j) - F(j, i) * p(i)));
        return m;
    }

    void validate() const {
        check_stochastic3(F);
        if (p.minCoeff() <= 0.0 || std::abs(p.sum() - 1.0) > 1e-10) throw invalid_input("davies qutrit: invalid Gibbs weights");
        double db = detailed_balance_defect();
        if (db > 1e-10) throw invalid_input("davies qutrit: detailed balance violated (" + std::to_string(db) + ")");
    }
};

inline Eigen::Vector3d gibbs_weights(const Eigen::Vector3d& energies, double beta) {
    Eigen::Vector3d w = (-beta * energies.array()).exp();
    return w / w.sum();
}

// from the free entries F21, F31, F32; the upper ones follow by detailed balance
inline DaviesQutritBlock qutrit_block(double f21, double f31, double f32, const Eigen::Vector3d& p,
                                      const Eigen::Vector3d& mu = Eigen::Vector3d::Zero()) {
    double f12 = f21 * p(0) / p(1), f13 = f31 * p(0) / p(2), f23 = f32 * p(1) / p(2);
    DaviesQutritBlock b;
    b.F.resize(3, 3);
    b.F << 1 - f21 - f31, f12, f13, f21, 1 - f12 - f32, f23, f31, f32, 1 - f13 - f23;
    b.p = p;
    b.mu = mu;
    b.validate();
    return b;
}

inline DaviesQutritBlock qutrit_block(double f21, double f31, double f32, const Eigen::Vector3d& energies, double beta,
                                      const Eigen::Vector3d& mu = Eigen::Vector3d::Zero()) {
    auto b = qutrit_block(f21, f31, f32, gibbs_weights(energies, beta), mu);
    b.energies = energies;
    b.beta = beta;
    return b;
}

// infinite temperature: symmetric bistochastic block from (F12, F13, F23)
inline DaviesQutritBlock symmetric_block(double f12, double f13, double f23,
                                         const Eigen::Vector3d& mu = Eigen::Vector3d::Zero()) {
    return qutrit_block(f12, f13, f23, Eigen::Vector3d::Constant(1.0 / 3.0), mu);
}

inline Matrix qutrit_davies_superoperator(const DaviesQutritBlock& b) {
    b.validate();
    Matrix S = Matrix::Zero(9, 9);
    const int diag[3] = {0, 4, 8};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) S(diag[i], diag[j]) = b.F(i, j);
    S(1, 1) = S(3, 3) = b.mu(0);
    S(2, 2) = S(6, 6) = b.mu(1);
    S(5, 5) = S(7, 7) = b.mu(2);
    return S;
}

inline Channel qutrit_superoperator(const DaviesQutritBlock& b) {
    Matrix S = qutrit_davies_superoperator(b);
    double m = min_eig(choi_of_superoperator(S, 3, 3));
    if (m < -kChannelTol) throw not_psd("davies qutrit: Choi matrix is not positive", m);
    return from_superoperator(S);
}

// F32 + F31 + F21 <= 1 and 3 - 4 s + 3 e2 >= 0 on the free entries
inline bool co1_holds(const RMatrix& F, double tol = 1e-12) {
    double a = F(2, 1), b = F(2, 0), c = F(1, 0);
    double s = a + b + c;
    return s <= 1.0 + tol && 3.0 - 4.0 * s + 3.0 * (a * b + b * c + c * a) >= -tol;
}

// L21 through the spectrum: F21 / (4 y ((1-x)^2 - y^2)) [y2 (1-x-y) log(x-y) - y1 (1-x+y) log(x+y)];
// undefined (nullopt) at F21 = 0, y = 0 or a vanishing eigenvalue
inline std::optional<double> l21_closed_form(const RMatrix& F) {
    auto sp = stochastic3_spectrum(F);
    if (sp.y2 <= 0.0) return std::nullopt;
    double x = sp.x, y = std::sqrt(sp.y2);
    double f12 = F(0, 1), f21 = F(1, 0), f13 = F(0, 2), f31 = F(2, 0), f23 = F(1, 2), f32 = F(2, 1);
    double den = (1.0 - x) * (1.0 - x) - y * y;
    if (f21 <= 1e-12 || y <= 1e-12 || x - y <= 1e-14 || std::abs(den) < 1e-12) return std::nullopt;
    double rest = -f12 - f21 + f13 - f31 + f23 - f32 + 2.0 * f23 * f31 / f21;
    double y1 = 2.0 * y + rest, y2 = -2.0 * y + rest;
    return f21 / (4.0 * y * den) * (y2 * (1.0 - x - y) * std::log(x - y) - y1 * (1.0 - x + y) * std::log(x + y));
}

struct Membership {
    DaviesGeneratorBlock L;
    bool is_member = false;
    bool boundary = false;
    bool real_log = true;
    double l21 = 0.0;
    std::optional<double> l21_closed;
    std::string note;
};

inline Membership membership(const DaviesQutritBlock& b, double tol = 1e-9) {
    b.validate();
    Membership m;
    Stochastic3Log lg;
    try {
        try {
            lg = stochastic3_log(b.F);
        } catch (const degenerate_spectrum&) {
            lg = stochastic_log_eig(b.F);
        }
    } catch (const no_real_log& e) {
        m.real_log = false;
        m.note = e.what();
        m.l21 = std::numeric_limits<double>::quiet_NaN();
        return m;
    } catch (const degenerate_spectrum& e) {
        m.real_log = false;
        m.note = e.what();
        m.l21 = std::numeric_limits<double>::quiet_NaN();
        return m;
    }
    m.L.L = lg.L;
    m.boundary = lg.boundary;
    m.l21 = m.L.l21();
    m.l21_closed = l21_closed_form(b.F);
    m.is_member = m.L.valid(tol) && co1_holds(b.F);
    return m;
}

struct SweepPoint {
    double f12, f13, f23;
    bool member, boundary;
    double l21, l31, l32;
};

// symmetric bistochastic blocks on the grid step 1/resolution; plane = true keeps F12+F13+F23 = 1/2
// (resolution even) and sweeps it with a finer two-parameter grid
inline std::vector<SweepPoint> davies_set_sweep(int resolution, bool plane = false) {
    if (resolution < 10) throw invalid_input("davies_set_sweep: resolution must be at least 10");
    std::vector<SweepPoint> out;
    auto add = [&](double f12, double f13, double f23) {
        if (f12 + f13 > 1.0 + 1e-12 || f12 + f23 > 1.0 + 1e-12 || f13 + f23 > 1.0 + 1e-12) return;
        auto m = membership(symmetric_block(f12, f13, f23));
        SweepPoint s{f12, f13, f23, m.is_member, m.boundary, m.l21,
                     m.real_log ? m.L.l31() : std::numeric_limits<double>::quiet_NaN(),
                     m.real_log ? m.L.l32() : std::numeric_limits<double>::quiet_NaN()};
        out.push_back(s);
    };
    double h = 1.0 / resolution;
    if (plane) {
        for (int i = 0; i <= resolution; ++i)
            for (int j = 0; i + j <= resolution; ++j) {
                double f12 = 0.5 * i * h, f13 = 0.5 * j * h;
                add(f12, f13, std::max(0.0, 0.5 - f12 - f13));
            }
        return out;
    }
    for (int i = 0; i <= resolution; ++i)
        for (int j = 0; j <= resolution; ++j)
            for (int k = 0; k <= resolution; ++k) add(i * h, j * h, k * h);
    return out;
}

} // namespace qchan
