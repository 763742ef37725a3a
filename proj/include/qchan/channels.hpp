// channels.hpp: quantum channels as Kraus lists with eager superoperator and Choi caches,
// representation conversions, CPTP diagnostics, complementary channels, composition,
// tensor products and channel entropies

#pragma once

#include <utility>
#include <vector>

#include "entropy.hpp"

namespace qchan {

inline constexpr double kChannelTol = 1e-9;
inline constexpr double kKrausCut = 1e-10;

using KrausList = std::vector<Matrix>;

// superoperator acting on row-major vec(rho): S = sum K (x) conj(K)
inline Matrix superoperator_of(const KrausList& K) {
    if (K.empty()) throw invalid_input("empty Kraus list");
    Matrix S = Matrix::Zero(K[0].rows() * K[0].rows(), K[0].cols() * K[0].cols());
    for (const auto& k : K) S += kron(k, k.conjugate());
    return S;
}

// normalized Choi state in input (x) output order: sum_kl |k><l| (x) Phi(|k><l|) / din
inline Matrix choi_of_superoperator(const Matrix& S, Index din, Index dout) {
    if (S.rows() != dout * dout || S.cols() != din * din) throw invalid_input("superoperator has wrong shape");
    Matrix C(din * dout, din * dout);
    for (Index k = 0; k < din; ++k)
        for (Index l = 0; l < din; ++l)
            for (Index i = 0; i < dout; ++i)
                for (Index j = 0; j < dout; ++j) C(k * dout + i, l * dout + j) = S(i * dout + j, k * din + l);
    return C / static_cast<double>(din);
}

inline Matrix superoperator_of_choi(const Matrix& C, Index din, Index dout) {
    if (C.rows() != din * dout || C.cols() != din * dout) throw invalid_input("Choi matrix has wrong shape");
    Matrix S(dout * dout, din * din);
    for (Index k = 0; k < din; ++k)
        for (Index l = 0; l < din; ++l)
            for (Index i = 0; i < dout; ++i)
                for (Index j = 0; j < dout; ++j) S(i * dout + j, k * din + l) = C(k * dout + i, l * dout + j);
    return S * static_cast<double>(din);
}

struct CptpReport {
    bool cp = false;
    bool tp = false;
    double min_choi_eig = 0.0;  // of the normalized Choi state
    double tp_residual = 0.0;   // max |Tr_out(din * choi) - I|
};

inline CptpReport is_cptp_choi(const Matrix& C, Index din, Index dout, double tol = kChannelTol) {
    CptpReport r;
    r.min_choi_eig = min_eig(C);
    r.cp = r.min_choi_eig >= -tol;
    Matrix T = partial_trace(C, din, dout, 2) * static_cast<double>(din);
    r.tp_residual = max_abs(T - identity(din));
    r.tp = r.tp_residual <= tol;
    return r;
}

// square superoperator, e.g. the transpose map
inline CptpReport is_cptp(const Matrix& S, double tol = kChannelTol) {
    Index din = perfect_sqrt(S.cols()), dout = perfect_sqrt(S.rows());
    return is_cptp_choi(choi_of_superoperator(S, din, dout), din, dout, tol);
}

inline CptpReport is_cptp(const KrausList& K, double tol = kChannelTol) {
    if (K.empty()) throw invalid_input("empty Kraus list");
    Index din = K[0].cols(), dout = K[0].rows();
    for (const auto& k : K)
        if (k.rows() != dout || k.cols() != din) throw invalid_input("Kraus operators differ in shape");
    CptpReport r = is_cptp_choi(choi_of_superoperator(superoperator_of(K), din, dout), din, dout, tol);
    Matrix T = Matrix::Zero(din, din);
    for (const auto& k : K) T += k.adjoint() * k;
    r.tp_residual = max_abs(T - identity(din));
    r.tp = r.tp_residual <= tol;
    return r;
}

// Kraus operators from the eigendecomposition of the Choi state, descending eigenvalues,
// first nonzero entry of each eigenvector real positive
inline KrausList kraus_of_choi(const Matrix& C, Index din, Index dout, double cut = kKrausCut) {
    auto e = herm_eig(C * static_cast<double>(din));
    KrausList K;
    for (Index t = e.values.size() - 1; t >= 0; --t) {
        double lam = e.values(t);
        if (lam <= cut) continue;
        Vector v = e.vectors.col(t);
        Index j = 0;
        while (j < v.size() && std::abs(v(j)) <= 1e-12) ++j;
        if (j < v.size()) v *= std::conj(v(j)) / std::abs(v(j));
        Matrix k(dout, din);
        for (Index a = 0; a < din; ++a)
            for (Index i = 0; i < dout; ++i) k(i, a) = std::sqrt(lam) * v(a * dout + i);
        K.push_back(k);
    }
    if (K.empty()) throw invalid_channel("complete positivity", 0.0);
    return K;
}

class Channel {
public:
    Channel() = default;

    explicit Channel(KrausList kraus, double tol = kChannelTol) : kraus_(std::move(kraus)) {
        if (kraus_.empty()) throw invalid_input("empty Kraus list");
        din_ = kraus_[0].cols();
        dout_ = kraus_[0].rows();
        if (din_ < 1 || dout_ < 1) throw invalid_input("Kraus operators must be nonempty");
        for (const auto& k : kraus_)
            if (k.rows() != dout_ || k.cols() != din_) throw invalid_input("Kraus operators differ in shape");
        super_ = superoperator_of(kraus_);
        choi_ = choi_of_superoperator(super_, din_, dout_);
        auto r = is_cptp_choi(choi_, din_, dout_, tol);
        Matrix T = Matrix::Zero(din_, din_);
        for (const auto& k : kraus_) T += k.adjoint() * k;
        double tpr = max_abs(T - identity(din_));
        if (tpr > tol) throw invalid_channel("trace preservation", tpr);
        if (!r.cp) throw invalid_channel("complete positivity", r.min_choi_eig);
    }

    Index dim() const { return din_; }
    Index dim_in() const { return din_; }
    Index dim_out() const { return dout_; }
    Index rank() const { return static_cast<Index>(kraus_.size()); }
    const KrausList& kraus() const { return kraus_; }
    const Matrix& superoperator() const { return super_; }
    const Matrix& choi() const { return choi_; }

    // reshuffled superoperator, output (x) input order, trace din
    Matrix dynamical() const {
        Matrix D(din_ * dout_, din_ * dout_);
        for (Index k = 0; k < din_; ++k)
            for (Index l = 0; l < din_; ++l)
                for (Index i = 0; i < dout_; ++i)
                    for (Index j = 0; j < dout_; ++j) D(i * din_ + k, j * din_ + l) = super_(i * dout_ + j, k * din_ + l);
        return D;
    }

    Matrix apply(const Matrix& rho) const {
        if (rho.rows() != din_ || rho.cols() != din_) throw invalid_input("apply: state dimension mismatch");
        Matrix out = Matrix::Zero(dout_, dout_);
        for (const auto& k : kraus_) out += k * rho * k.adjoint();
        return hermitize(out);
    }

private:
    KrausList kraus_;
    Index din_ = 0, dout_ = 0;
    Matrix super_, choi_;
};

inline Matrix apply(const Channel& phi, const Matrix& rho) { return phi.apply(rho); }
inline const Matrix& superoperator(const Channel& phi) { return phi.superoperator(); }
inline const Matrix& choi(const Channel& phi) { return phi.choi(); }
inline Matrix dynamical(const Channel& phi) { return phi.dynamical(); }
inline CptpReport is_cptp(const Channel& phi, double tol = kChannelTol) { return is_cptp(phi.kraus(), tol); }

// C: normalized Choi state (input (x) output) of a channel with input dimension din
inline Channel from_choi(const Matrix& C, Index din = 0) {
    if (C.rows() != C.cols()) throw invalid_input("from_choi: matrix must be square");
    if (din == 0) din = perfect_sqrt(C.rows());
    if (C.rows() % din != 0) throw invalid_input("from_choi: input dimension does not divide size");
    Index dout = C.rows() / din;
    double lo = min_eig(C);
    if (lo < -kChannelTol) throw invalid_channel("complete positivity", lo);
    Matrix T = partial_trace(C, din, dout, 2) * static_cast<double>(din);
    double tpr = max_abs(T - identity(din));
    if (tpr > 1e-8) throw invalid_channel("trace preservation", tpr);
    return Channel(kraus_of_choi(C, din, dout), 1e-8);
}

inline Channel from_superoperator(const Matrix& S) {
    Index din = perfect_sqrt(S.cols()), dout = perfect_sqrt(S.rows());
    return from_choi(choi_of_superoperator(S, din, dout), din);
}

// square channels only: D is the reshuffled superoperator
inline Channel from_dynamical(const Matrix& D) { return from_superoperator(reshuffle(D)); }

inline Channel identity_channel(Index n) { return Channel({identity(n)}); }

inline Channel unitary_channel(const Matrix& U) {
    check_unitary(U);
    return Channel({U});
}

// K~^a_{ij} = K^i_{aj}: maps din to the Kraus-count dimension
inline Channel complementary(const Channel& phi) {
    const auto& K = phi.kraus();
    Index m = phi.rank();
    KrausList Kc;
    for (Index a = 0; a < phi.dim_out(); ++a) {
        Matrix k(m, phi.dim_in());
        for (Index i = 0; i < m; ++i) k.row(i) = K[static_cast<size_t>(i)].row(a);
        Kc.push_back(k);
    }
    return Channel(std::move(Kc));
}

// phi2 o phi1
inline Channel compose(const Channel& phi2, const Channel& phi1) {
    if (phi2.dim_in() != phi1.dim_out()) throw invalid_input("compose: dimension mismatch");
    KrausList K;
    for (const auto& a : phi1.kraus())
        for (const auto& b : phi2.kraus()) K.push_back(b * a);
    return Channel(std::move(K));
}

inline Channel tensor(const Channel& phi1, const Channel& phi2) {
    KrausList K;
    for (const auto& a : phi1.kraus())
        for (const auto& b : phi2.kraus()) K.push_back(kron(a, b));
    return Channel(std::move(K));
}

inline double map_entropy(const Channel& phi, const EntropyOrder& o = {}) { return vn_entropy(phi.choi(), o); }

// sigma_ij = tr K^i rho K^j^dag, the output of the complementary channel
inline Matrix environment_state(const Channel& phi, const Matrix& rho) {
    if (rho.rows() != phi.dim_in()) throw invalid_input("environment_state: dimension mismatch");
    const auto& K = phi.kraus();
    Index m = phi.rank();
    Matrix s(m, m);
    std::vector<Matrix> kr;
    kr.reserve(K.size());
    for (const auto& k : K) kr.push_back(k * rho);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            s(i, j) = (kr[static_cast<size_t>(i)] * K[static_cast<size_t>(j)].adjoint()).trace();
    return hermitize(s);
}

inline double exchange_entropy(const Channel& phi, const Matrix& rho, const EntropyOrder& o = {}) {
    return vn_entropy(environment_state(phi, rho), o);
}

inline double coherent_information(const Channel& phi, const Matrix& rho) {
    return vn_entropy(phi.apply(rho)) - exchange_entropy(phi, rho);
}

// p_i = tr K^i rho K^i^dag, rho_i = K^i rho K^i^dag / p_i; outcomes below 1e-12 dropped
inline Ensemble output_ensemble(const Channel& phi, const Matrix& rho) {
    if (rho.rows() != phi.dim_in()) throw invalid_input("output_ensemble: dimension mismatch");
    std::vector<double> p;
    Ensemble e;
    for (const auto& k : phi.kraus()) {
        Matrix s = hermitize(k * rho * k.adjoint());
        double w = s.trace().real();
        if (w < 1e-12) continue;
        p.push_back(w);
        e.states.push_back(s / w);
    }
    e.probs = Eigen::Map<RVector>(p.data(), static_cast<Index>(p.size()));
    e.probs /= e.probs.sum();
    return e;
}

// unitary U2 with U1 = I giving sigma_12 = sqrt(p1 p2 F(rho1, rho2)):
// U2 = sqrt(rho2) sqrt(rho1) M^{-1/2}, M = sqrt(rho1) rho2 sqrt(rho1)
inline Matrix fidelity_unitary(const Matrix& rho1, const Matrix& rho2) {
    check_pair(rho1, rho2);
    Matrix r1 = min_eig(rho1) <= 1e-10 ? regularize(rho1) : rho1;
    Matrix r2 = min_eig(rho2) <= 1e-10 ? regularize(rho2) : rho2;
    Matrix s1 = psd_sqrt(r1), s2 = psd_sqrt(r2);
    Matrix M = s1 * r2 * s1;
    return s2 * s1 * inverse_sqrt(M, 1e-14);
}

struct EnsembleChannel {
    Channel channel;
    Matrix rho;          // sum p_i U_i^dag rho_i U_i
    bool regularized;    // states were mixed with I/N (eps = 1e-9) to make rho invertible
};

// K^i = sqrt(p_i rho_i) U_i rho^{-1/2}
inline EnsembleChannel kraus_from_ensemble(const Ensemble& e, const std::vector<Matrix>& U, double eps = kRegEps) {
    e.validate();
    if (static_cast<Index>(U.size()) != e.size()) throw invalid_input("kraus_from_ensemble: need one unitary per state");
    for (const auto& u : U) {
        if (u.rows() != e.dim()) throw invalid_input("kraus_from_ensemble: unitary dimension mismatch");
        check_unitary(u);
    }
    auto mix = [&](const std::vector<Matrix>& st) {
        Matrix r = Matrix::Zero(e.dim(), e.dim());
        for (size_t i = 0; i < st.size(); ++i) r += e.probs(static_cast<Index>(i)) * U[i].adjoint() * st[i] * U[i];
        return hermitize(r);
    };
    std::vector<Matrix> st = e.states;
    Matrix rho = mix(st);
    bool reg = false;
    if (min_eig(rho) <= 1e-10) {
        for (auto& s : st) s = regularize(s, eps);
        rho = mix(st);
        reg = true;
        if (min_eig(rho) <= 1e-12) throw singular_matrix("kraus_from_ensemble: average state is singular");
    }
    Matrix ri = inverse_sqrt(rho, 1e-14);
    KrausList K;
    for (size_t i = 0; i < st.size(); ++i)
        K.push_back(psd_sqrt(e.probs(static_cast<Index>(i)) * st[i]) * U[i] * ri);
    return {Channel(std::move(K)), rho, reg};
}

} // namespace qchan
