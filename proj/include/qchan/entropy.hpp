// entropy.hpp: Shannon / von Neumann, Renyi and Tsallis entropies, relative entropies,
// mutual information, Jensen-Shannon divergence and the entropic/transmission distances.
// Everything is in nats.

#pragma once

#include <cmath>
#include <vector>

#include "states.hpp"

namespace qchan {

inline constexpr double kSupportCut = 1e-12;

enum class EntropyKind { shannon, renyi, tsallis };

struct EntropyOrder {
    EntropyKind kind = EntropyKind::shannon;
    double q = 1.0;

    static EntropyOrder vn() { return {}; }
    static EntropyOrder renyi(double q) { return {EntropyKind::renyi, q}; }
    static EntropyOrder tsallis(double q) { return {EntropyKind::tsallis, q}; }

    void check() const {
        if (!(q > 0.0)) throw invalid_input("entropy order must be positive");
    }
    bool is_shannon() const { return kind == EntropyKind::shannon || q == 1.0; }
};

inline RVector clean_probs(const RVector& p) {
    if (p.size() < 1) throw invalid_input("probability vector is empty");
    if (p.minCoeff() < -1e-14) throw invalid_input("probability vector has a negative entry");
    if (std::abs(p.sum() - 1.0) > 1e-10) throw invalid_input("probabilities do not sum to 1");
    return p.cwiseMax(0.0);
}

// entropy of an already-validated nonnegative weight vector (eigenvalues are clipped by the caller)
inline double entropy_of_weights(const RVector& p, const EntropyOrder& o) {
    o.check();
    if (o.is_shannon()) {
        double h = 0.0;
        for (Index i = 0; i < p.size(); ++i)
            if (p(i) > 0.0) h -= p(i) * std::log(p(i));
        return h;
    }
    double s = 0.0;
    for (Index i = 0; i < p.size(); ++i)
        if (p(i) > 0.0) s += std::pow(p(i), o.q);
    if (o.kind == EntropyKind::renyi) return std::log(s) / (1.0 - o.q);
    return (1.0 - s) / (o.q - 1.0);
}

inline double classical_entropy(const RVector& p, const EntropyOrder& o = {}) {
    return entropy_of_weights(clean_probs(p), o);
}

// eigenvalues below kClipTol are rounding noise and are set to 0 (they would dominate orders q < 1)
inline RVector spectrum(const Matrix& rho) {
    RVector ev = herm_eigenvalues(rho);
    for (Index i = 0; i < ev.size(); ++i)
        if (ev(i) < kClipTol) ev(i) = 0.0;
    return ev;
}

inline double vn_entropy(const Matrix& rho, const EntropyOrder& o = {}) {
    if (rho.rows() != rho.cols()) throw invalid_input("vn_entropy: matrix must be square");
    return std::max(0.0, entropy_of_weights(spectrum(rho), o));
}

// weights |<a_i|b_j>|^2
inline RMatrix overlap_weights(const HermEig& a, const HermEig& b) {
    return (a.vectors.adjoint() * b.vectors).cwiseAbs2();
}

inline double relative_entropy(const Matrix& rho1, const Matrix& rho2, const EntropyOrder& o = {}) {
    check_pair(rho1, rho2);
    o.check();
    auto e1 = herm_eig(rho1), e2 = herm_eig(rho2);
    RVector l = e1.values.cwiseMax(0.0), m = e2.values.cwiseMax(0.0);
    RMatrix W = overlap_weights(e1, e2);
    // mass of rho1 on the kernel of rho2
    double leak = 0.0;
    for (Index j = 0; j < m.size(); ++j)
        if (m(j) <= kSupportCut)
            for (Index i = 0; i < l.size(); ++i) leak += l(i) * W(i, j);
    if (o.is_shannon()) {
        if (leak > kSupportCut) return kInf;
        double d = 0.0;
        for (Index i = 0; i < l.size(); ++i) {
            if (l(i) <= 0.0) continue;
            d += l(i) * std::log(l(i));
            for (Index j = 0; j < m.size(); ++j)
                if (m(j) > kSupportCut) d -= l(i) * W(i, j) * std::log(m(j));
        }
        return std::max(0.0, d);
    }
    double q = o.q;
    if (q > 1.0 && leak > kSupportCut) return kInf;
    // tr rho1^q rho2^{1-q}
    double t = 0.0;
    for (Index i = 0; i < l.size(); ++i) {
        if (l(i) <= kSupportCut) continue;
        double a = std::pow(l(i), q);
        for (Index j = 0; j < m.size(); ++j)
            if (m(j) > kSupportCut) t += a * W(i, j) * std::pow(m(j), 1.0 - q);
    }
    if (o.kind == EntropyKind::renyi) {
        if (t <= 0.0) return kInf;
        return std::log(t) / (q - 1.0);
    }
    return (1.0 - t) / (1.0 - q);
}

inline RMatrix check_joint(const RMatrix& joint) {
    if (joint.size() < 1) throw invalid_input("joint distribution is empty");
    if (joint.minCoeff() < -1e-14) throw invalid_input("joint distribution has a negative entry");
    if (std::abs(joint.sum() - 1.0) > 1e-10) throw invalid_input("joint distribution does not sum to 1");
    return joint.cwiseMax(0.0);
}

inline double mutual_information_classical(const RMatrix& joint) {
    RMatrix J = check_joint(joint);
    RVector px = J.rowwise().sum(), py = J.colwise().sum().transpose();
    Eigen::Map<const RVector> flat(J.data(), J.size());
    double mi = entropy_of_weights(px, {}) + entropy_of_weights(py, {}) - entropy_of_weights(flat, {});
    return std::max(0.0, mi);
}

inline double quantum_mutual_information(const Matrix& rho12, Index d1, Index d2) {
    if (rho12.rows() != d1 * d2) throw invalid_input("quantum_mutual_information: dimension mismatch");
    double mi = vn_entropy(partial_trace(rho12, d1, d2, 2)) + vn_entropy(partial_trace(rho12, d1, d2, 1)) -
                vn_entropy(rho12);
    return std::max(0.0, mi);
}

// H(sum a_v P_v) - sum a_v H(P_v)
inline double jsd(const std::vector<RVector>& dists, const RVector& weights) {
    if (dists.empty() || static_cast<Index>(dists.size()) != weights.size())
        throw invalid_input("jsd: weight count differs from distribution count");
    RVector w = clean_probs(weights);
    RVector mix = RVector::Zero(dists.front().size());
    double avg = 0.0;
    for (size_t v = 0; v < dists.size(); ++v) {
        RVector p = clean_probs(dists[v]);
        if (p.size() != mix.size()) throw invalid_input("jsd: distributions differ in length");
        mix += w(static_cast<Index>(v)) * p;
        avg += w(static_cast<Index>(v)) * entropy_of_weights(p, {});
    }
    return std::max(0.0, entropy_of_weights(mix, {}) - avg);
}

inline double jsd(const RVector& P, const RVector& Q) {
    return jsd(std::vector<RVector>{P, Q}, RVector::Constant(2, 0.5));
}

inline double transmission_distance(const RVector& P, const RVector& Q) { return std::sqrt(jsd(P, Q)); }

// sqrt S of [[1/2, sqrt(F)/2], [sqrt(F)/2, 1/2]]
inline double entropic_distance(const Matrix& rho1, const Matrix& rho2) {
    double f = root_fidelity(rho1, rho2);
    RVector ev(2);
    ev << 0.5 * (1.0 + f), 0.5 * (1.0 - f);
    return std::sqrt(std::max(0.0, entropy_of_weights(ev.cwiseMax(0.0), {})));
}

inline double to_base(double nats, double base) { return base == 2.0 ? nats / std::log(2.0) : nats; }

} // namespace qchan
