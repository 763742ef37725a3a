// sampling.hpp: seeded counter-based RNG streams and random unitaries, states,
// probability vectors, ensembles and channels

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "channels.hpp"

namespace qchan {

inline constexpr std::uint64_t splitmix_gamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// output n of stream s under seed: mix(key(seed, s) + n * gamma).
// Satisfies UniformRandomBitGenerator; streams never share state.
class SeededRng {
public:
    using result_type = std::uint64_t;

    explicit SeededRng(std::uint64_t seed = 42, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {
        key_ = splitmix(splitmix(seed + splitmix_gamma) ^ splitmix(stream * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return splitmix(key_ + (++counter_) * splitmix_gamma); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // uniform on (0, 1]
    double uniform_open() { return 1.0 - uniform(); }

    // Box-Muller; one draw yields two normals, no rejection
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double r = std::sqrt(-2.0 * std::log(uniform_open()));
        double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // standard complex Gaussian with E|z|^2 = 1
    cplx complex_normal() {
        double re = normal(), im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t seed_, stream_, key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline Matrix ginibre(Index rows, Index cols, SeededRng& rng) {
    Matrix G(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) G(i, j) = rng.complex_normal();
    return G;
}

// QR of a complex Gaussian matrix with the phases of diag(R) absorbed into Q
inline Matrix haar_unitary(Index n, SeededRng& rng) {
    if (n < 1) throw invalid_input("haar_unitary: dimension must be positive");
    Matrix G = ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * identity(n);
    Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        cplx d = R(j, j);
        double a = std::abs(d);
        Q.col(j) *= a > 0.0 ? d / a : cplx(1.0, 0.0);
    }
    return Q;
}

inline Vector random_pure(Index n, SeededRng& rng) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return v / v.norm();
}

inline Matrix hs_random_density(Index n, SeededRng& rng) {
    if (n < 1) throw invalid_input("hs_random_density: dimension must be positive");
    Matrix G = ginibre(n, n, rng);
    Matrix r = G * G.adjoint();
    return hermitize(r / r.trace().real());
}

// Marsaglia-Tsang; alpha < 1 through the alpha + 1 boost
inline double gamma_draw(double alpha, SeededRng& rng) {
    if (alpha == 1.0) return -std::log(rng.uniform_open());
    if (alpha < 1.0) return gamma_draw(alpha + 1.0, rng) * std::pow(rng.uniform_open(), 1.0 / alpha);
    double d = alpha - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.normal(), v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.uniform_open();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
    }
}

inline RVector dirichlet(Index k, SeededRng& rng, double alpha = 1.0) {
    if (k < 1) throw invalid_input("dirichlet: k must be positive");
    if (!(alpha > 0.0)) throw invalid_input("dirichlet: alpha must be positive");
    RVector g(k);
    for (Index i = 0; i < k; ++i) g(i) = gamma_draw(alpha, rng);
    return g / g.sum();
}

// Kraus blocks of the first block column of a Haar unitary of size N*M
inline Channel random_channel(Index n, Index m, SeededRng& rng) {
    if (n < 1 || m < 1) throw invalid_input("random_channel: dimensions must be positive");
    Matrix U = haar_unitary(n * m, rng);
    KrausList K;
    for (Index i = 0; i < m; ++i) K.push_back(U.block(i * n, 0, n, n));
    return Channel(std::move(K));
}

inline Ensemble random_ensemble(Index k, Index n, SeededRng& rng) {
    Ensemble e;
    e.probs = dirichlet(k, rng);
    for (Index i = 0; i < k; ++i) e.states.push_back(hs_random_density(n, rng));
    return e;
}

inline Ensemble random_pure_ensemble(Index k, Index n, SeededRng& rng) {
    Ensemble e;
    e.probs = dirichlet(k, rng);
    for (Index i = 0; i < k; ++i) e.states.push_back(projector(random_pure(n, rng)));
    return e;
}

// random POVM {K^y} with sum K^y^dag K^y = I, as a rank-m random channel
inline KrausList random_povm(Index n, Index m, SeededRng& rng) { return random_channel(n, m, rng).kraus(); }

} // namespace qchan
