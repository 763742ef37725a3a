// states.hpp: density matrices, Bloch vectors, purification, Schmidt decomposition, fidelities

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "matfun.hpp"

namespace qchan {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kPureTol = 1e-10;

using Bloch = Eigen::Vector3d;

inline const std::array<Matrix, 4>& paulis() {
    static const std::array<Matrix, 4> s = [] {
        std::array<Matrix, 4> p;
        const cplx i(0, 1);
        p[0] = Matrix::Identity(2, 2);
        p[1] = Matrix(2, 2);
        p[1] << 0, 1, 1, 0;
        p[2] = Matrix(2, 2);
        p[2] << 0, -i, i, 0;
        p[3] = Matrix(2, 2);
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    return s;
}

// throws invalid_input unless rho is square, Hermitian, unit trace and PSD
inline void check_state(const Matrix& rho, double tol = kStateTol) {
    if (rho.rows() < 1 || rho.rows() != rho.cols()) throw invalid_input("density matrix must be square");
    if (hermiticity_defect(rho) > 1e-12 && max_abs(rho - rho.adjoint()) > 1e-12)
        throw invalid_input("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol) throw invalid_input("density matrix trace differs from 1");
    double lo = min_eig(rho);
    if (lo < -tol) throw not_psd("density matrix has a negative eigenvalue", lo);
}

inline bool is_state(const Matrix& rho, double tol = kStateTol) {
    try {
        check_state(rho, tol);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

inline Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

inline Matrix maximally_mixed(Index n) { return identity(n) / static_cast<double>(n); }

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

inline bool is_pure(const Matrix& rho) { return purity(rho) > 1.0 - kPureTol; }

inline Matrix from_bloch(const Bloch& r) {
    if (r.norm() > 1.0 + 1e-10) throw invalid_input("Bloch vector longer than 1");
    const auto& s = paulis();
    return 0.5 * (s[0] + r(0) * s[1] + r(1) * s[2] + r(2) * s[3]);
}

inline Bloch to_bloch(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw invalid_input("to_bloch: state must be 2x2");
    const auto& s = paulis();
    Bloch r;
    for (int k = 0; k < 3; ++k) r(k) = (rho * s[k + 1]).trace().real();
    return r;
}

inline void check_unitary(const Matrix& U, double tol = 1e-10) {
    if (U.rows() != U.cols()) throw invalid_input("unitary must be square");
    if (max_abs(U.adjoint() * U - identity(U.rows())) > tol) throw invalid_input("matrix is not unitary");
}

// |psi> = sum_i U|i> (x) sqrt(rho)|i>, so that Tr_1 |psi><psi| = rho
inline Vector purify(const Matrix& rho, const Matrix& U) {
    check_state(rho);
    if (U.rows() != rho.rows()) throw invalid_input("purify: unitary dimension mismatch");
    check_unitary(U);
    Index n = rho.rows();
    Matrix C = U * psd_sqrt(rho).transpose();
    Vector psi(n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) psi(a * n + b) = C(a, b);
    return psi;
}

inline Vector purify(const Matrix& rho) { return purify(rho, identity(rho.rows())); }

struct Schmidt {
    RVector coefficients;  // descending
    Matrix left;           // columns: d1-dimensional vectors
    Matrix right;          // columns: d2-dimensional vectors
    Index rank(double tol = 1e-10) const { return (coefficients.array() > tol).count(); }
};

// psi = sum_k c_k left_k (x) right_k
inline Schmidt schmidt(const Vector& psi, Index d1, Index d2) {
    if (d1 < 1 || d2 < 1 || psi.size() != d1 * d2) throw invalid_input("schmidt: dimension mismatch");
    Matrix C(d1, d2);
    for (Index a = 0; a < d1; ++a)
        for (Index b = 0; b < d2; ++b) C(a, b) = psi(a * d2 + b);
    Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Schmidt s;
    s.coefficients = svd.singularValues();
    s.left = svd.matrixU();
    s.right = svd.matrixV().conjugate();
    for (Index k = 0; k < s.left.cols(); ++k) {
        Index j = 0;
        while (j < d1 && std::abs(s.left(j, k)) <= 1e-12) ++j;
        if (j == d1) continue;
        cplx ph = std::conj(s.left(j, k)) / std::abs(s.left(j, k));
        s.left.col(k) *= ph;
        s.right.col(k) *= std::conj(ph);
    }
    return s;
}

inline void check_pair(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw invalid_input("states have different dimensions");
}

inline double root_fidelity(const Matrix& rho1, const Matrix& rho2) {
    check_pair(rho1, rho2);
    // trace norm of sqrt(rho1) sqrt(rho2); stays accurate for rank-deficient states
    Eigen::JacobiSVD<Matrix> svd(psd_sqrt(rho1) * psd_sqrt(rho2));
    return std::min(1.0, svd.singularValues().sum());
}

inline double fidelity(const Matrix& rho1, const Matrix& rho2) {
    double f = root_fidelity(rho1, rho2);
    return f * f;
}

inline double fidelity_qubit_bloch(const Bloch& x, const Bloch& y) {
    double nx = 1.0 - x.squaredNorm(), ny = 1.0 - y.squaredNorm();
    // pure-state drift below 1e-12 is treated as exactly pure
    double sx = nx < 1e-12 ? 0.0 : std::sqrt(nx);
    double sy = ny < 1e-12 ? 0.0 : std::sqrt(ny);
    return 0.5 * (1.0 + x.dot(y) + sx * sy);
}

inline double angle(const Matrix& rho1, const Matrix& rho2) {
    return std::acos(std::clamp(root_fidelity(rho1, rho2), 0.0, 1.0));
}

struct Uhlmann {
    double value;
    Matrix W;
};

// max over unitaries of |tr W sqrt(rho2) sqrt(rho1)|^2; attained by the adjoint of the polar unitary
inline Uhlmann uhlmann_max(const Matrix& rho1, const Matrix& rho2) {
    check_pair(rho1, rho2);
    Matrix X = psd_sqrt(rho2) * psd_sqrt(rho1);
    Polar pd = polar(X);
    Matrix W = pd.W.adjoint();
    double v = std::abs((W * X).trace());
    return {v * v, W};
}

struct Ensemble {
    RVector probs;
    std::vector<Matrix> states;

    Index size() const { return probs.size(); }
    Index dim() const { return states.empty() ? 0 : states.front().rows(); }

    Matrix average() const {
        Matrix a = Matrix::Zero(dim(), dim());
        for (Index i = 0; i < size(); ++i) a += probs(i) * states[static_cast<size_t>(i)];
        return a;
    }

    void validate() const {
        if (probs.size() != static_cast<Index>(states.size()) || states.empty())
            throw invalid_input("ensemble: probability and state counts differ");
        if (probs.minCoeff() < -1e-14) throw invalid_input("ensemble: negative probability");
        if (std::abs(probs.sum() - 1.0) > 1e-10) throw invalid_input("ensemble: probabilities do not sum to 1");
        for (const auto& s : states) {
            if (s.rows() != dim()) throw invalid_input("ensemble: states differ in dimension");
            check_state(s);
        }
    }
};

} // namespace qchan
