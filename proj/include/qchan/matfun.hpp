// matfun.hpp: dense complex matrix helpers, matrix functions, reshuffling, partial trace,
// Schur-complement test and the closed-form logarithm of 3x3 stochastic matrices

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>

#include "errors.hpp"

namespace qchan {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// default tolerances
inline constexpr double kPsdTol = 1e-10;     // psd_sqrt / polar / schur
inline constexpr double kClipTol = 1e-12;    // eigenvalue clipping before log
inline constexpr double kRegEps = 1e-9;      // regularization by mixing with I/N
inline constexpr double kLimitCoef = 1e-12;  // 0*log0 convention



inline Matrix hermitize(const Matrix& M) { return 0.5 * (M + M.adjoint()); }

inline double max_abs(const Matrix& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

// max |M_ij - conj(M_ji)| relative to the largest entry
inline double hermiticity_defect(const Matrix& M) {
    if (M.rows() != M.cols()) return kInf;
    double scale = std::max(1e-300, max_abs(M));
    return max_abs(M - M.adjoint()) / scale;
}

struct HermEig {
    RVector values;  // ascending
    Matrix vectors;
};

inline HermEig herm_eig(const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H));
    if (es.info() != Eigen::Success) throw std::runtime_error("herm_eig: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

inline RVector herm_eigenvalues(const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double min_eig(const Matrix& H) { return herm_eigenvalues(H).minCoeff(); }

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline cplx trace(const Matrix& M) { return M.trace(); }

// sqrt of a perfect square, or throws
inline Index perfect_sqrt(Index n) {
    auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r != n || n < 1) throw invalid_input("dimension " + std::to_string(n) + " is not a perfect square");
    return r;
}

// f applied to the spectrum of a PSD matrix; eigenvalues in [-tol, 0) are clipped to 0
inline Matrix psd_fun(const Matrix& H, const std::function<double(double)>& f, double tol = kPsdTol) {
    auto e = herm_eig(H);
    double lo = e.values.minCoeff();
    if (lo < -tol) throw not_psd("matrix is not positive semidefinite", lo);
    RVector w(e.values.size());
    for (Index i = 0; i < w.size(); ++i) w(i) = f(std::max(0.0, e.values(i)));
    return e.vectors * w.asDiagonal() * e.vectors.adjoint();
}

inline Matrix psd_sqrt(const Matrix& H, double tol = kPsdTol) {
    return psd_fun(H, [](double x) { return std::sqrt(x); }, tol);
}

// H^a on the support of H (eigenvalues <= cut are treated as zero, and stay zero for a <= 0)
inline Matrix psd_pow(const Matrix& H, double a, double tol = kPsdTol, double cut = kClipTol) {
    return psd_fun(H, [a, cut](double x) { return x <= cut ? (a == 0.0 ? 0.0 : (a > 0 ? std::pow(x, a) : 0.0)) : std::pow(x, a); }, tol);
}

inline Matrix inverse_sqrt(const Matrix& H, double cut = 1e-10) {
    auto e = herm_eig(H);
    if (e.values.minCoeff() <= cut) throw singular_matrix("inverse_sqrt: matrix is singular");
    RVector w = e.values.cwiseSqrt().cwiseInverse();
    return e.vectors * w.asDiagonal() * e.vectors.adjoint();
}

inline Matrix herm_inverse(const Matrix& H, double cut = 1e-10) {
    auto e = herm_eig(H);
    if (e.values.minCoeff() <= cut) throw singular_matrix("herm_inverse: matrix is singular");
    RVector w = e.values.cwiseInverse();
    return e.vectors * w.asDiagonal() * e.vectors.adjoint();
}

// (1-eps) rho + eps I/N
inline Matrix regularize(const Matrix& rho, double eps = kRegEps) {
    Index n = rho.rows();
    return (1.0 - eps) * rho + (eps / static_cast<double>(n)) * identity(n);
}

inline Matrix kron(const Matrix& A, const Matrix& B) {
    return Eigen::kroneckerProduct(A, B).eval();
}

// <i|<j| M^R |k>|l> = <i|<k| M |j>|l>
inline Matrix reshuffle(const Matrix& M) {
    if (M.rows() != M.cols()) throw invalid_input("reshuffle: matrix must be square");
    Index n = perfect_sqrt(M.rows());
    Matrix R(M.rows(), M.cols());
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k)
                for (Index l = 0; l < n; ++l) R(i * n + j, k * n + l) = M(i * n + k, j * n + l);
    return R;
}

// which = 1 traces out the first factor (result d2 x d2), which = 2 the second (d1 x d1)
inline Matrix partial_trace(const Matrix& M, Index d1, Index d2, int which) {
    if (d1 < 1 || d2 < 1 || M.rows() != d1 * d2 || M.cols() != d1 * d2)
        throw invalid_input("partial_trace: dimensions do not match");
    if (which == 2) {
        Matrix R = Matrix::Zero(d1, d1);
        for (Index a = 0; a < d1; ++a)
            for (Index b = 0; b < d1; ++b)
                for (Index k = 0; k < d2; ++k) R(a, b) += M(a * d2 + k, b * d2 + k);
        return R;
    }
    if (which == 1) {
        Matrix R = Matrix::Zero(d2, d2);
        for (Index a = 0; a < d2; ++a)
            for (Index b = 0; b < d2; ++b)
                for (Index k = 0; k < d1; ++k) R(a, b) += M(k * d2 + a, k * d2 + b);
        return R;
    }
    throw invalid_input("partial_trace: subsystem index must be 1 or 2");
}

struct Polar {
    Matrix P;  // PSD
    Matrix W;  // unitary, X = P W
};

// left polar decomposition; on a rank-deficient X the unitary is completed on the null
// space by the unitary closest to the identity there
inline Polar polar(const Matrix& X) {
    if (X.rows() != X.cols()) throw invalid_input("polar: matrix must be square");
    Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    const Matrix& U = svd.matrixU();
    const Matrix& V = svd.matrixV();
    Index n = X.rows();
    double cut = 1e-12 * std::max(1.0, s.size() ? s(0) : 0.0);
    Index r = 0;
    while (r < n && s(r) > cut) ++r;
    Matrix P = U * s.cast<cplx>().asDiagonal() * U.adjoint();
    Matrix W = U.leftCols(r) * V.leftCols(r).adjoint();
    if (r < n) {
        Matrix Un = U.rightCols(n - r), Vn = V.rightCols(n - r);
        Eigen::JacobiSVD<Matrix> s2(Un.adjoint() * Vn, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Matrix omega = s2.matrixU() * s2.matrixV().adjoint();
        W += Un * omega * Vn.adjoint();
    }
    return {hermitize(P), W};
}

// sqrt(rho sigma) = rho^{1/2} (rho^{1/2} sigma rho^{1/2})^{1/2} rho^{-1/2}
inline Matrix sqrt_product(const Matrix& rho, const Matrix& sigma, bool regularize_singular = true,
                           double eps = kRegEps) {
    Matrix r = rho;
    if (min_eig(r) <= 1e-10) {
        if (!regularize_singular) throw singular_matrix("sqrt_product: rho is singular");
        r = regularize(rho, eps);
    }
    auto e = herm_eig(r);
    RVector sq = e.values.cwiseMax(0.0).cwiseSqrt();
    Matrix h = e.vectors * sq.asDiagonal() * e.vectors.adjoint();
    Matrix hi = e.vectors * sq.cwiseInverse().asDiagonal() * e.vectors.adjoint();
    return h * psd_sqrt(h * sigma * h) * hi;
}

// positivity of [[A, B], [B^dag, C]] through C - B^dag A^{-1} B
inline bool schur_positive(const Matrix& A, const Matrix& B, const Matrix& C, double tol = kPsdTol) {
    if (A.rows() != A.cols() || C.rows() != C.cols() || B.rows() != A.rows() || B.cols() != C.rows())
        throw invalid_input("schur_positive: incompatible block dimensions");
    double lo = min_eig(A);
    if (lo <= 1e-12) throw not_psd("schur_positive: A must be positive definite", lo);
    Matrix S = C - B.adjoint() * herm_inverse(A, 1e-12) * B;
    return min_eig(S) >= -tol;
}

inline Matrix sqrt2x2(const Matrix& X) {
    if (X.rows() != 2 || X.cols() != 2) throw invalid_input("sqrt2x2: matrix must be 2x2");
    double det = std::max(0.0, X.determinant().real());
    double tr = X.trace().real();
    double trs = std::sqrt(std::max(0.0, tr + 2.0 * std::sqrt(det)));
    if (trs <= 1e-300) throw invalid_input("sqrt2x2: zero matrix");
    return (X + std::sqrt(det) * identity(2)) / trs;
}

inline Matrix matrix_exp(const Matrix& M) { return M.exp(); }
inline RMatrix matrix_exp(const RMatrix& M) { return M.exp(); }

// log(lambda) * coef with the 0*log0 = 0 convention at a vanishing eigenvalue
inline double log_term(double lambda, double coef, double zero_tol = 1e-14, double coef_tol = kLimitCoef) {
    if (lambda > zero_tol) return std::log(lambda) * coef;
    if (std::abs(coef) <= coef_tol) return 0.0;
    return coef > 0 ? -kInf : kInf;
}

struct Stochastic3Log {
    RMatrix L;
    double x = 0, y = 0;       // spectrum {1, x+y, x-y}
    bool boundary = false;     // an eigenvalue is 0 and the limit convention was used
};

// x and y of the spectrum {1, x+y, x-y}; y2 is the radicand (negative for a complex pair)
struct Stochastic3Spectrum {
    double x, y2;
};

inline Stochastic3Spectrum stochastic3_spectrum(const RMatrix& F) {
    double t = F.trace();
    double t2 = (F * F).trace();
    return {0.5 * (t - 1.0), 0.25 * (2.0 * t2 - t * t + 2.0 * t - 3.0)};
}

inline void check_stochastic3(const RMatrix& F) {
    if (F.rows() != 3 || F.cols() != 3) throw invalid_input("stochastic matrix must be 3x3");
    for (Index j = 0; j < 3; ++j)
        if (std::abs(F.col(j).sum() - 1.0) > 1e-12) throw invalid_input("stochastic matrix: column sums must be 1");
    if (F.minCoeff() < -1e-14) throw invalid_input("stochastic matrix: negative entry");
}

// log F = 1/2 [log(x^2-y^2) Z^2 + log((x+y)/(x-y)) Z],
// Z^2 = (F-1)[(F-1) - 2(x-1)] / (y^2 - (x-1)^2),  yZ = (F-1) - (x-1) Z^2
inline Stochastic3Log stochastic3_log(const RMatrix& F, double tol = 1e-12) {
    check_stochastic3(F);
    auto sp = stochastic3_spectrum(F);
    double x = sp.x;
    if (sp.y2 < -tol) throw no_real_log("stochastic3_log: complex eigenvalue pair");
    double y = std::sqrt(std::max(0.0, sp.y2));
    double lp = x + y, lm = x - y;
    if (lm < -tol) throw no_real_log("stochastic3_log: negative eigenvalue");
    if (lp > 1.0 + tol) throw no_real_log("stochastic3_log: eigenvalue above 1");
    double D = y * y - (x - 1.0) * (x - 1.0);
    if (std::abs(D) < 1e-12) throw degenerate_spectrum("stochastic3_log: repeated eigenvalue 1");
    RMatrix A = F - RMatrix::Identity(3, 3);
    RMatrix Z2 = A * (A - 2.0 * (x - 1.0) * RMatrix::Identity(3, 3)) / D;
    RMatrix yZ = A - (x - 1.0) * Z2;
    Stochastic3Log out;
    out.x = x;
    out.y = y;
    out.L = RMatrix::Zero(3, 3);
    if (lm > 1e-14) {
        // atanh(y/x)/y -> 1/x as y -> 0 keeps the repeated-eigenvalue case finite
        double c = y > 1e-300 ? std::atanh(y / x) / y : 1.0 / x;
        out.L = 0.5 * std::log(lp * lm) * Z2 + c * yZ;
        return out;
    }
    out.boundary = true;
    if (y <= 1e-300) {
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) out.L(i, j) = log_term(0.0, Z2(i, j));
        return out;
    }
    RMatrix Pp = 0.5 * (Z2 + yZ / y), Pm = 0.5 * (Z2 - yZ / y);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) {
            double a = log_term(lp, Pp(i, j)), b = log_term(std::max(0.0, lm), Pm(i, j));
            out.L(i, j) = a + b;
        }
    return out;
}

// real logarithm through an eigendecomposition, with the 0*log0 convention;
// the fallback for a repeated eigenvalue 1
inline Stochastic3Log stochastic_log_eig(const RMatrix& F, double tol = 1e-10) {
    Eigen::EigenSolver<RMatrix> es(F);
    if (es.info() != Eigen::Success) throw std::runtime_error("stochastic_log_eig: eigensolver failed");
    Eigen::VectorXcd ev = es.eigenvalues();
    Eigen::MatrixXcd V = es.eigenvectors();
    for (Index k = 0; k < ev.size(); ++k) {
        if (std::abs(ev(k).imag()) > tol) throw no_real_log("stochastic_log_eig: complex eigenvalue");
        if (ev(k).real() < -tol) throw no_real_log("stochastic_log_eig: negative eigenvalue");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);
    if (!lu.isInvertible()) throw degenerate_spectrum("stochastic_log_eig: matrix is not diagonalizable");
    Eigen::MatrixXcd Vi = lu.inverse();
    Index n = F.rows();
    Stochastic3Log out;
    out.L = RMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k)
        if (ev(k).real() <= 1e-14) out.boundary = true;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            double acc = 0.0;
            for (Index k = 0; k < n; ++k) {
                double coef = (V(i, k) * Vi(k, j)).real();
                acc += log_term(std::max(0.0, ev(k).real()), coef);
            }
            out.L(i, j) = acc;
        }
    if (n == 3) {
        auto sp = stochastic3_spectrum(F);
        out.x = sp.x;
        out.y = std::sqrt(std::max(0.0, sp.y2));
    }
    return out;
}


} // namespace qchan
