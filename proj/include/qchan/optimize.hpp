// optimize.hpp: Nelder-Mead simplex minimizer and a Fibonacci sphere lattice

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

#include "matfun.hpp"

namespace qchan {

struct NelderMeadResult {
    RVector x;
    double value;
    int evaluations;
};

inline NelderMeadResult nelder_mead(const std::function<double(const RVector&)>& f, const RVector& x0,
                                    double step = 0.1, double ftol = 1e-14, int max_eval = 4000) {
    const Index n = x0.size();
    std::vector<RVector> pts(static_cast<size_t>(n + 1), x0);
    std::vector<double> val(static_cast<size_t>(n + 1));
    for (Index i = 0; i < n; ++i) pts[static_cast<size_t>(i + 1)](i) += step;
    int evals = 0;
    auto eval = [&](const RVector& x) {
        ++evals;
        return f(x);
    };
    for (size_t i = 0; i < pts.size(); ++i) val[i] = eval(pts[i]);
    std::vector<size_t> order(pts.size());
    while (evals < max_eval) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return val[a] < val[b]; });
        size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
        if (std::abs(val[worst] - val[best]) <= ftol * (std::abs(val[best]) + 1e-300) + 1e-300) {
            double spread = 0.0;
            for (const auto& p : pts) spread = std::max(spread, (p - pts[best]).cwiseAbs().maxCoeff());
            if (spread < 1e-10) break;
        }
        RVector c = RVector::Zero(n);
        for (size_t i = 0; i < pts.size(); ++i)
            if (i != worst) c += pts[i];
        c /= static_cast<double>(n);
        RVector xr = c + (c - pts[worst]);
        double fr = eval(xr);
        if (fr < val[best]) {
            RVector xe = c + 2.0 * (c - pts[worst]);
            double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                val[worst] = fe;
            } else {
                pts[worst] = xr;
                val[worst] = fr;
            }
        } else if (fr < val[second]) {
            pts[worst] = xr;
            val[worst] = fr;
        } else {
            bool outside = fr < val[worst];
            RVector xc = outside ? RVector(c + 0.5 * (xr - c)) : RVector(c + 0.5 * (pts[worst] - c));
            double fc = eval(xc);
            if (fc < (outside ? fr : val[worst])) {
                pts[worst] = xc;
                val[worst] = fc;
            } else {
                for (size_t i = 0; i < pts.size(); ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    val[i] = eval(pts[i]);
                }
            }
        }
    }
    size_t b = static_cast<size_t>(std::min_element(val.begin(), val.end()) - val.begin());
    return {pts[b], val[b], evals};
}

// n nearly uniform points on the unit sphere
inline std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(static_cast<size_t>(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = 1.0 - (2.0 * i + 1.0) / n;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double t = golden * i;
        pts.emplace_back(r * std::cos(t), r * std::sin(t), z);
    }
    return pts;
}

inline Eigen::Vector3d sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

} // namespace qchan
