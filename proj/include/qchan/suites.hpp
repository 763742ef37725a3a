// suites.hpp: seeded Monte Carlo property suites and the hierarchy experiment.
// Trial t always draws from stream t of the master seed, so results do not depend on the
// number of worker threads.

#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "bounds.hpp"
#include "davies.hpp"

namespace qchan {

struct SuiteConfig {
    std::uint64_t seed = 42;
    long trials = 10000;
    Index dim = 0;  // 0: suite default
    Index k = 0;    // 0: suite default
    double q = 2.0;
    double b = 0.0;
    int jobs = 1;
};

// slack = lhs - rhs of an inequality (or an absolute deviation); violated when slack > tol
struct CheckStat {
    std::string name;
    double tol = kBoundSlack;
    long count = 0;
    long violations = 0;
    double max_slack = -kInf;
};

struct SuiteResult {
    std::string suite;
    long trials = 0;
    long errors = 0;
    std::vector<CheckStat> checks;

    long violations() const {
        long v = errors;
        for (const auto& c : checks) v += c.violations;
        return v;
    }
    double max_slack() const {
        double m = -kInf;
        for (const auto& c : checks)
            if (c.count) m = std::max(m, c.max_slack);
        return m;
    }
    const CheckStat& check(const std::string& n) const {
        for (const auto& c : checks)
            if (c.name == n) return c;
        throw invalid_input("no check named " + n);
    }
};

// runs f(t) for t in [0, trials) on `jobs` threads; f returns one slack per check (NaN: not evaluated)
inline void parallel_trials(long trials, int jobs, const std::function<void(long)>& f) {
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<long>(1, trials))));
    if (jobs == 1) {
        for (long t = 0; t < trials; ++t) f(t);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (long t = next++; t < trials; t = next++) f(t);
        });
    for (auto& th : pool) th.join();
}

using TrialFn = std::function<std::vector<double>(long, SeededRng&)>;

inline SuiteResult run_trials(const std::string& suite, std::vector<CheckStat> checks, const SuiteConfig& cfg,
                              const TrialFn& f) {
    const size_t nc = checks.size();
    std::vector<std::vector<double>> slack(static_cast<size_t>(cfg.trials));
    std::vector<char> failed(static_cast<size_t>(cfg.trials), 0);
    parallel_trials(cfg.trials, cfg.jobs, [&](long t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        try {
            auto s = f(t, rng);
            s.resize(nc, std::nan(""));
            slack[static_cast<size_t>(t)] = std::move(s);
        } catch (const std::exception&) {
            failed[static_cast<size_t>(t)] = 1;
        }
    });
    SuiteResult r{suite, cfg.trials, 0, std::move(checks)};
    for (long t = 0; t < cfg.trials; ++t) {
        if (failed[static_cast<size_t>(t)]) {
            ++r.errors;
            continue;
        }
        for (size_t c = 0; c < nc; ++c) {
            double s = slack[static_cast<size_t>(t)][c];
            if (std::isnan(s)) continue;
            auto& st = r.checks[c];
            ++st.count;
            st.max_slack = std::max(st.max_slack, s);
            if (s > st.tol) ++st.violations;
        }
    }
    return r;
}

inline const double kNaN = std::numeric_limits<double>::quiet_NaN();

inline SuiteResult suite_theorem1(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"chi<=s_sigma"}, {"s_sigma<=h_p"}, {"saturation_pure"}, {"sigma_diag=p", 1e-10}};
    return run_trials("theorem1", checks, cfg, [&](long t, SeededRng& rng) {
        Index n = cfg.dim ? cfg.dim : 2 + t % 2;
        Index k = cfg.k ? cfg.k : 1 + (t / 2) % 4;
        bool pure = t % 10 == 0;
        Matrix rho = pure ? projector(random_pure(n, rng)) : hs_random_density(n, rng);
        KrausList K = random_povm(n, k, rng);
        auto r = theorem1_check(rho, K);
        Matrix s = correlation_matrix(rho, K);
        double dev = 0.0;
        for (Index i = 0; i < k; ++i) {
            const Matrix& ki = K[static_cast<size_t>(i)];
            dev = std::max(dev, std::abs(s(i, i).real() - (ki * rho * ki.adjoint()).trace().real()));
        }
        return std::vector<double>{r.chi - r.s_sigma, r.s_sigma - r.h_p, pure ? std::abs(r.chi - r.s_sigma) : kNaN, dev};
    });
}

inline SuiteResult suite_props(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"info_gain"}, {"concat_holevo"}, {"concat_exchange"}, {"composition_lower>=0"},
                                  {"composition_lower<=s_map"}, {"holevo_mi"}};
    return run_trials("props", checks, cfg, [&](long t, SeededRng& rng) {
        Index n = cfg.dim ? cfg.dim : 2;
        Index r1 = 1 + t % 4, r2 = 1 + (t / 4) % 4;
        Channel p1 = random_channel(n, r1, rng), p2 = random_channel(n, r2, rng);
        Matrix rho = hs_random_density(n, rng);
        auto c = concat_bound_check(p1, p2, rho);
        double lower = composition_map_entropy_lower(p1, p2);
        Index k = cfg.k ? cfg.k : 2 + t % 3;
        Ensemble e = random_ensemble(k, n, rng);
        auto mi = holevo_mutual_check(e, random_povm(n, 2 + (t / 3) % 3, rng));
        return std::vector<double>{-info_gain_slack(rho, p1.kraus()), c.lhs - c.holevo_bound, c.lhs - c.s_sigma_ii, -lower,
                                   lower - map_entropy(compose(p2, p1)), mi.mi - mi.chi};
    });
}

inline SuiteResult suite_lindblad(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"|dS|<=s_sigma"}, {"s_sigma<=S(rho')+S(rho)"}, {"chi<=s_sigma+S(rho')-S(rho)"}};
    return run_trials("lindblad", checks, cfg, [&](long t, SeededRng& rng) {
        Index n = cfg.dim ? cfg.dim : 2 + t % 2;
        Channel phi = random_channel(n, 1 + (t / 2) % 4, rng);
        auto r = lindblad_check(hs_random_density(n, rng), phi);
        return std::vector<double>{-r.slack_lower, -r.slack_upper, -r.slack_three};
    });
}

inline SuiteResult suite_sandwich(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"lower_vn"}, {"upper_vn"}, {"lower_tsallis2"}, {"upper_tsallis2"}, {"lower_renyi2"}};
    return run_trials("sandwich", checks, cfg, [&](long t, SeededRng& rng) {
        Index n = cfg.dim ? cfg.dim : 2;
        Channel a = random_channel(n, 1 + t % 4, rng), b = random_channel(n, 1 + (t / 4) % 4, rng);
        auto r = sandwich_check(a, b);
        return std::vector<double>{r.lower - r.middle, r.middle - r.upper, r.lower_t2 - r.middle_t2, r.middle_t2 - r.upper_t2,
                                   r.renyi2_lower - r.middle_r2};
    });
}

inline SuiteResult suite_conjecture1(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"chi<=s_fid"}, {"g_psd", 1e-10}, {"chi<=s_layered"}, {"chi<=s_fid_b"},
                                  {"chi<=s_fid_sq"}, {"pure_chi<=s_fid"}};
    return run_trials("conjecture1", checks, cfg, [&](long t, SeededRng& rng) {
        Index n = cfg.dim ? cfg.dim : 2;
        Index k = cfg.k ? cfg.k : 3;
        Ensemble e = random_ensemble(k, n, rng);
        double chi = holevo(e);
        Matrix G = fidelity_matrix(e, FidelityVariant::G);
        double b = cfg.b > 0.0 ? cfg.b : default_b(n);
        double sq = n == 2 ? chi - vn_entropy(fidelity_matrix(e, FidelityVariant::F_squared)) : kNaN;
        double pure = kNaN;
        if (t % 10 == 0) {
            Ensemble ep = random_pure_ensemble(k, n, rng);
            pure = holevo(ep) - vn_entropy(fidelity_matrix(ep, FidelityVariant::G));
        }
        return std::vector<double>{chi - vn_entropy(G), k == 3 ? -min_eig(G) : kNaN,
                                   chi - vn_entropy(fidelity_matrix(e, FidelityVariant::layered)),
                                   chi - vn_entropy(fidelity_matrix(e, FidelityVariant::G_over_b, b)), sq, pure};
    });
}

// a + p < 1 and c below sqrt(1 - a/(1-p))
inline DaviesQubit random_davies_qubit(SeededRng& rng) {
    double p = 0.02 + 0.96 * rng.uniform();
    double a = (1.0 - p) * 0.999 * rng.uniform();
    double c = std::sqrt(1.0 - a / (1.0 - p)) * (0.01 + 0.99 * rng.uniform());
    return {a, c, p};
}

inline DaviesRates random_rates(SeededRng& rng) {
    double A = 2.0 * rng.uniform();
    double g = 0.5 * A + 2.0 * rng.uniform();
    return {A, g, 0.0, 0.05 + 0.9 * rng.uniform()};
}

// random Gibbs weights, free entries scaled to keep the block stochastic, coherences
// mu_ij = nu sqrt(d_i d_j) from the Choi diagonal
inline DaviesQutritBlock random_qutrit_block(SeededRng& rng) {
    Eigen::Vector3d en(0.0, rng.uniform(), 1.0 + rng.uniform());
    double beta = 2.0 * rng.uniform();
    Eigen::Vector3d p = gibbs_weights(en, beta);
    double s = 0.5 * rng.uniform();
    double f21 = s * rng.uniform() * p(1), f31 = s * rng.uniform() * p(2), f32 = s * rng.uniform() * p(2);
    auto blk = qutrit_block(f21, f31, f32, p);
    Eigen::Vector3d d = blk.F.diagonal();
    double nu = rng.uniform();
    blk.mu = Eigen::Vector3d(nu * std::sqrt(d(0) * d(1)), nu * std::sqrt(d(0) * d(2)), nu * std::sqrt(d(1) * d(2)));
    return blk;
}

// tr rho^-1 Phi(X)^dag Y - tr rho^-1 X^dag Phi(Y)
inline double detailed_balance_defect(const Channel& phi, const Matrix& gibbs, SeededRng& rng) {
    Index n = gibbs.rows();
    Matrix X = ginibre(n, n, rng), Y = ginibre(n, n, rng);
    Matrix gi = herm_inverse(gibbs);
    auto ap = [&](const Matrix& M) {
        Matrix out = Matrix::Zero(n, n);
        for (const auto& k : phi.kraus()) out += k * M * k.adjoint();
        return out;
    };
    return std::abs((gi * ap(X).adjoint() * Y).trace() - (gi * X.adjoint() * ap(Y)).trace());
}

inline SuiteResult suite_davies(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"qubit_cp", 1e-10},         {"qubit_gibbs_fixed", 1e-10}, {"qubit_minimizer", 1e-6},
                                  {"qubit_max_norm", 1e-6},    {"semigroup", 1e-9},          {"qutrit_gibbs_fixed", 1e-10},
                                  {"qutrit_detailed_balance"}, {"qutrit_exp_log", 1e-9},     {"l21_closed_form", 1e-7}};
    return run_trials("davies", checks, cfg, [&](long, SeededRng& rng) {
        DaviesQubit d = random_davies_qubit(rng);
        Channel phi = qubit_superoperator(d);
        Matrix gibbs = Matrix::Zero(2, 2);
        gibbs(0, 0) = d.p;
        gibbs(1, 1) = 1.0 - d.p;
        auto mz = qubit_minimizer(d);
        double smin = min_output_entropy(phi).value;
        DaviesRates R = random_rates(rng);
        double t1 = 2.0 * rng.uniform(), t2 = 2.0 * rng.uniform();
        auto at = [&](double t) {
            DaviesRates x = R;
            x.t = t;
            return qubit_davies_superoperator(from_rates(x));
        };
        double semi = max_abs(at(t1) * at(t2) - at(t1 + t2));
        auto blk = random_qutrit_block(rng);
        Channel q3 = qutrit_superoperator(blk);
        Matrix g3 = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) g3(i, i) = blk.p(i);
        auto m = membership(blk);
        double rt = kNaN, cf = kNaN;
        if (m.is_member && !m.boundary) rt = (m.L.L.exp() - blk.F).cwiseAbs().maxCoeff();
        if (m.real_log && m.l21_closed && std::isfinite(m.l21)) cf = std::abs(*m.l21_closed - m.l21);
        return std::vector<double>{-is_cptp(phi).min_choi_eig,
                                   max_abs(phi.apply(gibbs) - gibbs),
                                   std::abs(mz.s_min - smin),
                                   std::abs(qubit_max_norm(d) - max_output_2norm(phi)),
                                   semi,
                                   max_abs(q3.apply(g3) - g3),
                                   detailed_balance_defect(q3, g3, rng),
                                   rt,
                                   cf};
    });
}

inline const std::vector<double>& additivity_orders() {
    static const std::vector<double> q{0.5, 1.0, 2.0, 5.0};
    return q;
}

inline EntropyOrder renyi_or_vn(double q) { return q == 1.0 ? EntropyOrder::vn() : EntropyOrder::renyi(q); }

// max over q of |S_q^map(a (x) b) - S_q^map(a) - S_q^map(b)|
inline double map_entropy_additivity_defect(const Channel& a, const Channel& b) {
    Channel ab = tensor(a, b);
    double m = 0.0;
    for (double q : additivity_orders()) {
        auto o = renyi_or_vn(q);
        m = std::max(m, std::abs(map_entropy(ab, o) - map_entropy(a, o) - map_entropy(b, o)));
    }
    return m;
}

// |M(Davies (x) Omega) - M(Davies) M(Omega)| for a random qubit channel Omega
inline double davies_max_norm_defect(SeededRng& rng) {
    DaviesQubit d = random_davies_qubit(rng);
    Channel om = random_channel(2, 1 + static_cast<Index>(rng.uniform() * 4.0), rng);
    Channel ph = qubit_superoperator(d);
    return std::abs(max_output_2norm(tensor(ph, om)) - qubit_max_norm(d) * max_output_2norm(om));
}

inline SuiteResult suite_multiplicativity(const SuiteConfig& cfg) {
    std::vector<CheckStat> checks{{"map_entropy_additivity"}, {"max_norm_davies", 2e-4}};
    return run_trials("multiplicativity", checks, cfg, [&](long t, SeededRng& rng) {
        Index n1 = cfg.dim ? cfg.dim : 2 + t % 2, n2 = cfg.dim ? cfg.dim : 2 + (t / 2) % 2;
        Channel a = random_channel(n1, 1 + t % 3, rng), b = random_channel(n2, 1 + (t / 3) % 3, rng);
        double add = map_entropy_additivity_defect(a, b);
        double mn = t % 20 == 0 ? davies_max_norm_defect(rng) : kNaN;
        return std::vector<double>{add, mn};
    });
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"theorem1", "props", "lindblad", "sandwich", "conjecture1", "davies", "multiplicativity"};
    return n;
}

inline SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (cfg.trials < 1) throw invalid_input("trials must be at least 1");
    if (name == "theorem1") return suite_theorem1(cfg);
    if (name == "props") return suite_props(cfg);
    if (name == "lindblad") return suite_lindblad(cfg);
    if (name == "sandwich") return suite_sandwich(cfg);
    if (name == "conjecture1") return suite_conjecture1(cfg);
    if (name == "davies") return suite_davies(cfg);
    if (name == "multiplicativity") return suite_multiplicativity(cfg);
    throw invalid_input("unknown suite: " + name);
}

struct HierarchyRow {
    std::string quantity;
    double mean, std;
};

struct HierarchyTable {
    long used = 0, skipped = 0, conjecture_violations = 0;
    std::vector<HierarchyRow> rows;
    const HierarchyRow& row(const std::string& q) const {
        for (const auto& r : rows)
            if (r.quantity == q) return r;
        throw invalid_input("no hierarchy row " + q);
    }
};

// normalized means and population standard deviations over HS-random ensembles of k states
// in dimension n with Dirichlet(1,...,1) weights
inline HierarchyTable run_hierarchy(const SuiteConfig& cfg) {
    if (cfg.trials < 1) throw invalid_input("trials must be at least 1");
    Index n = cfg.dim ? cfg.dim : 2, k = cfg.k ? cfg.k : 3;
    std::vector<BoundReport> reps(static_cast<size_t>(cfg.trials));
    parallel_trials(cfg.trials, cfg.jobs, [&](long t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        reps[static_cast<size_t>(t)] = hierarchy(random_ensemble(k, n, rng), cfg.b);
    });
    const std::vector<std::string> names{"chi", "s_sigma", "s_gram", "s_fid", "s_layered", "s_fid_sq", "s_fid_b", "h_p"};
    auto get = [](const BoundReport& r, size_t i) {
        const double v[] = {r.chi, r.s_sigma, r.s_gram, r.s_fid, r.s_layered, r.s_fid_sq, r.s_fid_b, r.h_p};
        return v[i];
    };
    HierarchyTable tab;
    std::vector<double> sum(names.size(), 0.0), sq(names.size(), 0.0);
    for (const auto& r : reps) {
        if (r.skipped) {
            ++tab.skipped;
            continue;
        }
        ++tab.used;
        if (r.s_fid < -1e-9) ++tab.conjecture_violations;
        for (size_t i = 0; i < names.size(); ++i) {
            sum[i] += get(r, i);
            sq[i] += get(r, i) * get(r, i);
        }
    }
    for (size_t i = 0; i < names.size(); ++i) {
        double m = tab.used ? sum[i] / tab.used : kNaN;
        double s = tab.used ? std::sqrt(std::max(0.0, sq[i] / tab.used - m * m)) : kNaN;
        tab.rows.push_back({names[i], m, s});
    }
    return tab;
}

} // namespace qchan
