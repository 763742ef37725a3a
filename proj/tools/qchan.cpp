// qchan: property suites, the hierarchy experiment and figure data
//
//   qchan verify --suite theorem1 --trials 1000 --seed 7
//   qchan hierarchy --trials 10000
//   qchan figure --figure davies-qutrit-set --resolution 10 --output set.csv
//
// exit status: 0 no violations, 1 violations, 2 usage error

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <qchan/io.hpp>
#include <qchan/suites.hpp>

using namespace qchan;

namespace {

struct Options {
    std::string suite, figure, log_base = "e", format = "json", output;
    std::uint64_t seed = 42;
    long trials = 10000;
    long dim = 0, k = 0;
    double q = 2.0, b = 0.0;
    int jobs = 1, resolution = 0;
    bool timing = false;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double base_factor(const Options& o) { return o.log_base == "2" ? 1.0 / std::log(2.0) : 1.0; }

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

SuiteConfig suite_config(const Options& o) {
    SuiteConfig c;
    c.seed = o.seed;
    c.trials = o.trials;
    c.dim = o.dim;
    c.k = o.k;
    c.q = o.q;
    c.b = o.b;
    c.jobs = o.jobs;
    return c;
}

json config_json(const std::string& command, const Options& o) {
    json c;
    c["command"] = command;
    if (command == "verify") c["suite"] = o.suite;
    if (command == "figure") c["figure"] = o.figure;
    c["seed"] = o.seed;
    c["trials"] = o.trials;
    c["dim"] = o.dim;
    c["k"] = o.k;
    c["q"] = o.q;
    c["b"] = o.b;
    c["log_base"] = o.log_base;
    c["format"] = o.format;
    c["resolution"] = o.resolution;
    return c;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write " + path);
    out << text;
}

json report(const std::string& command, const Options& o, json results, long violations, double max_slack, double ms) {
    json r;
    r["command"] = command;
    r["config"] = config_json(command, o);
    r["results"] = std::move(results);
    r["violations"] = violations;
    r["max_slack"] = num(max_slack);
    r["elapsed_ms"] = o.timing ? json(ms) : json(nullptr);
    r["seed"] = o.seed;
    return r;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_verify(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    if (o.suite.empty()) throw usage_error("verify needs --suite");
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) throw usage_error("unknown suite: " + o.suite);
    SuiteResult r = run_suite(o.suite, suite_config(o));
    double f = base_factor(o);
    std::ostringstream os;
    if (o.format == "csv") {
        CsvWriter w(os);
        w.header({"check", "count", "violations", "max_slack", "tol"});
        for (const auto& c : r.checks) w.row(c.name, c.count, c.violations, c.max_slack * f, c.tol * f);
    } else {
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"check", c.name}, {"count", c.count}, {"violations", c.violations},
                              {"max_slack", num(c.max_slack * f)}, {"tol", c.tol * f}});
        json res{{"suite", r.suite}, {"trials", r.trials}, {"errors", r.errors}, {"checks", checks}};
        os << report("verify", o, res, r.violations(), r.max_slack() * f, since(t0)).dump(2) << "\n";
    }
    emit(os.str(), o.output);
    return r.violations() ? 1 : 0;
}

int cmd_hierarchy(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    HierarchyTable tab = run_hierarchy(suite_config(o));
    std::ostringstream os;
    if (o.format == "csv") {
        CsvWriter w(os);
        w.header({"quantity", "mean", "std"});
        for (const auto& r : tab.rows) w.row(r.quantity, r.mean, r.std);
    } else {
        json rows = json::array();
        for (const auto& r : tab.rows) rows.push_back({{"quantity", r.quantity}, {"mean", num(r.mean)}, {"std", num(r.std)}});
        json res{{"used", tab.used}, {"skipped", tab.skipped}, {"table", rows}};
        os << report("hierarchy", o, res, tab.conjecture_violations, -tab.row("s_fid").mean, since(t0)).dump(2) << "\n";
    }
    emit(os.str(), o.output);
    return tab.conjecture_violations ? 1 : 0;
}

struct FigureOut {
    long rows = 0, violations = 0;
    double max_slack = -kInf;
    std::vector<std::string> files;
};

std::ofstream open_out(const std::string& path, FigureOut& fo) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write " + path);
    fo.files.push_back(path);
    return out;
}

// random Pauli channels and the tetrahedron edges; at q = 2 every Pauli point must sit inside the envelope
FigureOut fig_scatter(const Options& o, const std::string& path) {
    FigureOut fo;
    double f = base_factor(o);
    int res = o.resolution ? o.resolution : 100;
    std::vector<ScatterPoint> pts;
    for (long t = 0; t < o.trials; ++t) {
        SeededRng rng(o.seed, static_cast<std::uint64_t>(t));
        RVector p = dirichlet(4, rng);
        auto s = pauli_scatter_point(p, o.q, "pauli");
        if (o.q == 2.0) {
            auto env = pauli_envelope(s.s_map, 2.0);
            double sl = std::max(env.lower - s.s_min, s.s_min - env.upper);
            fo.max_slack = std::max(fo.max_slack, sl);
            if (sl > 1e-9) ++fo.violations;
        }
        pts.push_back(s);
    }
    for (Edge e : tetrahedron_edges())
        for (int i = 0; i <= res; ++i)
            pts.push_back(pauli_scatter_point(edge_point(e, static_cast<double>(i) / res), o.q, std::string("edge_") + edge_name(e)));
    for (auto& p : pts) {
        p.s_map *= f;
        p.s_min *= f;
    }
    auto out = open_out(path, fo);
    write_scatter_csv(out, pts);
    fo.rows = static_cast<long>(pts.size());
    return fo;
}

// grid over the Renyi-2 map entropies of two channels, flagged by the sufficient additivity condition
FigureOut fig_additivity(const Options& o, const std::string& path) {
    FigureOut fo;
    Index n = o.dim ? o.dim : 2, m = o.k ? o.k : n;
    int res = o.resolution ? o.resolution : 100;
    double f = base_factor(o);
    auto out = open_out(path, fo);
    CsvWriter w(out);
    w.header({"s1", "s2", "n", "m", "in_region"});
    double s1max = 2.0 * std::log(static_cast<double>(n)), s2max = 2.0 * std::log(static_cast<double>(m));
    for (int i = 0; i <= res; ++i)
        for (int j = 0; j <= res; ++j) {
            double s1 = s1max * i / res, s2 = s2max * j / res;
            w.row(s1 * f, s2 * f, static_cast<long>(n), static_cast<long>(m), additivity_region(s1, s2, n, m));
            ++fo.rows;
        }
    return fo;
}

// chi(F, b) and S(G)(F, b) for two pure states and one mixed qubit state
FigureOut fig_bunga(const Options& o, const std::string& path) {
    FigureOut fo;
    int res = o.resolution ? o.resolution : 50;
    double f = base_factor(o);
    auto out = open_out(path, fo);
    CsvWriter w(out);
    w.header({"b", "F", "chi", "s_g", "gap"});
    for (int i = 0; i < res; ++i) {
        double b = static_cast<double>(i) / (res - 1);
        for (int j = 0; j < res; ++j) {
            double F = b == 0.0 ? 0.5 : 0.5 * (1.0 - b) + b * j / (res - 1);
            auto r = bunga_check(F, b);
            double gap = r.s_g - r.chi;
            fo.max_slack = std::max(fo.max_slack, -gap);
            if (gap < -1e-9) ++fo.violations;
            w.row(b, F, r.chi * f, r.s_g * f, gap * f);
            ++fo.rows;
        }
    }
    return fo;
}

std::string sibling(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    auto stem = p.stem().string();
    return (p.parent_path() / (stem + suffix + p.extension().string())).string();
}

// members are rechecked against the spectral constraints
FigureOut fig_davies_set(const Options& o, const std::string& path) {
    FigureOut fo;
    int res = o.resolution ? o.resolution : 20;
    auto recheck = [&](const std::vector<SweepPoint>& pts) {
        for (const auto& s : pts)
            if (s.member && !co1_holds(symmetric_block(s.f12, s.f13, s.f23).F)) ++fo.violations;
    };
    auto vol = davies_set_sweep(res);
    recheck(vol);
    {
        auto out = open_out(path, fo);
        write_sweep_csv(out, vol);
    }
    auto plane = davies_set_sweep(res, true);
    recheck(plane);
    {
        auto out = open_out(sibling(path, "_plane"), fo);
        write_sweep_csv(out, plane);
    }
    fo.rows = static_cast<long>(vol.size() + plane.size());
    return fo;
}

// allowed (a, c) region for several temperatures and two random semigroup paths
FigureOut fig_davies_qubit(const Options& o, const std::string& path) {
    FigureOut fo;
    int res = o.resolution ? o.resolution : 100;
    auto out = open_out(path, fo);
    CsvWriter w(out);
    w.header({"kind", "p", "a", "c", "t"});
    for (double p : {0.5, 0.6, 0.75, 0.9}) {
        for (int i = 0; i <= res; ++i) {
            double a = (1.0 - p) * i / res;
            w.row("boundary", p, a, std::sqrt(std::max(0.0, 1.0 - a / (1.0 - p))), kNaN);
            ++fo.rows;
        }
    }
    for (int path_id = 0; path_id < 2; ++path_id) {
        SeededRng rng(o.seed, static_cast<std::uint64_t>(path_id));
        DaviesRates r = random_rates(rng);
        r.p = 0.75;
        for (int i = 0; i <= res; ++i) {
            r.t = 5.0 * i / res;
            DaviesQubit d = from_rates(r);
            double cmax = std::sqrt(std::max(0.0, 1.0 - d.a / (1.0 - d.p)));
            fo.max_slack = std::max(fo.max_slack, d.c - cmax);
            if (d.c > cmax + 1e-12) ++fo.violations;
            w.row(std::string("path") + std::to_string(path_id + 1), d.p, d.a, d.c, r.t);
            ++fo.rows;
        }
    }
    return fo;
}

int cmd_figure(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    static const std::vector<std::string> figs{"scatter-q", "additivity-region", "bunga-surfaces", "davies-qutrit-set",
                                               "davies-qubit-region"};
    if (o.figure.empty()) throw usage_error("figure needs --figure");
    if (std::find(figs.begin(), figs.end(), o.figure) == figs.end()) throw usage_error("unknown figure: " + o.figure);
    if (o.format != "csv" && o.format != "json") throw usage_error("unknown format: " + o.format);
    if (o.resolution != 0 && o.resolution < 10) throw usage_error("--resolution must be at least 10");
    std::string path = o.output.empty() ? o.figure + ".csv" : o.output;
    FigureOut fo;
    if (o.figure == "scatter-q") fo = fig_scatter(o, path);
    else if (o.figure == "additivity-region") fo = fig_additivity(o, path);
    else if (o.figure == "bunga-surfaces") fo = fig_bunga(o, path);
    else if (o.figure == "davies-qutrit-set") fo = fig_davies_set(o, path);
    else fo = fig_davies_qubit(o, path);
    json res{{"figure", o.figure}, {"files", fo.files}, {"rows", fo.rows}};
    std::cout << report("figure", o, res, fo.violations, fo.max_slack, since(t0)).dump(2) << "\n";
    return fo.violations ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum channel entropy bounds: property suites, hierarchy experiment, figure data"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "master seed")->capture_default_str();
        s->add_option("--trials", o.trials, "number of trials")->capture_default_str();
        s->add_option("--dim", o.dim, "Hilbert space dimension (0: default)");
        s->add_option("--k", o.k, "ensemble size / Kraus rank (0: default)");
        s->add_option("--q", o.q, "entropy order")->capture_default_str();
        s->add_option("--b", o.b, "fidelity scaling b (0: default)");
        s->add_option("--log-base", o.log_base, "e or 2")->capture_default_str();
        s->add_option("--format", o.format, "json or csv")->capture_default_str();
        s->add_option("--output", o.output, "output file");
        s->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
        s->add_option("--resolution", o.resolution, "grid resolution (figures)");
        s->add_flag("--timing", o.timing, "record elapsed_ms in the report");
    };
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--suite", o.suite, "theorem1|props|lindblad|sandwich|conjecture1|davies|multiplicativity");
    common(verify);
    auto* hier = app.add_subcommand("hierarchy", "normalized means of the entropy bounds");
    common(hier);
    auto* fig = app.add_subcommand("figure", "emit figure data");
    fig->add_option("figure_name", o.figure, "figure name");
    fig->add_option("--figure", o.figure, "scatter-q|additivity-region|bunga-surfaces|davies-qutrit-set|davies-qubit-region");
    common(fig);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (o.trials < 1) throw usage_error("--trials must be at least 1");
        if (!(o.q > 0.0)) throw usage_error("--q must be positive");
        if (o.log_base != "e" && o.log_base != "2") throw usage_error("--log-base must be e or 2");
        if (o.format != "json" && o.format != "csv") throw usage_error("--format must be json or csv");
        if (o.jobs < 1) throw usage_error("--jobs must be at least 1");
        if (o.dim < 0 || o.dim == 1 || o.k < 0) throw usage_error("--dim must be at least 2 and --k nonnegative");
        if (o.b < 0.0) throw usage_error("--b must be nonnegative");
        if (o.b > 0.0 && o.b < default_b(o.dim ? o.dim : 2) - 1e-12) throw usage_error("--b below the admissible minimum");
        if (verify->parsed()) return cmd_verify(o);
        if (hier->parsed()) return cmd_hierarchy(o);
        return cmd_figure(o);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
