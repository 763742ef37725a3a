// io.hpp: channel JSON, bound reports, CSV rows with 12 significant digits

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "davies.hpp"

namespace qchan {

using json = nlohmann::ordered_json;

// {"dim": N, "kraus": [[[re, im], ...], ...]}, each operator flattened row-major;
// "dim_out" is added for rectangular operators
inline json channel_to_json(const Channel& phi) {
    json j;
    j["dim"] = phi.dim_in();
    if (phi.dim_out() != phi.dim_in()) j["dim_out"] = phi.dim_out();
    json ks = json::array();
    for (const auto& k : phi.kraus()) {
        json op = json::array();
        for (Index r = 0; r < k.rows(); ++r)
            for (Index c = 0; c < k.cols(); ++c) op.push_back({k(r, c).real(), k(r, c).imag()});
        ks.push_back(op);
    }
    j["kraus"] = ks;
    return j;
}

inline Channel channel_from_json(const json& j, double tol = kChannelTol) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus")) throw invalid_input("channel json: need dim and kraus");
    if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) throw invalid_input("channel json: dim must be a positive integer");
    Index din = j["dim"].get<Index>();
    Index dout = j.contains("dim_out") ? j["dim_out"].get<Index>() : din;
    if (dout < 1) throw invalid_input("channel json: dim_out must be positive");
    if (!j["kraus"].is_array() || j["kraus"].empty()) throw invalid_input("channel json: kraus must be a non-empty array");
    KrausList K;
    for (const auto& op : j["kraus"]) {
        if (!op.is_array() || static_cast<Index>(op.size()) != din * dout)
            throw invalid_input("channel json: operator must hold dim_out * dim entries");
        Matrix k(dout, din);
        Index idx = 0;
        for (const auto& z : op) {
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw invalid_input("channel json: entries are [re, im] pairs");
            k(idx / din, idx % din) = cplx(z[0].get<double>(), z[1].get<double>());
            ++idx;
        }
        K.push_back(k);
    }
    return Channel(std::move(K), tol);
}

inline Channel read_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("channel json: ") + e.what());
    }
    return channel_from_json(j);
}

inline void write_channel(const Channel& phi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write " + path);
    out << channel_to_json(phi).dump(2) << "\n";
}

inline json to_json(const BoundReport& r) {
    return json{{"chi", r.chi},         {"s_sigma", r.s_sigma},   {"s_gram", r.s_gram},
                {"s_fid", r.s_fid},     {"s_fid_b", r.s_fid_b},   {"s_fid_sq", r.s_fid_sq},
                {"s_layered", r.s_layered}, {"h_p", r.h_p},       {"normalized", r.normalized}};
}

inline BoundReport bound_report_from_json(const json& j) {
    BoundReport r;
    r.chi = j.at("chi").get<double>();
    r.s_sigma = j.at("s_sigma").get<double>();
    r.s_gram = j.at("s_gram").get<double>();
    r.s_fid = j.at("s_fid").get<double>();
    r.s_fid_b = j.at("s_fid_b").get<double>();
    r.s_fid_sq = j.at("s_fid_sq").get<double>();
    r.s_layered = j.at("s_layered").get<double>();
    r.h_p = j.at("h_p").get<double>();
    r.normalized = j.at("normalized").get<bool>();
    return r;
}

inline std::string fmt12(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    template <typename... T>
    void row(const T&... v) {
        bool first = true;
        ((os_ << (first ? "" : ",") << cell(v), first = false), ...);
        os_ << "\n";
    }

    void row_strings(const std::vector<std::string>& v) {
        for (size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << v[i];
        os_ << "\n";
    }

private:
    static std::string cell(double x) { return fmt12(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(long x) { return std::to_string(x); }
    static std::string cell(bool x) { return x ? "1" : "0"; }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    std::ostream& os_;
};

inline void write_scatter_csv(std::ostream& os, const std::vector<ScatterPoint>& pts) {
    CsvWriter w(os);
    w.header({"s_map", "s_min", "q", "tag"});
    for (const auto& p : pts) w.row(p.s_map, p.s_min, p.q, p.tag);
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& pts) {
    CsvWriter w(os);
    w.header({"f12", "f13", "f23", "member", "boundary", "l21", "l31", "l32"});
    for (const auto& p : pts) w.row(p.f12, p.f13, p.f23, p.member, p.boundary, p.l21, p.l31, p.l32);
}

} // namespace qchan
