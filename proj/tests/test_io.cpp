#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <qchan/io.hpp>
#include <qchan/suites.hpp>

using namespace qchan;

TEST(Io, ChannelJsonRoundTrip) {
    SeededRng rng(91);
    Channel phi = random_channel(3, 2, rng);
    json j = channel_to_json(phi);
    EXPECT_EQ(j["dim"], 3);
    EXPECT_EQ(j["kraus"].size(), 2u);
    EXPECT_EQ(j["kraus"][0].size(), 9u);
    Channel back = channel_from_json(json::parse(j.dump()));
    EXPECT_LT(max_abs(back.superoperator() - phi.superoperator()), 1e-15);
}

TEST(Io, ChannelFileRoundTrip) {
    auto path = (std::filesystem::temp_directory_path() / "qchan_io_test_channel.json").string();
    Channel phi = depolarizing(2, 0.3);
    write_channel(phi, path);
    EXPECT_LT(max_abs(read_channel(path).choi() - phi.choi()), 1e-15);
    std::filesystem::remove(path);
    EXPECT_THROW(read_channel(path), invalid_input);
}

TEST(Io, RectangularChannelCarriesOutputDimension) {
    SeededRng rng(92);
    Channel c = complementary(random_channel(2, 3, rng));
    json j = channel_to_json(c);
    EXPECT_EQ(j["dim_out"], 3);
    EXPECT_EQ(channel_from_json(j).dim_out(), 3);
}

TEST(Io, MalformedChannelJsonRejected) {
    EXPECT_THROW(channel_from_json(json::parse(R"({"kraus": []})")), invalid_input);
    EXPECT_THROW(channel_from_json(json::parse(R"({"dim": 2, "kraus": []})")), invalid_input);
    EXPECT_THROW(channel_from_json(json::parse(R"({"dim": 2, "kraus": [[[1,0],[0,0],[0,0]]]})")), invalid_input);
    EXPECT_THROW(channel_from_json(json::parse(R"({"dim": 1, "kraus": [[[1,0,0]]]})")), invalid_input);
    // valid shape, not trace preserving
    EXPECT_THROW(channel_from_json(json::parse(R"({"dim": 1, "kraus": [[[0.5,0]]]})")), invalid_channel);
}

TEST(Io, BoundReportRoundTrip) {
    SeededRng rng(93);
    BoundReport r = hierarchy(random_ensemble(3, 2, rng));
    json j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"chi", "s_sigma", "s_gram", "s_fid", "s_fid_b", "s_fid_sq", "s_layered", "h_p",
                                              "normalized"}));
    BoundReport b = bound_report_from_json(json::parse(j.dump()));
    EXPECT_EQ(b.s_fid, r.s_fid);
    EXPECT_EQ(b.s_layered, r.s_layered);
    EXPECT_TRUE(b.normalized);
}

TEST(Io, TwelveSignificantDigits) {
    EXPECT_EQ(fmt12(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(fmt12(123456.7890123456), "123456.789012");
    EXPECT_EQ(fmt12(-0.0), "0");
    EXPECT_EQ(fmt12(kInf), "inf");
    EXPECT_EQ(fmt12(std::nan("")), "nan");
}

TEST(Io, ScatterCsvHeaderAndRows) {
    std::ostringstream os;
    write_scatter_csv(os, {{0.5, 0.25, 2.0, "AB"}});
    EXPECT_EQ(os.str(), "s_map,s_min,q,tag\n0.5,0.25,2,AB\n");
}

TEST(Io, SweepCsvHeader) {
    std::ostringstream os;
    write_sweep_csv(os, davies_set_sweep(10));
    std::string first = os.str().substr(0, os.str().find('\n'));
    EXPECT_EQ(first, "f12,f13,f23,member,boundary,l21,l31,l32");
}

TEST(Io, SuiteRunsAreDeterministicAcrossJobCounts) {
    SuiteConfig a;
    a.trials = 60;
    a.seed = 5;
    SuiteConfig b = a;
    b.jobs = 3;
    auto ra = run_suite("theorem1", a), rb = run_suite("theorem1", b);
    ASSERT_EQ(ra.checks.size(), rb.checks.size());
    for (size_t i = 0; i < ra.checks.size(); ++i) {
        EXPECT_EQ(ra.checks[i].max_slack, rb.checks[i].max_slack);
        EXPECT_EQ(ra.checks[i].count, rb.checks[i].count);
    }
    EXPECT_EQ(ra.violations(), 0);
    EXPECT_THROW(run_suite("nope", a), invalid_input);
    a.trials = 0;
    EXPECT_THROW(run_suite("theorem1", a), invalid_input);
}

TEST(Io, HierarchyPrefixSumsIndependentOfTrialCount) {
    SuiteConfig a;
    a.trials = 20;
    SuiteConfig b = a;
    b.trials = 40;
    // trial t draws from stream t, so the first 20 reports coincide
    for (long t = 0; t < 20; ++t) {
        SeededRng r1(a.seed, static_cast<std::uint64_t>(t)), r2(b.seed, static_cast<std::uint64_t>(t));
        EXPECT_EQ(hierarchy(random_ensemble(3, 2, r1)).s_fid, hierarchy(random_ensemble(3, 2, r2)).s_fid);
    }
    auto tab = run_hierarchy(a);
    EXPECT_EQ(tab.row("chi").mean, 0.0);
    EXPECT_EQ(tab.row("h_p").mean, 1.0);
    EXPECT_EQ(tab.used + tab.skipped, 20);
}
