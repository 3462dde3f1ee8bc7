#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aid/rng.hpp"
#include "aid/simgen.hpp"
#include "aid/stockout.hpp"

using namespace aid;

namespace {

// Independent oracle: scan the CDF directly.
std::size_t geometric_quantile_oracle(double p, double nu) {
    std::size_t k = 0;
    while (1.0 - std::pow(1.0 - p, static_cast<double>(k) + 1.0) < nu) ++k;
    return k;
}

DemandSeries make(std::vector<double> values) {
    DemandSeries s;
    s.id = "test";
    s.values = std::move(values);
    return s;
}

}  // namespace

TEST_CASE("geometric quantile matches CDF enumeration on the full grid") {
    for (int pi = 1; pi <= 19; ++pi) {
        const double p = 0.05 * pi;
        for (const double nu : {0.5, 0.9, 0.99, 0.999})
            CHECK(geometric_quantile(p, nu) == geometric_quantile_oracle(p, nu));
    }
    CHECK(geometric_quantile(0.5, 0.99) == 6);
    CHECK(geometric_quantile(0.9, 0.99) == 1);
    CHECK(geometric_quantile(0.5, 0.5) == 0);
    CHECK(geometric_quantile(1.0, 0.99) == 0);
    CHECK_THROWS(geometric_quantile(0.0, 0.9));
    CHECK_THROWS(geometric_quantile(0.5, 1.0));
}

TEST_CASE("an injected gap in a dense series is recovered exactly") {
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 11ULL, 42ULL}) {
        ScenarioConfig cfg;
        cfg.n = 100;
        cfg.p_occ = 0.9;
        cfg.n_stockouts = 1;
        cfg.stockout_len = 20;
        cfg.seed = seed;
        const LabeledSeries labeled = gen_stockout_series(cfg);
        const std::size_t injected = static_cast<std::size_t>(
            std::count(labeled.truth_flags.begin(), labeled.truth_flags.end(), 1));
        if (injected != 20) continue;  // gap truncated at the boundary

        const StockoutReport report = detect_stockouts(labeled.series, 0.999);
        CHECK(report.flags == labeled.truth_flags);
    }
}

TEST_CASE("nu = 1 switches detection off") {
    const auto labeled = gen_stockout_series({});
    const StockoutReport report = detect_stockouts(labeled.series, 1.0);
    CHECK(report.flag_count() == 0);
    CHECK(report.flagged_intervals.empty());
}

TEST_CASE("strictly positive series yields no flags") {
    const auto report = detect_stockouts(make({3, 1, 4, 1, 5, 9, 2, 6, 5, 3}), 0.999);
    CHECK(report.flag_count() == 0);
    CHECK(report.flagged_intervals.empty());
}

TEST_CASE("fewer than 3 intervals abstains") {
    const auto report = detect_stockouts(make({1, 0, 0, 0, 1, 0, 0, 0, 0, 0}), 0.999);
    CHECK(report.insufficient_data);
    CHECK(report.flag_count() == 0);
}

TEST_CASE("raising nu never adds flags") {
    Rng rng(31337);
    for (int rep = 0; rep < 25; ++rep) {
        ScenarioConfig cfg;
        cfg.n = 120;
        cfg.p_occ = 0.3 + 0.6 * rng.uniform();
        cfg.n_stockouts = 1 + rng.uniform_int(4);
        cfg.stockout_len = 3 + rng.uniform_int(8);
        cfg.seed = rng.uniform_int(1u << 30);
        const auto labeled = gen_stockout_series(cfg);

        const StockoutDetector detector(labeled.series);
        const double lo = 0.9, hi = 0.999;
        const auto flags_lo = detector.flags_at(lo).flags;
        const auto flags_hi = detector.flags_at(hi).flags;
        for (std::size_t t = 0; t < flags_lo.size(); ++t)
            if (flags_hi[t]) CHECK(flags_lo[t]);  // nested
    }
}

TEST_CASE("flags sit only on zero observations") {
    Rng rng(2718);
    for (int rep = 0; rep < 25; ++rep) {
        ScenarioConfig cfg;
        cfg.n = 100;
        cfg.p_occ = 0.2 + 0.7 * rng.uniform();
        cfg.n_stockouts = 2;
        cfg.stockout_len = 5;
        cfg.seed = rng.uniform_int(1u << 30);
        const auto labeled = gen_stockout_series(cfg);
        const auto report = detect_stockouts(labeled.series, 0.99);
        for (std::size_t t = 0; t < report.flags.size(); ++t)
            if (report.flags[t]) CHECK(labeled.series.values[t] == 0.0);
        for (const auto& fi : report.flagged_intervals) {
            CHECK(fi.length >= 1);
            CHECK(fi.length - 1 > fi.threshold);
        }
    }
}

TEST_CASE("leading and trailing runs raise their flags") {
    // A dense positive series with a long leading and trailing zero block.
    std::vector<double> values(60, 1.0);
    for (std::size_t t = 0; t < 12; ++t) values[t] = 0.0;
    for (std::size_t t = 48; t < 60; ++t) values[t] = 0.0;
    const auto report = detect_stockouts(make(values), 0.999);
    CHECK(report.leading_flag);
    CHECK(report.trailing_flag);
    for (std::size_t t = 0; t < 12; ++t) CHECK(report.flags[t] == 1);
    for (std::size_t t = 48; t < 60; ++t) CHECK(report.flags[t] == 1);
    for (std::size_t t = 12; t < 48; ++t) CHECK(report.flags[t] == 0);
}
