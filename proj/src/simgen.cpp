#include "aid/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aid/rng.hpp"

namespace aid {

namespace {

constexpr double kShiftedNbSize = 5.0;
constexpr double kShiftedNbProb = 0.75;

std::string make_id(const char* prefix, std::uint64_t seed) {
    return std::string(prefix) + "_" + std::to_string(seed);
}

}  // namespace

const char* dgp_name(int kind) {
    switch (kind) {
        case 1: return "regular_fractional";
        case 2: return "smooth_intermittent_fractional";
        case 3: return "lumpy_intermittent_fractional";
        case 4: return "regular_count";
        case 5: return "smooth_intermittent_count";
        case 6: return "lumpy_intermittent_count";
    }
    return "unknown";
}

LabeledSeries gen_stockout_series(const ScenarioConfig& cfg) {
    if (cfg.n < 30) throw std::invalid_argument("gen_stockout_series: n must be >= 30");
    if (!(cfg.p_occ > 0.0) || !(cfg.p_occ < 1.0))
        throw std::invalid_argument("gen_stockout_series: p_occ must be in (0,1)");
    if (cfg.stockout_len < 1)
        throw std::invalid_argument("gen_stockout_series: stockout_len must be >= 1");

    Rng rng(cfg.seed);

    // Natural demand intervals covering at least n periods.
    std::vector<std::size_t> intervals;
    std::size_t covered = 0;
    while (covered < cfg.n) {
        const std::size_t q = 1 + rng.geometric_failures(cfg.p_occ);
        intervals.push_back(q);
        covered += q;
    }

    // How many stockouts actually fit.
    const std::size_t capacity =
        cfg.stockout_len + 1 >= cfg.n ? 0 : (cfg.n - 1) / (cfg.stockout_len + 1);
    const std::size_t k = std::min({cfg.n_stockouts, intervals.size(), capacity});

    std::vector<char> extended(intervals.size(), 0);
    for (std::size_t idx : rng.sample_without_replacement(intervals.size(), k))
        extended[idx] = 1;

    // Lay the series out: natural zeroes, injected zeroes, closing demand.
    LabeledSeries out;
    out.dgp = "stockout_scenario";
    out.series.id = make_id("scenario", cfg.seed);
    out.reduced = k < cfg.n_stockouts;
    auto& values = out.series.values;
    auto& flags = out.truth_flags;
    for (std::size_t j = 0; j < intervals.size() && values.size() < cfg.n; ++j) {
        for (std::size_t z = 0; z + 1 < intervals[j] && values.size() < cfg.n; ++z) {
            values.push_back(0.0);
            flags.push_back(0);
        }
        if (extended[j]) {
            for (std::size_t z = 0; z < cfg.stockout_len && values.size() < cfg.n; ++z) {
                values.push_back(0.0);
                flags.push_back(1);
            }
        }
        if (values.size() < cfg.n) {
            values.push_back(
                static_cast<double>(1 + rng.nbinom(kShiftedNbSize, kShiftedNbProb)));
            flags.push_back(0);
        }
    }
    while (values.size() < cfg.n) {  // trailing natural zeroes
        values.push_back(0.0);
        flags.push_back(0);
    }
    return out;
}

DgpResult gen_dgp_detailed(int kind, std::size_t n, std::uint64_t seed, const DgpConfig& cfg) {
    if (kind < 1 || kind > 6) throw std::invalid_argument("gen_dgp: kind must be in 1..6");
    if (n < 10) throw std::invalid_argument("gen_dgp: n must be >= 10");

    Rng rng(seed);
    DgpResult out;
    DemandSeries& s = out.series;
    s.id = make_id(dgp_name(kind), seed);
    s.values.resize(n);

    const auto multiplicative_path = [&](double initial) {
        std::vector<double> path(n);
        double level = initial;
        for (std::size_t t = 0; t < n; ++t) {
            const double growth = rng.lognormal(0.0, cfg.lognorm_sdlog);  // 1 + eps
            path[t] = level * growth;
            level *= 1.0 + cfg.level_alpha * (growth - 1.0);
        }
        return path;
    };
    const auto force_zeroes = [&](std::vector<double>& values) {
        const auto k = static_cast<std::size_t>(std::lround(cfg.zero_share *
                                                            static_cast<double>(n)));
        for (std::size_t idx : rng.sample_without_replacement(n, k)) values[idx] = 0.0;
    };

    switch (kind) {
        case 1:
            s.values = multiplicative_path(1000.0);
            out.mean_path = s.values;
            break;
        case 2: {
            out.mean_path.resize(n);
            double level = 10.0;
            for (std::size_t t = 0; t < n; ++t) {
                out.mean_path[t] = level;
                const double eps = rng.normal(0.0, cfg.gauss_sd);
                s.values[t] = std::max(level + eps, 0.0);
                level += cfg.level_alpha * eps;
            }
            break;
        }
        case 3:
            s.values = multiplicative_path(1000.0);
            out.mean_path = s.values;
            force_zeroes(s.values);
            break;
        case 4: {
            out.mean_path = multiplicative_path(1000.0);
            for (std::size_t t = 0; t < n; ++t)
                s.values[t] = static_cast<double>(rng.nbinom_mean(out.mean_path[t], 20.0));
            break;
        }
        case 5: {
            out.mean_path = multiplicative_path(5.0);
            for (std::size_t t = 0; t < n; ++t)
                s.values[t] = static_cast<double>(rng.nbinom_mean(out.mean_path[t], 2.0));
            break;
        }
        case 6: {
            out.mean_path = multiplicative_path(1000.0);
            for (std::size_t t = 0; t < n; ++t)
                s.values[t] = static_cast<double>(rng.nbinom_mean(out.mean_path[t], 20.0));
            force_zeroes(s.values);
            break;
        }
    }
    return out;
}

DemandSeries gen_dgp(int kind, std::size_t n, std::uint64_t seed, const DgpConfig& cfg) {
    return gen_dgp_detailed(kind, n, seed, cfg).series;
}

DemandSeries inject_promotions(const DemandSeries& series, double rate, double multiplier,
                               std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("inject_promotions: rate must be in [0,1]");
    if (!(multiplier > 0.0))
        throw std::invalid_argument("inject_promotions: multiplier must be positive");

    DemandSeries out = series;
    std::vector<std::size_t> nonzero;
    for (std::size_t t = 0; t < out.values.size(); ++t)
        if (out.values[t] > 0.0) nonzero.push_back(t);
    const auto k = static_cast<std::size_t>(
        std::lround(rate * static_cast<double>(nonzero.size())));
    if (k == 0 || multiplier == 1.0) return out;

    Rng rng(seed);
    for (std::size_t pick : rng.sample_without_replacement(nonzero.size(), k))
        out.values[nonzero[pick]] *= multiplier;
    return out;
}

LabeledSeries inject_stockout_runs(const DemandSeries& series, std::size_t count,
                                   std::size_t len, std::uint64_t seed) {
    const std::size_t n = series.values.size();
    LabeledSeries out;
    out.series = series;
    out.truth_flags.assign(n, 0);
    out.dgp = "injected_runs";
    if (count == 0 || len == 0 || len > n) return out;

    Rng rng(seed);
    std::size_t placed = 0;
    for (int attempt = 0; attempt < 200 && placed < count; ++attempt) {
        const std::size_t start = rng.uniform_int(n - len + 1);
        bool overlaps = false;
        for (std::size_t t = start; t < start + len; ++t)
            if (out.truth_flags[t]) {
                overlaps = true;
                break;
            }
        if (overlaps) continue;
        for (std::size_t t = start; t < start + len; ++t) {
            out.series.values[t] = 0.0;
            out.truth_flags[t] = 1;
        }
        ++placed;
    }
    out.reduced = placed < count;
    return out;
}

}  // namespace aid
