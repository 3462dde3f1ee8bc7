#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aid/series.hpp"

namespace aid {

/// Settings for one synthetic stockout series: geometric demand intervals
/// with a number of intervals replaced by anomalously long ones.
struct ScenarioConfig {
    std::size_t n = 100;
    double p_occ = 0.8;
    std::size_t n_stockouts = 1;
    std::size_t stockout_len = 5;
    std::uint64_t seed = 1;
};

struct LabeledSeries {
    DemandSeries series;
    std::vector<int> truth_flags;  // 1 = artificially injected zero
    std::string dgp;
    bool reduced = false;  // stockout count was cut down to fit the sample
};

/**
 * Draws demand intervals from Geometric(p_occ), extends a random subset of
 * them by stockout_len labeled zeroes inserted before the closing demand,
 * fills occurrences with 1 + NB(size 5, prob 0.75) sizes and truncates to
 * exactly n observations. When the requested stockouts cannot fit the
 * sample, the count is reduced and the result flagged.
 */
LabeledSeries gen_stockout_series(const ScenarioConfig& cfg);

/// Tuning knobs the six generators share. Initial levels are fixed per kind
/// (1000 for the multiplicative kinds, 10 for kind 2, 5 for kind 5).
struct DgpConfig {
    double level_alpha = 0.1;   // local-level smoothing parameter
    double lognorm_sdlog = 0.05;
    double gauss_sd = 1.0;
    double zero_share = 0.3;    // forced zeroes for the lumpy kinds
};

struct DgpResult {
    DemandSeries series;
    std::vector<double> mean_path;  // the level/mean that drove each draw
};

/// The six demand generating processes:
///   1 regular fractional, 2 smooth intermittent fractional,
///   3 lumpy intermittent fractional, 4 regular count,
///   5 smooth intermittent count, 6 lumpy intermittent count.
DgpResult gen_dgp_detailed(int kind, std::size_t n, std::uint64_t seed,
                           const DgpConfig& cfg = {});
DemandSeries gen_dgp(int kind, std::size_t n, std::uint64_t seed, const DgpConfig& cfg = {});

/// Multiplies round(rate * #non-zero) randomly chosen non-zero observations
/// by multiplier.
DemandSeries inject_promotions(const DemandSeries& series, double rate, double multiplier,
                               std::uint64_t seed);

/// Zeroes `count` non-overlapping runs of `len` consecutive observations
/// (panel construction for forecasting/inventory experiments).
LabeledSeries inject_stockout_runs(const DemandSeries& series, std::size_t count,
                                   std::size_t len, std::uint64_t seed);

const char* dgp_name(int kind);

}  // namespace aid
