#pragma once

#include <cstddef>
#include <vector>

#include "aid/series.hpp"
#include "aid/smoothing.hpp"

namespace aid {

struct FlaggedInterval {
    std::size_t closing_period;  // 1-based period of the demand that closes it
    std::size_t length;          // interval length q (trailing run: run length)
    std::size_t threshold;       // geometric quantile the interval exceeded
};

struct StockoutReport {
    std::vector<int> flags;     // 1 = observation inside a detected stockout
    double level = 1.0;         // the nu the report was produced at
    std::vector<double> p_hat;  // smoothed occurrence probability per interval
    std::vector<FlaggedInterval> flagged_intervals;
    bool leading_flag = false;   // flagged gap touches the start of the series
    bool trailing_flag = false;  // flagged zero-run at the end of the series
    bool insufficient_data = false;  // fewer than 3 intervals, detection abstained

    std::size_t flag_count() const;
};

/// Smallest integer k with 1 - (1-p)^(k+1) >= nu (failures before the first
/// success). Requires p in (0,1] and nu in (0,1); p == 1 gives 0.
std::size_t geometric_quantile(double p, double nu);

/**
 * Per-series stockout detection with the nu-independent work done once.
 *
 * Construction decomposes the series, smooths the demand intervals against
 * their closing periods (the first interval and the trailing zero-run stay
 * out of the fit) and inverts the smoothed intervals into occurrence
 * probabilities. flags_at() then compares each interval against the
 * geometric quantile at the requested level, which makes sweeping nu cheap.
 */
class StockoutDetector {
public:
    StockoutDetector(const DemandSeries& series, const SmoothConfig& config = {});

    /// Flags intervals whose length exceeds the geometric threshold at nu.
    /// nu == 1 switches detection off (all-zero flags).
    StockoutReport flags_at(double nu) const;

    bool insufficient() const { return insufficient_; }
    const std::vector<double>& interval_p_hat() const { return p_hat_; }

private:
    std::size_t n_ = 0;
    Decomposition decomp_;
    bool insufficient_ = true;
    std::vector<double> p_hat_;       // aligned with decomp_.intervals
    double p_hat_first_ = 1.0;        // probability applied to the first interval
    double p_hat_last_ = 1.0;         // probability applied to the trailing run
};

StockoutReport detect_stockouts(const DemandSeries& series, double nu,
                                const SmoothConfig& config = {});

}  // namespace aid
