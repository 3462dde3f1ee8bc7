#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aid {

struct InventoryConfig {
    std::vector<double> target_levels = {0.90, 0.95, 0.99};
    std::size_t lead_time = 1;   // periods; only 1 is implemented
    std::size_t shelf_life = 1;  // periods; stock expires after each review
    std::size_t origins = 2;     // rolling origins, features not recomputed
};

/// Linear-interpolation sample quantile: position h = 1 + q*(m-1) over the
/// sorted values. Needs at least 2 finite values and q in (0,1).
double empirical_quantile(std::span<const double> values, double q);

/// Service level for the sizes part given the occurrence probability:
/// (target - (1 - p_hat)) / p_hat, clamped at zero. Zero means the
/// occurrence probability alone covers the target and no safety quantile is
/// added. p_hat must be positive.
double adjust_service_level(double target, double p_hat);

/**
 * In-sample forecast errors pooled across series after scaling each series
 * by its own standard deviation. Quantiles are extracted from the pool and
 * rescaled per series; the resulting safety addend is floored at zero so
 * order levels stay monotone in the target level across the Eq-style
 * occurrence adjustment.
 */
class SafetyStockPool {
public:
    SafetyStockPool(const std::vector<std::vector<double>>& errors_per_series,
                    std::span<const double> sd_per_series);

    /// Safety addend for one series at a service level; level <= 0 gives 0.
    double addend(std::size_t series, double level) const;
    bool unscaled(std::size_t series) const { return unscaled_[series]; }
    std::size_t pool_size() const { return pooled_.size(); }

private:
    std::vector<double> pooled_;  // sorted scaled errors
    std::vector<double> sd_;
    std::vector<bool> unscaled_;
};

/// Per-series addend at a common level (the full pipeline in one call).
std::vector<double> safety_stock_pipeline(
    const std::vector<std::vector<double>>& errors_per_series,
    std::span<const double> sd_per_series, double level);

/// Order-up-to level: point forecast plus safety addend, rounded up and
/// never negative.
double order_up_to_level(double forecast, double addend);

struct InventoryMetrics {
    double achieved_sl = 0.0;        // share of cells fully served
    double scaled_lost_sales = 0.0;  // unmet demand over own-series sd, summed
    double scaled_on_hand = 0.0;     // leftover stock over own-series sd, summed
    double sl_deviation = 0.0;       // achieved - target
    std::size_t cells = 0;
};

/// One-period order-up-to simulation (stock expires every review period):
/// served = min(stock, demand) cell by cell, aggregated per origin.
std::vector<InventoryMetrics> simulate(const InventoryConfig& config, double target_sl,
                                       const std::vector<std::vector<double>>& order_up_to,
                                       const std::vector<std::vector<double>>& demand,
                                       std::span<const double> sd_per_series);

}  // namespace aid
