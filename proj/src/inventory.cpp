#include "aid/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aid {

double empirical_quantile(std::span<const double> values, double q) {
    if (values.size() < 2)
        throw std::invalid_argument("empirical_quantile: need at least 2 values");
    if (!(q > 0.0) || !(q < 1.0))
        throw std::invalid_argument("empirical_quantile: q must be in (0,1)");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = 1.0 + q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    if (lo >= sorted.size()) return sorted.back();
    const double below = sorted[lo - 1];
    const double above = lo < sorted.size() ? sorted[lo] : below;
    return below + frac * (above - below);
}

double adjust_service_level(double target, double p_hat) {
    if (!(target > 0.0) || !(target < 1.0))
        throw std::invalid_argument("adjust_service_level: target must be in (0,1)");
    if (!(p_hat > 0.0) || p_hat > 1.0)
        throw std::invalid_argument("adjust_service_level: p_hat must be in (0,1]");
    return std::max((target - (1.0 - p_hat)) / p_hat, 0.0);
}

SafetyStockPool::SafetyStockPool(const std::vector<std::vector<double>>& errors_per_series,
                                 std::span<const double> sd_per_series) {
    if (errors_per_series.size() != sd_per_series.size())
        throw std::invalid_argument("SafetyStockPool: errors/sd length mismatch");
    sd_.assign(sd_per_series.begin(), sd_per_series.end());
    unscaled_.assign(sd_.size(), false);
    for (std::size_t s = 0; s < errors_per_series.size(); ++s) {
        if (errors_per_series[s].size() < 2)
            throw std::invalid_argument("SafetyStockPool: need >= 2 errors per series");
        if (sd_[s] > 0.0) {
            for (double e : errors_per_series[s]) pooled_.push_back(e / sd_[s]);
        } else {
            unscaled_[s] = true;  // keeps the pooled quantile unrescaled
        }
    }
    if (pooled_.size() < 2)
        throw std::invalid_argument("SafetyStockPool: no scalable errors in the pool");
    std::sort(pooled_.begin(), pooled_.end());
}

double SafetyStockPool::addend(std::size_t series, double level) const {
    if (level <= 0.0) return 0.0;  // occurrence probability already covers the target
    const double capped = std::min(level, 1.0 - 1e-12);
    // pooled_ is sorted once at construction; interpolate directly.
    const double h = 1.0 + capped * static_cast<double>(pooled_.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    const double below = pooled_[lo - 1];
    const double above = lo < pooled_.size() ? pooled_[lo] : below;
    const double q = below + frac * (above - below);
    const double scaled = unscaled_[series] ? q : q * sd_[series];
    return std::max(scaled, 0.0);
}

std::vector<double> safety_stock_pipeline(
    const std::vector<std::vector<double>>& errors_per_series,
    std::span<const double> sd_per_series, double level) {
    const SafetyStockPool pool(errors_per_series, sd_per_series);
    std::vector<double> out(errors_per_series.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = pool.addend(s, level);
    return out;
}

double order_up_to_level(double forecast, double addend) {
    return std::max(std::ceil(forecast + addend), 0.0);
}

std::vector<InventoryMetrics> simulate(const InventoryConfig& config, double target_sl,
                                       const std::vector<std::vector<double>>& order_up_to,
                                       const std::vector<std::vector<double>>& demand,
                                       std::span<const double> sd_per_series) {
    if (config.lead_time != 1 || config.shelf_life != 1)
        throw std::invalid_argument("simulate: only the one-period policy is implemented");
    if (order_up_to.size() != demand.size() || order_up_to.size() != sd_per_series.size())
        throw std::invalid_argument("simulate: series dimension mismatch");

    std::vector<InventoryMetrics> per_origin(config.origins);
    for (std::size_t s = 0; s < order_up_to.size(); ++s) {
        if (order_up_to[s].size() != config.origins || demand[s].size() != config.origins)
            throw std::invalid_argument("simulate: origin dimension mismatch");
        for (std::size_t o = 0; o < config.origins; ++o) {
            const double stock = order_up_to[s][o];
            if (stock < 0.0) throw std::invalid_argument("simulate: negative order level");
            const double served = std::min(stock, demand[s][o]);
            const double lost = demand[s][o] - served;
            const double leftover = stock - served;
            auto& m = per_origin[o];
            ++m.cells;
            if (lost == 0.0) m.achieved_sl += 1.0;
            const double divisor = sd_per_series[s] > 0.0 ? sd_per_series[s] : 1.0;
            m.scaled_lost_sales += lost / divisor;
            m.scaled_on_hand += leftover / divisor;
        }
    }
    for (auto& m : per_origin) {
        if (m.cells > 0) m.achieved_sl /= static_cast<double>(m.cells);
        m.sl_deviation = m.achieved_sl - target_sl;
    }
    return per_origin;
}

}  // namespace aid
