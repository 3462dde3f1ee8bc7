#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aid/dataset.hpp"
#include "aid/features.hpp"
#include "aid/inventory.hpp"
#include "aid/metrics.hpp"

namespace aid {

/// Everything the forecasting and inventory runs need per series: features
/// built on the training part, the withheld actuals, and the holdout
/// evaluation mask (stockout-flagged holdout cells are excluded).
struct ForecastPanel {
    std::vector<std::string> ids;
    std::vector<SeriesFeatures> features;
    std::vector<std::vector<double>> train;    // in-sample actuals
    std::vector<std::vector<double>> holdout;  // withheld actuals, length h
    std::vector<std::vector<bool>> keep;       // evaluation mask per holdout cell
    std::vector<std::pair<std::string, std::string>> skipped;  // id, reason
    std::size_t horizon = 0;
};

struct PanelOptions {
    std::size_t horizon = 2;
    std::size_t fourier_order = 2;
    double nu = 0.999;
    SmoothConfig smooth;
    int workers = 0;
};

/// Splits each series into train/holdout, classifies the training part and
/// builds its features. Series shorter than horizon + 10 are skipped with a
/// note, as are series that fail classification.
ForecastPanel build_forecast_panel(const Dataset& dataset, const PanelOptions& options);

/// The synthetic benchmark panel: per_dgp series from each of the six
/// generators with stockout runs zeroed in.
ForecastPanel build_synthetic_panel(int per_dgp, std::size_t n_train,
                                    std::size_t stockout_runs, std::size_t run_len,
                                    std::uint64_t seed, const PanelOptions& options);

struct RmsseSummary {
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
    std::size_t used = 0;     // series entering the summary
    std::size_t dropped = 0;  // holdout fully excluded or degenerate history
};

/// Per-series RMSSE over the evaluation-kept holdout cells.
RmsseSummary summarize_rmsse(const ForecastPanel& panel, const ApproachForecasts& forecasts);

struct InventoryTradeoff {
    double target = 0.0;
    std::vector<InventoryMetrics> per_origin;
    InventoryMetrics overall;  // cells pooled across origins
};

/// Full safety-stock pipeline for one approach: in-sample errors pooled and
/// scaled, per-cell service levels (occurrence-adjusted for the mixture
/// family), order-up-to levels, one-period simulation per target level.
std::vector<InventoryTradeoff> run_inventory_pipeline(const ForecastPanel& panel,
                                                      const ApproachForecasts& forecasts,
                                                      const InventoryConfig& config);

}  // namespace aid
