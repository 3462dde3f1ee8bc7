#pragma once

#include <span>
#include <string>
#include <vector>

#include "aid/classify.hpp"
#include "aid/series.hpp"
#include "aid/smoothing.hpp"
#include "aid/stockout.hpp"

namespace aid {

/**
 * Per-series feature table: n in-sample rows followed by `horizon` holdout
 * rows. Smoothed columns depend on in-sample data only; their holdout rows
 * repeat the last in-sample value. The holdout stockout dummies are zero
 * (future flags are unknown at forecast time).
 */
struct SeriesFeatures {
    std::string id;
    std::size_t n_insample = 0;
    std::size_t horizon = 0;
    int frequency = 52;

    std::vector<double> target;        // in-sample actuals, length n
    std::vector<double> smooth_sales;  // length n+h, floored at zero
    std::vector<double> smooth_demand; // stockouts removed, gaps interpolated
    std::vector<double> smooth_sizes;  // non-zero sizes only, interpolated
    std::vector<double> probability;   // smoothed occurrence, clamped [0,1]
    std::vector<int> stockout_dummy;   // length n+h
    std::vector<std::vector<double>> fourier;       // 2*J columns, length n+h
    std::vector<std::string> fourier_names;
    int category_partial = 0;  // 0 regular, 1 intermittent
    int category_full = 0;     // 0 regular, 1 smooth, 2 lumpy
    std::vector<std::string> exog_names;
    std::vector<std::vector<double>> exog;  // pass-through columns, length n+h

    std::size_t rows() const { return n_insample + horizon; }
};

/// Builds the engineered features for one training series. `report` and
/// `klass` must come from the same series. Exogenous columns, when present,
/// must cover the holdout rows too.
SeriesFeatures build_features(const DemandSeries& train, const StockoutReport& report,
                              const DemandClass& klass, std::size_t horizon,
                              std::size_t fourier_order, const SmoothConfig& config = {},
                              const std::vector<std::string>& exog_names = {},
                              const std::vector<std::vector<double>>& exog = {});

enum class Engine { pooled_regression, smoothed_series };
enum class Approach { conventional, full, mixture, category_partial, category_full };

const char* to_string(Engine engine);
const char* to_string(Approach approach);

struct PooledFit {
    std::vector<std::string> names;  // kept columns, "intercept" first
    std::vector<double> coef;
    std::vector<std::string> dropped;  // rank-deficient columns removed
};

/// Least squares over stacked panel rows. Collinear columns are dropped
/// greedily in input order and reported.
PooledFit fit_pooled_regression(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names,
                                std::span<const double> target);

struct ApproachForecasts {
    Approach approach;
    Engine engine;
    std::vector<std::vector<double>> forecast;  // [series][h], >= 0
    std::vector<std::vector<double>> fitted;    // [series][n], >= 0
    std::vector<std::vector<double>> occ_prob;  // [series][h]; 1 outside mixtures
    std::vector<std::string> dropped_columns;
};

/**
 * Runs one forecasting approach over the panel.
 *
 * Pooled regression fits one global model (two for the mixture family:
 * occurrence on all rows, sizes on the non-zero non-stockout rows) and the
 * mixture forecast is the product of the clamped occurrence prediction and
 * the sizes prediction. The smoothed-series engine reads the corresponding
 * smoothed column directly; the category approaches then coincide with the
 * mixture, since a per-series constant cannot change a per-series curve.
 */
ApproachForecasts run_approach(Approach approach, Engine engine,
                               const std::vector<SeriesFeatures>& features);

}  // namespace aid
