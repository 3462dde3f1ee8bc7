#include "aid/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aid/batch.hpp"
#include "aid/classify.hpp"
#include "aid/rng.hpp"
#include "aid/simgen.hpp"
#include "aid/stats.hpp"

namespace aid {

namespace {

struct PanelSlot {
    bool ok = false;
    std::string id;
    std::string error;
    SeriesFeatures features;
    std::vector<double> train, holdout;
    std::vector<bool> keep;
};

PanelSlot build_slot(const DemandSeries& full, const std::vector<std::vector<double>>& exog,
                     const std::vector<std::string>& exog_names,
                     const PanelOptions& options) {
    PanelSlot slot;
    slot.id = full.id;
    const std::size_t h = options.horizon;
    if (full.values.size() < h + 10) {
        slot.error = "shorter than horizon + 10";
        return slot;
    }
    DemandSeries train = full;
    train.values.resize(full.values.size() - h);
    try {
        const DemandClass klass = classify(train, options.nu, options.smooth);
        slot.features = build_features(train, klass.stockouts, klass, h,
                                       options.fourier_order, options.smooth, exog_names,
                                       exog);
        slot.train = train.values;
        slot.holdout.assign(full.values.end() - static_cast<long>(h), full.values.end());
        slot.keep = holdout_evaluation_mask(full, h, options.nu, options.smooth);
        slot.ok = true;
    } catch (const std::exception& e) {
        slot.error = e.what();
    }
    return slot;
}

ForecastPanel collect(std::vector<PanelSlot>& slots, std::size_t horizon) {
    ForecastPanel panel;
    panel.horizon = horizon;
    for (auto& slot : slots) {
        if (!slot.ok) {
            panel.skipped.emplace_back(slot.id, slot.error);
            continue;
        }
        panel.ids.push_back(slot.id);
        panel.features.push_back(std::move(slot.features));
        panel.train.push_back(std::move(slot.train));
        panel.holdout.push_back(std::move(slot.holdout));
        panel.keep.push_back(std::move(slot.keep));
    }
    return panel;
}

}  // namespace

ForecastPanel build_forecast_panel(const Dataset& dataset, const PanelOptions& options) {
    std::vector<PanelSlot> slots(dataset.records.size());
    parallel_for(dataset.records.size(), options.workers, [&](std::size_t i) {
        const auto& record = dataset.records[i];
        std::vector<std::vector<double>> exog = record.exog;  // holdout rows included
        slots[i] = build_slot(record.series, exog, dataset.exog_names, options);
    });
    return collect(slots, options.horizon);
}

ForecastPanel build_synthetic_panel(int per_dgp, std::size_t n_train,
                                    std::size_t stockout_runs, std::size_t run_len,
                                    std::uint64_t seed, const PanelOptions& options) {
    const std::size_t total = 6 * static_cast<std::size_t>(per_dgp);
    std::vector<PanelSlot> slots(total);
    parallel_for(total, options.workers, [&](std::size_t i) {
        const int kind = 1 + static_cast<int>(i) / per_dgp;
        const std::uint64_t series_seed = splitmix64(seed ^ (i * 0x9e3779b97f4a7c15ULL));
        DemandSeries full = gen_dgp(kind, n_train + options.horizon, series_seed);
        full = inject_stockout_runs(full, stockout_runs, run_len, series_seed ^ 0x5a5a5a5a)
                   .series;
        full.id = std::string(dgp_name(kind)) + "_" + std::to_string(i % per_dgp);
        slots[i] = build_slot(full, {}, {}, options);
    });
    return collect(slots, options.horizon);
}

RmsseSummary summarize_rmsse(const ForecastPanel& panel, const ApproachForecasts& forecasts) {
    if (forecasts.forecast.size() != panel.features.size())
        throw std::invalid_argument("summarize_rmsse: forecasts do not match the panel");
    std::vector<double> scores;
    std::size_t dropped = 0;
    for (std::size_t s = 0; s < panel.features.size(); ++s) {
        std::vector<double> actual, predicted;
        for (std::size_t h = 0; h < panel.horizon; ++h) {
            if (!panel.keep[s][h]) continue;
            actual.push_back(panel.holdout[s][h]);
            predicted.push_back(forecasts.forecast[s][h]);
        }
        if (actual.empty()) {
            ++dropped;  // holdout entirely flagged as stockout
            continue;
        }
        try {
            scores.push_back(rmsse(panel.train[s], actual, predicted));
        } catch (const std::exception&) {
            ++dropped;  // flat in-sample history
        }
    }
    RmsseSummary summary;
    summary.used = scores.size();
    summary.dropped = dropped;
    if (scores.empty()) return summary;
    std::sort(scores.begin(), scores.end());
    summary.min = scores.front();
    summary.max = scores.back();
    summary.q1 = empirical_quantile(scores, 0.25);
    summary.median = empirical_quantile(scores, 0.5);
    summary.q3 = empirical_quantile(scores, 0.75);
    summary.mean = mean(scores);
    return summary;
}

std::vector<InventoryTradeoff> run_inventory_pipeline(const ForecastPanel& panel,
                                                      const ApproachForecasts& forecasts,
                                                      const InventoryConfig& config) {
    const std::size_t n_series = panel.features.size();
    if (forecasts.forecast.size() != n_series)
        throw std::invalid_argument("run_inventory_pipeline: forecasts/panel mismatch");
    if (config.origins != panel.horizon)
        throw std::invalid_argument(
            "run_inventory_pipeline: origins must equal the panel horizon");

    const bool mixture_family = forecasts.approach == Approach::mixture ||
                                forecasts.approach == Approach::category_partial ||
                                forecasts.approach == Approach::category_full;

    std::vector<std::vector<double>> errors(n_series);
    std::vector<double> sd(n_series);
    for (std::size_t s = 0; s < n_series; ++s) {
        const auto& y = panel.train[s];
        for (std::size_t t = 0; t < y.size(); ++t)
            errors[s].push_back(y[t] - forecasts.fitted[s][t]);
        sd[s] = std::sqrt(variance_sample(y));
    }
    const SafetyStockPool pool(errors, sd);

    std::vector<InventoryTradeoff> out;
    for (const double target : config.target_levels) {
        std::vector<std::vector<double>> orders(n_series);
        for (std::size_t s = 0; s < n_series; ++s) {
            orders[s].resize(config.origins);
            for (std::size_t o = 0; o < config.origins; ++o) {
                const double point = forecasts.forecast[s][o];
                if (mixture_family) {
                    const double p = std::min(forecasts.occ_prob[s][o], 1.0);
                    if (p <= 0.0) {
                        orders[s][o] = 0.0;  // no demand expected
                        continue;
                    }
                    const double level = adjust_service_level(target, p);
                    orders[s][o] = order_up_to_level(point, pool.addend(s, level));
                } else {
                    orders[s][o] = order_up_to_level(point, pool.addend(s, target));
                }
            }
        }
        InventoryTradeoff tradeoff;
        tradeoff.target = target;
        tradeoff.per_origin = simulate(config, target, orders, panel.holdout, sd);
        InventoryMetrics overall;
        double served_cells = 0.0;
        for (const auto& m : tradeoff.per_origin) {
            overall.cells += m.cells;
            served_cells += m.achieved_sl * static_cast<double>(m.cells);
            overall.scaled_lost_sales += m.scaled_lost_sales;
            overall.scaled_on_hand += m.scaled_on_hand;
        }
        overall.achieved_sl =
            overall.cells > 0 ? served_cells / static_cast<double>(overall.cells) : 0.0;
        overall.sl_deviation = overall.achieved_sl - target;
        tradeoff.overall = overall;
        out.push_back(std::move(tradeoff));
    }
    return out;
}

}  // namespace aid
