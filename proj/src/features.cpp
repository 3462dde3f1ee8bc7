#include "aid/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aid/stats.hpp"

namespace aid {

namespace {

constexpr std::size_t kMinNonZeroForSmoothing = 7;

// Smooth y observed at (1-based) positions `pos`, then carry the curve onto
// every period 1..n by linear interpolation, flat at both ends.
std::vector<double> smooth_and_interpolate(const std::vector<std::size_t>& pos,
                                           const std::vector<double>& y, std::size_t n,
                                           const SmoothConfig& config) {
    if (pos.empty()) throw std::invalid_argument("smooth_and_interpolate: no observations");
    std::vector<double> fitted;
    if (pos.size() == 1) {
        fitted = {y[0]};
    } else {
        std::vector<double> x(pos.size());
        std::transform(pos.begin(), pos.end(), x.begin(),
                       [](std::size_t p) { return static_cast<double>(p); });
        fitted = smooth(x, y, config);
    }

    std::vector<double> out(n);
    std::size_t seg = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        while (seg + 1 < pos.size() && pos[seg + 1] < t) ++seg;
        if (t <= pos.front()) {
            out[t - 1] = fitted.front();
        } else if (t >= pos.back()) {
            out[t - 1] = fitted.back();
        } else {
            const double x0 = static_cast<double>(pos[seg]);
            const double x1 = static_cast<double>(pos[seg + 1]);
            const double w = (static_cast<double>(t) - x0) / (x1 - x0);
            out[t - 1] = (1.0 - w) * fitted[seg] + w * fitted[seg + 1];
        }
    }
    return out;
}

void append_holdout_repeat(std::vector<double>& column, std::size_t horizon) {
    const double last = column.back();
    column.insert(column.end(), horizon, last);
}

void floor_at_zero(std::vector<double>& column) {
    for (double& v : column) v = std::max(v, 0.0);
}

}  // namespace

SeriesFeatures build_features(const DemandSeries& train, const StockoutReport& report,
                              const DemandClass& klass, std::size_t horizon,
                              std::size_t fourier_order, const SmoothConfig& config,
                              const std::vector<std::string>& exog_names,
                              const std::vector<std::vector<double>>& exog) {
    const std::size_t n = train.values.size();
    if (report.flags.size() != n)
        throw std::invalid_argument("build_features: report does not match the series");
    if (exog.size() != exog_names.size())
        throw std::invalid_argument("build_features: exog names/columns mismatch");
    for (const auto& column : exog)
        if (column.size() != n + horizon)
            throw std::invalid_argument(
                "build_features: exog columns must cover the holdout rows");

    const Decomposition d = decompose(train);
    if (d.degenerate) throw std::runtime_error("build_features: all-zero series");

    SeriesFeatures f;
    f.id = train.id;
    f.n_insample = n;
    f.horizon = horizon;
    f.frequency = train.frequency;
    f.target = train.values;

    std::vector<std::size_t> all_pos(n);
    std::iota(all_pos.begin(), all_pos.end(), 1);

    // Smoothed sales: the raw series, mean fallback under 7 non-zero points.
    if (d.sizes.size() < kMinNonZeroForSmoothing) {
        f.smooth_sales.assign(n, mean(train.values));
    } else {
        f.smooth_sales = smooth_and_interpolate(all_pos, train.values, n, config);
    }
    floor_at_zero(f.smooth_sales);
    append_holdout_repeat(f.smooth_sales, horizon);

    // Smoothed demand: stockout observations removed, gaps re-interpolated.
    std::vector<std::size_t> kept_pos;
    std::vector<double> kept_val, kept_occ, kept_nonzero;
    for (std::size_t t = 0; t < n; ++t) {
        if (report.flags[t]) continue;
        kept_pos.push_back(t + 1);
        kept_val.push_back(train.values[t]);
        kept_occ.push_back(train.values[t] > 0.0 ? 1.0 : 0.0);
        if (train.values[t] > 0.0) kept_nonzero.push_back(train.values[t]);
    }
    if (kept_pos.empty()) throw std::runtime_error("build_features: everything flagged");
    if (kept_nonzero.size() < kMinNonZeroForSmoothing) {
        f.smooth_demand.assign(n, mean(kept_val));
    } else {
        f.smooth_demand = smooth_and_interpolate(kept_pos, kept_val, n, config);
    }
    floor_at_zero(f.smooth_demand);
    append_holdout_repeat(f.smooth_demand, horizon);

    // Smoothed sizes: non-zero observations only.
    if (d.sizes.size() < kMinNonZeroForSmoothing) {
        f.smooth_sizes.assign(n, mean(d.sizes));
    } else {
        f.smooth_sizes = smooth_and_interpolate(d.size_period, d.sizes, n, config);
    }
    floor_at_zero(f.smooth_sizes);
    append_holdout_repeat(f.smooth_sizes, horizon);

    // Occurrence probability after stockout removal, clamped to [0,1].
    f.probability = smooth_and_interpolate(kept_pos, kept_occ, n, config);
    for (double& p : f.probability) p = std::clamp(p, 0.0, 1.0);
    append_holdout_repeat(f.probability, horizon);

    f.stockout_dummy.assign(report.flags.begin(), report.flags.end());
    f.stockout_dummy.insert(f.stockout_dummy.end(), horizon, 0);

    const double freq = static_cast<double>(train.frequency);
    for (std::size_t j = 1; j <= fourier_order; ++j) {
        std::vector<double> sin_col(n + horizon), cos_col(n + horizon);
        for (std::size_t t = 0; t < n + horizon; ++t) {
            const double angle = 2.0 * M_PI * static_cast<double>(j) *
                                 static_cast<double>(t + 1) / freq;
            sin_col[t] = std::sin(angle);
            cos_col[t] = std::cos(angle);
        }
        f.fourier.push_back(std::move(sin_col));
        f.fourier_names.push_back("sin" + std::to_string(j));
        f.fourier.push_back(std::move(cos_col));
        f.fourier_names.push_back("cos" + std::to_string(j));
    }

    f.category_partial = klass.top == TopClass::regular ? 0 : 1;
    f.category_full = klass.top == TopClass::regular
                          ? 0
                          : (klass.top == TopClass::smooth_intermittent ? 1 : 2);
    f.exog_names = exog_names;
    f.exog = exog;
    return f;
}

const char* to_string(Engine engine) {
    return engine == Engine::pooled_regression ? "pooled_regression" : "smoothed_series";
}

const char* to_string(Approach approach) {
    switch (approach) {
        case Approach::conventional: return "conventional";
        case Approach::full: return "full";
        case Approach::mixture: return "mixture";
        case Approach::category_partial: return "category_partial";
        case Approach::category_full: return "category_full";
    }
    return "unknown";
}

PooledFit fit_pooled_regression(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::string>& names,
                                std::span<const double> target) {
    if (columns.size() != names.size())
        throw std::invalid_argument("fit_pooled_regression: names/columns mismatch");
    const std::size_t rows = target.size();
    if (rows == 0) throw std::invalid_argument("fit_pooled_regression: no rows");
    for (const auto& column : columns)
        if (column.size() != rows)
            throw std::invalid_argument("fit_pooled_regression: ragged columns");

    // Design = intercept + columns; Gram matrix once, then greedy
    // rank-revealing Cholesky that drops unusable columns in input order.
    const std::size_t p = columns.size() + 1;
    const auto col = [&](std::size_t j, std::size_t r) {
        return j == 0 ? 1.0 : columns[j - 1][r];
    };
    std::vector<double> gram(p * p, 0.0), xty(p, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < p; ++i) {
            const double vi = col(i, r);
            xty[i] += vi * target[r];
            for (std::size_t j = i; j < p; ++j) gram[i * p + j] += vi * col(j, r);
        }
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < i; ++j) gram[i * p + j] = gram[j * p + i];

    PooledFit fit;
    std::vector<std::size_t> kept;
    std::vector<std::vector<double>> chol;  // lower-triangular rows
    constexpr double kTol = 1e-10;
    for (std::size_t j = 0; j < p; ++j) {
        const std::size_t k = kept.size();
        std::vector<double> w(k);
        for (std::size_t i = 0; i < k; ++i) {
            double acc = gram[kept[i] * p + j];
            for (std::size_t m = 0; m < i; ++m) acc -= chol[i][m] * w[m];
            w[i] = acc / chol[i][i];
        }
        double d = gram[j * p + j];
        for (std::size_t i = 0; i < k; ++i) d -= w[i] * w[i];
        if (gram[j * p + j] <= 0.0 || d <= kTol * std::max(gram[j * p + j], 1e-300)) {
            if (j > 0) fit.dropped.push_back(names[j - 1]);
            continue;
        }
        w.push_back(std::sqrt(d));
        chol.push_back(std::move(w));
        kept.push_back(j);
    }

    // Solve L y = X'target, L' beta = y over the kept columns.
    const std::size_t k = kept.size();
    std::vector<double> y(k), beta(k);
    for (std::size_t i = 0; i < k; ++i) {
        double acc = xty[kept[i]];
        for (std::size_t m = 0; m < i; ++m) acc -= chol[i][m] * y[m];
        y[i] = acc / chol[i][i];
    }
    for (std::size_t i = k; i-- > 0;) {
        double acc = y[i];
        for (std::size_t m = i + 1; m < k; ++m) acc -= chol[m][i] * beta[m];
        beta[i] = acc / chol[i][i];
    }

    for (std::size_t i = 0; i < k; ++i) {
        fit.names.push_back(kept[i] == 0 ? "intercept" : names[kept[i] - 1]);
        fit.coef.push_back(beta[i]);
    }
    return fit;
}

namespace {

// One named panel column, read straight off a SeriesFeatures row.
struct ColumnSpec {
    std::string name;
    // 0 smooth_sales, 1 smooth_demand, 2 smooth_sizes, 3 probability,
    // 4 stockout_dummy, 5 fourier[index], 6 exog[index], 7 category_partial,
    // 8 category_full == smooth, 9 category_full == lumpy
    int source;
    std::size_t index = 0;
};

double column_value(const SeriesFeatures& f, const ColumnSpec& spec, std::size_t row) {
    switch (spec.source) {
        case 0: return f.smooth_sales[row];
        case 1: return f.smooth_demand[row];
        case 2: return f.smooth_sizes[row];
        case 3: return f.probability[row];
        case 4: return static_cast<double>(f.stockout_dummy[row]);
        case 5: return f.fourier[spec.index][row];
        case 6: return f.exog[spec.index][row];
        case 7: return static_cast<double>(f.category_partial);
        case 8: return f.category_full == 1 ? 1.0 : 0.0;
        case 9: return f.category_full == 2 ? 1.0 : 0.0;
    }
    throw std::logic_error("column_value: bad source");
}

void append_fourier_exog(const SeriesFeatures& sample, std::vector<ColumnSpec>& specs,
                         bool fourier) {
    if (fourier)
        for (std::size_t k = 0; k < sample.fourier.size(); ++k)
            specs.push_back({sample.fourier_names[k], 5, k});
    for (std::size_t k = 0; k < sample.exog.size(); ++k)
        specs.push_back({sample.exog_names[k], 6, k});
}

void append_category(Approach approach, std::vector<ColumnSpec>& specs) {
    if (approach == Approach::category_partial) {
        specs.push_back({"cat_intermittent", 7});
    } else if (approach == Approach::category_full) {
        specs.push_back({"cat_smooth", 8});
        specs.push_back({"cat_lumpy", 9});
    }
}

struct PanelModel {
    std::vector<ColumnSpec> specs;  // aligned with fit.coef after the intercept
    PooledFit fit;

    double predict(const SeriesFeatures& f, std::size_t row) const {
        double acc = 0.0;
        for (std::size_t c = 0; c < fit.names.size(); ++c) {
            if (fit.names[c] == "intercept") {
                acc += fit.coef[c];
                continue;
            }
            for (const auto& spec : specs)
                if (spec.name == fit.names[c]) {
                    acc += fit.coef[c] * column_value(f, spec, row);
                    break;
                }
        }
        return acc;
    }
};

PanelModel fit_panel(const std::vector<SeriesFeatures>& features,
                     const std::vector<ColumnSpec>& specs, bool occurrence_target,
                     bool sizes_rows) {
    std::vector<std::vector<double>> columns(specs.size());
    std::vector<double> target;
    for (const auto& f : features) {
        for (std::size_t t = 0; t < f.n_insample; ++t) {
            if (sizes_rows && (f.target[t] <= 0.0 || f.stockout_dummy[t])) continue;
            for (std::size_t c = 0; c < specs.size(); ++c)
                columns[c].push_back(column_value(f, specs[c], t));
            target.push_back(occurrence_target ? (f.target[t] > 0.0 ? 1.0 : 0.0)
                                               : f.target[t]);
        }
    }
    std::vector<std::string> names(specs.size());
    std::transform(specs.begin(), specs.end(), names.begin(),
                   [](const ColumnSpec& s) { return s.name; });
    PanelModel model;
    model.specs = specs;
    model.fit = fit_pooled_regression(columns, names, target);
    return model;
}

}  // namespace

ApproachForecasts run_approach(Approach approach, Engine engine,
                               const std::vector<SeriesFeatures>& features) {
    if (features.empty()) throw std::invalid_argument("run_approach: empty panel");
    ApproachForecasts out;
    out.approach = approach;
    out.engine = engine;
    const std::size_t n_series = features.size();
    out.forecast.resize(n_series);
    out.fitted.resize(n_series);
    out.occ_prob.resize(n_series);

    const bool mixture_family = approach == Approach::mixture ||
                                approach == Approach::category_partial ||
                                approach == Approach::category_full;

    if (engine == Engine::smoothed_series) {
        // The forecast is the corresponding smoothed column itself; category
        // features cannot alter a per-series curve, so those approaches
        // coincide with the mixture here.
        for (std::size_t s = 0; s < n_series; ++s) {
            const auto& f = features[s];
            auto value_at = [&](std::size_t row) {
                if (approach == Approach::conventional) return f.smooth_sales[row];
                if (approach == Approach::full) return f.smooth_demand[row];
                return f.probability[row] * f.smooth_sizes[row];
            };
            for (std::size_t t = 0; t < f.n_insample; ++t)
                out.fitted[s].push_back(std::max(value_at(t), 0.0));
            for (std::size_t h = 0; h < f.horizon; ++h) {
                const std::size_t row = f.n_insample + h;
                out.forecast[s].push_back(std::max(value_at(row), 0.0));
                out.occ_prob[s].push_back(mixture_family ? f.probability[row] : 1.0);
            }
        }
        return out;
    }

    const SeriesFeatures& sample = features.front();
    if (!mixture_family) {
        std::vector<ColumnSpec> specs;
        if (approach == Approach::conventional) {
            specs.push_back({"smooth_sales", 0});
        } else {  // full
            specs.push_back({"smooth_demand", 1});
            specs.push_back({"stockout_dummy", 4});
        }
        append_fourier_exog(sample, specs, /*fourier=*/true);
        const PanelModel model = fit_panel(features, specs, false, false);
        out.dropped_columns = model.fit.dropped;
        for (std::size_t s = 0; s < n_series; ++s) {
            const auto& f = features[s];
            for (std::size_t t = 0; t < f.n_insample; ++t)
                out.fitted[s].push_back(std::max(model.predict(f, t), 0.0));
            for (std::size_t h = 0; h < f.horizon; ++h) {
                out.forecast[s].push_back(
                    std::max(model.predict(f, f.n_insample + h), 0.0));
                out.occ_prob[s].push_back(1.0);
            }
        }
        return out;
    }

    // Mixture family: occurrence fitted on every row, sizes on the non-zero
    // non-stockout rows, recombined by multiplication.
    std::vector<ColumnSpec> occ_specs;
    occ_specs.push_back({"probability", 3});
    occ_specs.push_back({"stockout_dummy", 4});
    append_fourier_exog(sample, occ_specs, /*fourier=*/true);
    append_category(approach, occ_specs);

    std::vector<ColumnSpec> size_specs;
    size_specs.push_back({"smooth_sizes", 2});
    append_fourier_exog(sample, size_specs, /*fourier=*/false);
    append_category(approach, size_specs);

    const PanelModel occ_model = fit_panel(features, occ_specs, true, false);
    const PanelModel size_model = fit_panel(features, size_specs, false, true);
    out.dropped_columns = occ_model.fit.dropped;
    out.dropped_columns.insert(out.dropped_columns.end(), size_model.fit.dropped.begin(),
                               size_model.fit.dropped.end());

    for (std::size_t s = 0; s < n_series; ++s) {
        const auto& f = features[s];
        auto combined = [&](std::size_t row) {
            const double p = std::clamp(occ_model.predict(f, row), 0.0, 1.0);
            const double z = std::max(size_model.predict(f, row), 0.0);
            return std::pair{p, p * z};
        };
        for (std::size_t t = 0; t < f.n_insample; ++t)
            out.fitted[s].push_back(combined(t).second);
        for (std::size_t h = 0; h < f.horizon; ++h) {
            const auto [p, value] = combined(f.n_insample + h);
            out.forecast[s].push_back(value);
            out.occ_prob[s].push_back(p);
        }
    }
    return out;
}

}  // namespace aid
