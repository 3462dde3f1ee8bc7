#include "aid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aid/batch.hpp"
#include "aid/stockout.hpp"

namespace aid {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

double ConfusionMatrix::tpr() const {
    const std::size_t pos = tp + fn;
    if (pos == 0) throw std::runtime_error("ConfusionMatrix: TPR undefined, no positives");
    return static_cast<double>(tp) / static_cast<double>(pos);
}

double ConfusionMatrix::fpr() const {
    const std::size_t neg = fp + tn;
    if (neg == 0) return 0.0;
    return static_cast<double>(fp) / static_cast<double>(neg);
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("confusion: length mismatch");
    ConfusionMatrix c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) {
            predicted[i] ? ++c.tp : ++c.fn;
        } else {
            predicted[i] ? ++c.fp : ++c.tn;
        }
    }
    return c;
}

std::vector<double> default_nu_grid(std::size_t levels) {
    if (levels < 3) throw std::invalid_argument("default_nu_grid: need >= 3 levels");
    std::vector<double> grid(levels);
    const double log_hi = std::log(0.5), log_lo = std::log(1e-5);
    for (std::size_t i = 0; i < levels; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(levels - 1);
        grid[i] = 1.0 - std::exp(log_hi + f * (log_lo - log_hi));
    }
    return grid;
}

RocCurve roc_from_confusions(std::span<const ConfusionMatrix> per_level) {
    RocCurve curve;
    curve.points.reserve(per_level.size() + 2);
    for (const auto& cm : per_level) curve.points.emplace_back(cm.fpr(), cm.tpr());
    curve.points.emplace_back(0.0, 0.0);
    curve.points.emplace_back(1.0, 1.0);
    std::sort(curve.points.begin(), curve.points.end());

    double auc = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [x0, y0] = curve.points[i - 1];
        const auto& [x1, y1] = curve.points[i];
        auc += (x1 - x0) * 0.5 * (y0 + y1);
    }
    curve.auc = auc;
    return curve;
}

RocCurve roc_auc(const std::vector<LabeledSeries>& labeled, std::span<const double> nu_grid,
                 const SmoothConfig& config, int workers) {
    if (nu_grid.size() < 3)
        throw std::invalid_argument("roc_auc: grid needs at least 3 levels");
    for (double nu : nu_grid)
        if (!(nu > 0.0) || !(nu < 1.0))
            throw std::invalid_argument("roc_auc: grid levels must be in (0,1)");

    // One confusion matrix per (series, level); smoothing happens once per
    // series and the level sweep reuses it.
    std::vector<std::vector<ConfusionMatrix>> per_series(labeled.size());
    parallel_for(labeled.size(), workers, [&](std::size_t s) {
        const StockoutDetector detector(labeled[s].series, config);
        auto& row = per_series[s];
        row.resize(nu_grid.size());
        for (std::size_t g = 0; g < nu_grid.size(); ++g) {
            const StockoutReport report = detector.flags_at(nu_grid[g]);
            row[g] = confusion(labeled[s].truth_flags, report.flags);
        }
    });

    std::size_t positives = 0;
    for (const auto& series : labeled)
        positives += static_cast<std::size_t>(
            std::count(series.truth_flags.begin(), series.truth_flags.end(), 1));
    if (positives == 0)
        throw std::runtime_error("roc_auc: no positive truth labels, TPR undefined");

    std::vector<ConfusionMatrix> per_level(nu_grid.size());
    for (std::size_t g = 0; g < nu_grid.size(); ++g)
        for (const auto& row : per_series) per_level[g] += row[g];
    return roc_from_confusions(per_level);
}

double rmsse(std::span<const double> in_sample, std::span<const double> actual,
             std::span<const double> forecast) {
    if (in_sample.size() < 2)
        throw std::invalid_argument("rmsse: need at least 2 in-sample values");
    if (actual.size() != forecast.size() || actual.empty())
        throw std::invalid_argument("rmsse: actual and forecast must align and be non-empty");

    double denom = 0.0;
    for (std::size_t t = 1; t < in_sample.size(); ++t) {
        const double d = in_sample[t] - in_sample[t - 1];
        denom += d * d;
    }
    denom /= static_cast<double>(in_sample.size() - 1);
    if (denom <= 0.0) throw std::runtime_error("rmsse: flat in-sample history");

    double num = 0.0;
    for (std::size_t h = 0; h < actual.size(); ++h) {
        const double e = actual[h] - forecast[h];
        num += e * e;
    }
    num /= static_cast<double>(actual.size());
    return std::sqrt(num / denom);
}

ClassAccuracy class_accuracy(std::span<const ClassLabel> truth,
                             std::span<const ClassLabel> predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("class_accuracy: length mismatch");
    ClassAccuracy acc;
    std::array<std::size_t, 6> hits{};
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = class_index(truth[i].top, truth[i].valueness);
        const int p = class_index(predicted[i].top, predicted[i].valueness);
        ++acc.table[t][p];
        ++acc.support[t];
        if (t == p) ++hits[t];
    }
    for (int c = 0; c < 6; ++c)
        acc.rate[c] = acc.support[c] == 0
                          ? 0.0
                          : static_cast<double>(hits[c]) / static_cast<double>(acc.support[c]);
    return acc;
}

std::vector<bool> holdout_evaluation_mask(const DemandSeries& full, std::size_t horizon,
                                          double nu, const SmoothConfig& config) {
    if (horizon == 0 || horizon >= full.values.size())
        throw std::invalid_argument("holdout_evaluation_mask: bad horizon");
    const StockoutReport report = detect_stockouts(full, nu, config);
    const std::size_t n_train = full.values.size() - horizon;
    std::vector<bool> keep(horizon);
    for (std::size_t h = 0; h < horizon; ++h) keep[h] = report.flags[n_train + h] == 0;
    return keep;
}

}  // namespace aid
