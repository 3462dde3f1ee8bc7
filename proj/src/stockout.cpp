#include "aid/stockout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aid {

std::size_t StockoutReport::flag_count() const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

std::size_t geometric_quantile(double p, double nu) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("geometric_quantile: p must be in (0,1]");
    if (!(nu > 0.0) || !(nu < 1.0))
        throw std::invalid_argument("geometric_quantile: nu must be in (0,1)");
    if (p == 1.0) return 0;

    // CDF(k) = 1 - (1-p)^(k+1); the closed-form guess is corrected against
    // the CDF itself so the result matches direct enumeration exactly.
    const auto cdf_ok = [&](double k) { return 1.0 - std::pow(1.0 - p, k + 1.0) >= nu; };
    double k = std::ceil(std::log1p(-nu) / std::log1p(-p)) - 1.0;
    k = std::max(k, 0.0);
    while (k > 0.0 && cdf_ok(k - 1.0)) k -= 1.0;
    while (!cdf_ok(k)) k += 1.0;
    return static_cast<std::size_t>(k);
}

StockoutDetector::StockoutDetector(const DemandSeries& series, const SmoothConfig& config) {
    n_ = series.values.size();
    decomp_ = decompose(series);
    const std::size_t m = decomp_.intervals.size();
    if (m < 3) return;  // abstain: a smooth over fewer points is meaningless

    // Fit on the interior intervals only; the first interval (virtual demand
    // at period 0) and the trailing run are judged against the nearest
    // smoothed probability instead.
    std::vector<double> x(m - 1), q(m - 1);
    for (std::size_t j = 1; j < m; ++j) {
        x[j - 1] = static_cast<double>(decomp_.interval_period[j]);
        q[j - 1] = static_cast<double>(decomp_.intervals[j]);
    }
    const std::vector<double> q_hat = smooth(x, q, config);

    p_hat_.resize(m);
    for (std::size_t j = 1; j < m; ++j)
        p_hat_[j] = 1.0 / std::max(q_hat[j - 1], 1.0);
    p_hat_[0] = p_hat_[1];
    p_hat_first_ = p_hat_[0];
    p_hat_last_ = p_hat_[m - 1];
    insufficient_ = false;
}

StockoutReport StockoutDetector::flags_at(double nu) const {
    if (!(nu > 0.0) || nu > 1.0)
        throw std::invalid_argument("detect_stockouts: nu must be in (0,1]");

    StockoutReport report;
    report.level = nu;
    report.flags.assign(n_, 0);
    report.p_hat = p_hat_;
    report.insufficient_data = insufficient_;
    if (insufficient_ || nu == 1.0) return report;

    const auto& intervals = decomp_.intervals;
    const auto& closing = decomp_.interval_period;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        const std::size_t q = intervals[j];
        if (q < 2) continue;  // no zeroes inside
        const std::size_t threshold = geometric_quantile(p_hat_[j], nu);
        if (q - 1 <= threshold) continue;

        report.flagged_intervals.push_back({closing[j], q, threshold});
        // Mark the zeroes strictly inside the interval; the closing demand
        // itself is real.
        const std::size_t end = closing[j];         // 1-based
        const std::size_t start = end - (q - 1);    // first zero period, 1-based
        for (std::size_t t = start; t < end; ++t) report.flags[t - 1] = 1;
        if (j == 0) report.leading_flag = true;
    }

    // Trailing zero-run: a censored interval tested against the last p_hat.
    // Recorded with length r+1, the interval a demand in the next period
    // would close.
    const std::size_t r = decomp_.trailing_zeros;
    if (r > 0 && r > geometric_quantile(p_hat_last_, nu)) {
        report.trailing_flag = true;
        report.flagged_intervals.push_back({n_, r + 1, geometric_quantile(p_hat_last_, nu)});
        for (std::size_t t = n_ - r; t < n_; ++t) report.flags[t] = 1;
    }
    return report;
}

StockoutReport detect_stockouts(const DemandSeries& series, double nu,
                                const SmoothConfig& config) {
    return StockoutDetector(series, config).flags_at(nu);
}

}  // namespace aid
