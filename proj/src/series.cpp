#include "aid/series.hpp"

#include <cmath>
#include <stdexcept>

namespace aid {

void validate(const DemandSeries& series) {
    if (series.values.empty())
        throw std::invalid_argument("series '" + series.id + "': empty");
    for (std::size_t t = 0; t < series.values.size(); ++t) {
        const double v = series.values[t];
        if (!std::isfinite(v))
            throw std::invalid_argument("series '" + series.id + "': non-finite value at period " +
                                        std::to_string(t + 1));
        if (v < 0.0)
            throw std::invalid_argument("series '" + series.id + "': negative value at period " +
                                        std::to_string(t + 1));
    }
}

Decomposition decompose(const DemandSeries& series) {
    validate(series);
    const std::size_t n = series.values.size();

    Decomposition d;
    d.occurrence.resize(n);
    std::size_t last_nonzero = 0;  // 1-based, 0 = none seen yet
    for (std::size_t t = 0; t < n; ++t) {
        const bool nonzero = series.values[t] > 0.0;
        d.occurrence[t] = nonzero ? 1 : 0;
        if (!nonzero) continue;
        const std::size_t period = t + 1;
        d.sizes.push_back(series.values[t]);
        d.size_period.push_back(period);
        // First interval counts from a virtual demand at period 0.
        d.intervals.push_back(period - last_nonzero);
        d.interval_period.push_back(period);
        last_nonzero = period;
    }
    d.trailing_zeros = n - last_nonzero;
    d.degenerate = d.sizes.empty();
    return d;
}

std::vector<double> reassemble(const Decomposition& d, std::size_t n) {
    if (d.sizes.size() != d.size_period.size())
        throw std::invalid_argument("reassemble: sizes and size_period lengths differ");
    std::vector<double> values(n, 0.0);
    for (std::size_t j = 0; j < d.sizes.size(); ++j) {
        const std::size_t period = d.size_period[j];
        if (period < 1 || period > n)
            throw std::out_of_range("reassemble: size period " + std::to_string(period) +
                                    " outside 1.." + std::to_string(n));
        values[period - 1] = d.sizes[j];
    }
    return values;
}

DemandSeries drop_flagged(const DemandSeries& series, const std::vector<int>& flags) {
    if (flags.size() != series.values.size())
        throw std::invalid_argument("drop_flagged: flags length " + std::to_string(flags.size()) +
                                    " != series length " + std::to_string(series.values.size()));
    DemandSeries out;
    out.id = series.id;
    out.frequency = series.frequency;
    out.values.reserve(series.values.size());
    for (std::size_t t = 0; t < series.values.size(); ++t)
        if (!flags[t]) out.values.push_back(series.values[t]);
    if (out.values.empty())
        throw std::runtime_error("drop_flagged: series '" + series.id +
                                 "' has no observations left");
    return out;
}

}  // namespace aid
