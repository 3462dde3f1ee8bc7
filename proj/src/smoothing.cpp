#include "aid/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aid {

namespace {

constexpr double kBaseSpans[3] = {0.05, 0.2, 0.5};
constexpr int kMidSpan = 1;  // index of the 0.2 span

double mean_of(std::span<const double> y) {
    return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

void check_inputs(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("smoothing: x and y lengths differ");
    if (x.size() < 2)
        throw std::invalid_argument("smoothing: need at least 2 points");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw std::invalid_argument("smoothing: x must be strictly increasing");
}

std::size_t window_points(double span, std::size_t n) {
    auto j = static_cast<std::size_t>(std::lround(span * static_cast<double>(n)));
    return std::clamp<std::size_t>(j, std::min<std::size_t>(3, n), n);
}

// Local linear fit over the J nearest points (window shifted to stay inside
// the data). Optionally produces the leave-one-out absolute residuals via
// the hat-diagonal identity r_cv = r / (1 - h_ii).
void running_linear_fit(std::span<const double> x, std::span<const double> y, std::size_t j_points,
                        std::vector<double>& fit, std::vector<double>* cv_abs_resid) {
    const std::size_t n = x.size();
    const std::size_t j = std::min(j_points, n);
    const std::size_t half = j / 2;
    fit.resize(n);
    if (cv_abs_resid) cv_abs_resid->resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i > half ? i - half : 0;
        lo = std::min(lo, n - j);
        const std::size_t hi = lo + j;

        double sx = 0.0, sy = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            sx += x[k];
            sy += y[k];
        }
        const double jd = static_cast<double>(j);
        const double mx = sx / jd, my = sy / jd;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
            const double dx = x[k] - mx;
            sxx += dx * dx;
            sxy += dx * (y[k] - my);
        }
        const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
        const double value = my + slope * (x[i] - mx);
        fit[i] = value;
        if (cv_abs_resid) {
            double h = 1.0 / jd;
            if (sxx > 0.0) h += (x[i] - mx) * (x[i] - mx) / sxx;
            const double denom = std::max(1.0 - h, 0.01);
            (*cv_abs_resid)[i] = std::abs(y[i] - value) / denom;
        }
    }
}

}  // namespace

std::vector<double> supsmu(std::span<const double> x, std::span<const double> y,
                           const SmoothConfig& config) {
    check_inputs(x, y);
    const std::size_t n = x.size();
    if (n < config.min_points) return std::vector<double>(n, mean_of(y));

    std::vector<double> fits[3];
    std::vector<double> cv[3];
    std::vector<double> cv_smooth[3];
    for (int s = 0; s < 3; ++s) {
        running_linear_fit(x, y, window_points(kBaseSpans[s], n), fits[s], &cv[s]);
        // Smoothed CV curves drive the span selection.
        running_linear_fit(x, cv[s], window_points(kBaseSpans[kMidSpan], n), cv_smooth[s],
                           nullptr);
    }

    const double bass = std::clamp(config.supsmu_bass, 0.0, 10.0);
    std::vector<double> chosen_span(n);
    for (std::size_t i = 0; i < n; ++i) {
        int best = 0;
        for (int s = 1; s < 3; ++s)
            if (cv_smooth[s][i] < cv_smooth[best][i]) best = s;
        double span = kBaseSpans[best];
        if (bass > 0.0 && best != 2 && cv_smooth[2][i] > 0.0) {
            const double ratio = cv_smooth[best][i] / cv_smooth[2][i];
            if (ratio < 1.0)
                span += (kBaseSpans[2] - span) * std::pow(ratio, 10.0 - bass);
        }
        chosen_span[i] = span;
    }

    std::vector<double> span_smooth;
    running_linear_fit(x, chosen_span, window_points(kBaseSpans[kMidSpan], n), span_smooth,
                       nullptr);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double span = std::clamp(span_smooth[i], kBaseSpans[0], kBaseSpans[2]);
        const int lo = span <= kBaseSpans[1] ? 0 : 1;
        const double width = kBaseSpans[lo + 1] - kBaseSpans[lo];
        const double f = (kBaseSpans[lo + 1] - span) / width;
        out[i] = f * fits[lo][i] + (1.0 - f) * fits[lo + 1][i];
    }
    return out;
}

std::vector<double> lowess(std::span<const double> x, std::span<const double> y, double span,
                           std::size_t min_points) {
    check_inputs(x, y);
    if (!(span > 0.0) || span > 1.0)
        throw std::invalid_argument("lowess: span must be in (0,1]");
    const std::size_t n = x.size();
    if (n < min_points) return std::vector<double>(n, mean_of(y));

    const std::size_t j = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(span * static_cast<double>(n))), 2, n);

    std::vector<double> fit(n, 0.0);
    std::vector<double> robust(n, 1.0);
    constexpr int kRobustIterations = 2;

    for (int iter = 0; iter <= kRobustIterations; ++iter) {
        std::size_t lo = 0;
        for (std::size_t i = 0; i < n; ++i) {
            // Slide the window of the j nearest neighbours.
            while (lo + j < n && x[lo + j] - x[i] < x[i] - x[lo]) ++lo;
            const std::size_t hi = lo + j;
            const double radius =
                std::max({x[i] - x[lo], x[hi - 1] - x[i], 1e-12});

            double sw = 0.0, swx = 0.0, swy = 0.0;
            std::vector<double> w(j);
            for (std::size_t k = lo; k < hi; ++k) {
                const double d = std::abs(x[k] - x[i]) / radius;
                double wk = 0.0;
                if (d < 1.0) {
                    const double t = 1.0 - d * d * d;
                    wk = t * t * t;
                }
                wk *= robust[k];
                w[k - lo] = wk;
                sw += wk;
                swx += wk * x[k];
                swy += wk * y[k];
            }
            if (sw <= 0.0) {
                fit[i] = y[i];
                continue;
            }
            const double mx = swx / sw, my = swy / sw;
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t k = lo; k < hi; ++k) {
                const double dx = x[k] - mx;
                sxx += w[k - lo] * dx * dx;
                sxy += w[k - lo] * dx * (y[k] - my);
            }
            const double slope = sxx > 1e-12 * radius * radius ? sxy / sxx : 0.0;
            fit[i] = my + slope * (x[i] - mx);
        }
        if (iter == kRobustIterations) break;

        // Bisquare robustness weights from the residual MAD.
        std::vector<double> abs_res(n);
        for (std::size_t i = 0; i < n; ++i) abs_res[i] = std::abs(y[i] - fit[i]);
        std::vector<double> sorted = abs_res;
        std::sort(sorted.begin(), sorted.end());
        const double m1 = sorted[(n - 1) / 2], m2 = sorted[n / 2];
        const double cmad = 3.0 * (m1 + m2);
        if (cmad <= 0.0) break;  // perfect fit, nothing to reweight
        for (std::size_t i = 0; i < n; ++i) {
            const double r = abs_res[i] / cmad;
            robust[i] = r >= 1.0 ? 0.0 : (1.0 - r * r) * (1.0 - r * r);
        }
    }
    return fit;
}

std::vector<double> smooth(std::span<const double> x, std::span<const double> y,
                           const SmoothConfig& config) {
    switch (config.method) {
        case SmoothMethod::lowess:
            return lowess(x, y, config.lowess_span, config.min_points);
        case SmoothMethod::supsmu:
        default:
            return supsmu(x, y, config);
    }
}

}  // namespace aid
