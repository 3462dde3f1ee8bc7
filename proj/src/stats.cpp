#include "aid/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aid {

namespace {
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;  // log(sqrt(2*pi))
}

double mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("mean: empty input");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance_population(std::span<const double> v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

double variance_sample(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("variance_sample: need >= 2 values");
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

double sd_sample(std::span<const double> v) { return std::sqrt(variance_sample(v)); }

double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double logit(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("logit: p must be in (0,1)");
    return std::log(p / (1.0 - p));
}

double log_norm_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double log_norm_cdf(double z) {
    if (z > -20.0) {
        const double c = norm_cdf(z);
        if (c > 0.0) return std::log(c);
    }
    // Asymptotic tail: Phi(z) ~ phi(z)/(-z) * (1 - 1/z^2 + 3/z^4 - 15/z^6)
    const double z2 = z * z;
    const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
    return log_norm_pdf(z) - std::log(-z) + std::log(series);
}

double digamma(double x) {
    if (!(x > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv -
              inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0)));
    return result;
}

double nb_logpmf(double y, double mu, double size) {
    if (y < 0.0) return -std::numeric_limits<double>::infinity();
    if (mu <= 0.0)
        return y == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double s = size;
    return std::lgamma(y + s) - std::lgamma(s) - std::lgamma(y + 1.0) +
           s * std::log(s / (s + mu)) + y * std::log(mu / (s + mu));
}

}  // namespace aid
