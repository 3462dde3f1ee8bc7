#include "aid/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace aid {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ stream));
}

double Rng::uniform() {
    // 53 random bits into [0,1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_int: bound must be positive");
    // Rejection sampling to stay unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

double Rng::normal(double mean, double sd) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + sd * spare_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return mean + sd * u * factor;
}

double Rng::lognormal(double meanlog, double sdlog) {
    return std::exp(normal(meanlog, sdlog));
}

std::uint64_t Rng::geometric_failures(double p) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("geometric_failures: p must be in (0,1]");
    if (p == 1.0) return 0;
    const double u = uniform();  // 1-u in (0,1]
    const double k = std::floor(std::log1p(-u) / std::log1p(-p));
    return k < 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

double Rng::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::invalid_argument("gamma: shape and scale must be positive");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back (Marsaglia-Tsang).
        const double u = uniform();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

std::uint64_t Rng::poisson(double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("poisson: lambda must be >= 0");
    std::uint64_t total = 0;
    // Additivity keeps the product-of-uniforms method inside double range.
    while (lambda > 30.0) {
        double chunk = 30.0;
        const double threshold = std::exp(-chunk);
        double product = 1.0;
        std::uint64_t k = 0;
        for (;;) {
            product *= uniform();
            if (product < threshold) break;
            ++k;
        }
        total += k;
        lambda -= chunk;
    }
    if (lambda > 0.0) {
        const double threshold = std::exp(-lambda);
        double product = 1.0;
        std::uint64_t k = 0;
        for (;;) {
            product *= uniform();
            if (product < threshold) break;
            ++k;
        }
        total += k;
    }
    return total;
}

std::uint64_t Rng::nbinom(double size, double prob) {
    if (!(prob > 0.0) || prob > 1.0)
        throw std::invalid_argument("nbinom: prob must be in (0,1]");
    if (prob == 1.0) return 0;
    return poisson(gamma(size, (1.0 - prob) / prob));
}

std::uint64_t Rng::nbinom_mean(double mu, double size) {
    if (mu <= 0.0) return 0;
    return poisson(gamma(size, mu / size));
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    // Partial Fisher-Yates over an index array.
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_int(n - i));
        std::swap(indices[i], indices[j]);
        out[i] = indices[i];
    }
    return out;
}

}  // namespace aid
