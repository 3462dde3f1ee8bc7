#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace aid {

/**
 * Deterministic random source: an mt19937_64 stream (whose output sequence
 * the standard fully specifies) with all distribution transforms implemented
 * here, so draws are identical across platforms and standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for one unit of work; mixes seed and stream id
    /// through splitmix64 so neighbouring ids decorrelate.
    static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

    double uniform();                        // [0, 1)
    std::uint64_t uniform_int(std::uint64_t bound);  // [0, bound)
    double normal(double mean = 0.0, double sd = 1.0);
    double lognormal(double meanlog, double sdlog);
    /// Failures before the first success, P(k) = p(1-p)^k.
    std::uint64_t geometric_failures(double p);
    double gamma(double shape, double scale);
    std::uint64_t poisson(double lambda);
    /// Negative Binomial in (size, prob): failures before the size-th
    /// success, mean size*(1-prob)/prob.
    std::uint64_t nbinom(double size, double prob);
    /// Negative Binomial in (mean, size): variance mean + mean^2/size.
    std::uint64_t nbinom_mean(double mu, double size);

    /// k distinct indices from [0, n), in selection order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace aid
