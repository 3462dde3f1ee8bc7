#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aid/rng.hpp"
#include "aid/smoothing.hpp"

using namespace aid;

namespace {

std::vector<double> grid(std::size_t n, double lo, double hi) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return x;
}

double rms(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace

TEST_CASE("constant input stays constant") {
    const auto x = grid(40, 0.0, 10.0);
    const std::vector<double> y(40, 3.25);
    for (double v : supsmu(x, y)) CHECK(v == doctest::Approx(3.25).epsilon(1e-12));
    for (double v : lowess(x, y, 2.0 / 3.0)) CHECK(v == doctest::Approx(3.25).epsilon(1e-12));
}

TEST_CASE("an exact line is reproduced") {
    const auto x = grid(50, 0.0, 5.0);
    std::vector<double> y(50);
    for (std::size_t i = 0; i < 50; ++i) y[i] = 2.0 * x[i] + 1.0;

    const auto s = supsmu(x, y);
    const auto l = lowess(x, y, 0.5);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(std::abs(s[i] - y[i]) < 1e-6);
        CHECK(std::abs(l[i] - y[i]) < 1e-6);
    }
}

TEST_CASE("noise around a sine is reduced") {
    const std::size_t n = 200;
    const auto x = grid(n, 0.0, 6.0);
    std::vector<double> truth(n), noisy(n);
    Rng rng(90210);
    for (std::size_t i = 0; i < n; ++i) {
        truth[i] = std::sin(x[i]);
        noisy[i] = truth[i] + rng.normal(0.0, 0.1);
    }
    const auto smoothed = supsmu(x, noisy);
    CHECK(rms(smoothed, truth) < rms(noisy, truth));
}

TEST_CASE("lowess with full span is symmetric on a V shape") {
    const std::size_t n = 21;
    const auto x = grid(n, -5.0, 5.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::abs(x[i]);
    const auto out = lowess(x, y, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(out[i] == doctest::Approx(out[n - 1 - i]).epsilon(1e-9));
}

TEST_CASE("shift and scale equivariance") {
    const std::size_t n = 80;
    const auto x = grid(n, 0.0, 8.0);
    Rng rng(777);
    std::vector<double> y(n);
    for (auto& v : y) v = rng.uniform() * 10.0;

    for (const bool use_lowess : {false, true}) {
        SmoothConfig cfg;
        cfg.method = use_lowess ? SmoothMethod::lowess : SmoothMethod::supsmu;
        const auto base = smooth(x, y, cfg);

        const double c = 17.5;
        std::vector<double> shifted(n), scaled(n);
        for (std::size_t i = 0; i < n; ++i) {
            shifted[i] = y[i] + c;
            scaled[i] = y[i] * c;
        }
        const auto s1 = smooth(x, shifted, cfg);
        const auto s2 = smooth(x, scaled, cfg);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(s1[i] - (base[i] + c)) < 1e-6 * (1.0 + c));
            CHECK(std::abs(s2[i] - base[i] * c) < 1e-6 * (1.0 + c));
        }
    }
}

TEST_CASE("outputs stay finite on rough inputs") {
    Rng rng(5150);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 7 + rng.uniform_int(120);
        auto x = grid(n, 0.0, static_cast<double>(n));
        std::vector<double> y(n);
        for (auto& v : y) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform() * 1000.0;
        for (double v : supsmu(x, y)) CHECK(std::isfinite(v));
        for (double v : lowess(x, y, 0.4)) CHECK(std::isfinite(v));
    }
}

TEST_CASE("short inputs fall back to the mean") {
    const auto x = grid(5, 0.0, 4.0);
    const std::vector<double> y = {1, 2, 3, 4, 10};
    const double m = std::accumulate(y.begin(), y.end(), 0.0) / 5.0;
    for (double v : supsmu(x, y)) CHECK(v == doctest::Approx(m));
    for (double v : lowess(x, y, 0.5)) CHECK(v == doctest::Approx(m));
}

TEST_CASE("input validation") {
    CHECK_THROWS(supsmu(std::vector<double>{1.0}, std::vector<double>{2.0}));
    CHECK_THROWS(supsmu(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}));
    CHECK_THROWS(lowess(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}, 0.0));
}
