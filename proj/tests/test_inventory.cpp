#include <doctest.h>

#include <cmath>

#include "aid/inventory.hpp"
#include "aid/rng.hpp"

using namespace aid;

TEST_CASE("empirical quantile interpolation rule") {
    const std::vector<double> v = {-2, -1, 0, 1, 2};
    CHECK(empirical_quantile(v, 0.8) == doctest::Approx(1.2));   // h = 4.2
    CHECK(empirical_quantile(v, 0.5) == doctest::Approx(0.0));   // middle element
    const std::vector<double> c = {3, 3, 3, 3};
    for (const double q : {0.1, 0.5, 0.9})
        CHECK(empirical_quantile(c, q) == doctest::Approx(3.0));
    CHECK_THROWS(empirical_quantile(std::vector<double>{1.0}, 0.5));
    CHECK_THROWS(empirical_quantile(v, 0.0));
}

TEST_CASE("service level adjustment") {
    CHECK(adjust_service_level(0.95, 1.0) == doctest::Approx(0.95));
    CHECK(adjust_service_level(0.95, 0.5) == doctest::Approx(0.90));
    CHECK(adjust_service_level(0.80, 0.10) == 0.0);  // raw value -1, clamped
    CHECK_THROWS(adjust_service_level(0.95, 0.0));
    // Identity at p = 1 across the range.
    for (double f = 0.05; f < 1.0; f += 0.05)
        CHECK(adjust_service_level(f, 1.0) == doctest::Approx(f));
}

TEST_CASE("safety stock pipeline rescales the pooled quantile") {
    // One series, sd 2; pooled scaled quantile 1.5 -> addend 3.
    const std::vector<std::vector<double>> errors = {{5.0, 1.0, 3.0}};
    const std::vector<double> sd = {2.0};
    // scaled errors: 2.5, 0.5, 1.5 -> quantile(0.5) = 1.5
    const auto addends = safety_stock_pipeline(errors, sd, 0.5);
    CHECK(addends[0] == doctest::Approx(3.0));
}

TEST_CASE("all-zero errors give a zero addend") {
    const std::vector<std::vector<double>> errors = {{0.0, 0.0, 0.0}, {0.0, 0.0}};
    const std::vector<double> sd = {1.5, 2.5};
    for (double a : safety_stock_pipeline(errors, sd, 0.9)) CHECK(a == 0.0);
}

TEST_CASE("symmetric errors at the median give a near-zero addend") {
    std::vector<double> e;
    for (int i = 1; i <= 50; ++i) {
        e.push_back(static_cast<double>(i));
        e.push_back(static_cast<double>(-i));
    }
    const std::vector<std::vector<double>> errors = {e};
    const std::vector<double> sd = {1.0};
    const auto addends = safety_stock_pipeline(errors, sd, 0.5);
    CHECK(std::abs(addends[0]) <= 1.0);  // within one interpolation step
}

TEST_CASE("zero-sd series falls back to the unscaled pooled quantile") {
    const std::vector<std::vector<double>> errors = {{1.0, 2.0, 3.0}, {9.0, 9.0}};
    const std::vector<double> sd = {2.0, 0.0};
    const SafetyStockPool pool(errors, sd);
    CHECK_FALSE(pool.unscaled(0));
    CHECK(pool.unscaled(1));
    // The zero-sd series' errors are not in the pool; its addend is the raw
    // pooled quantile.
    CHECK(pool.pool_size() == 3);
    CHECK(pool.addend(1, 0.5) == doctest::Approx(empirical_quantile(
                                     std::vector<double>{0.5, 1.0, 1.5}, 0.5)));
}

TEST_CASE("order levels are rounded-up non-negative integers") {
    CHECK(order_up_to_level(4.2, 0.5) == doctest::Approx(5.0));
    CHECK(order_up_to_level(0.0, 0.0) == 0.0);
    CHECK(order_up_to_level(1.0, -4.0) == 0.0);
    const double level = order_up_to_level(7.3, 2.9);
    CHECK(level == std::floor(level));
}

TEST_CASE("one-period simulation arithmetic") {
    InventoryConfig cfg;
    cfg.origins = 2;
    const std::vector<std::vector<double>> orders = {{7.0, 7.0}};
    const std::vector<std::vector<double>> demand = {{5.0, 9.0}};
    const std::vector<double> sd = {1.0};
    const auto metrics = simulate(cfg, 0.95, orders, demand, sd);
    REQUIRE(metrics.size() == 2);
    // Origin 1: served 5, leftover 2, no lost sales.
    CHECK(metrics[0].achieved_sl == doctest::Approx(1.0));
    CHECK(metrics[0].scaled_lost_sales == doctest::Approx(0.0));
    CHECK(metrics[0].scaled_on_hand == doctest::Approx(2.0));
    // Origin 2: lost 2, leftover 0.
    CHECK(metrics[1].achieved_sl == doctest::Approx(0.0));
    CHECK(metrics[1].scaled_lost_sales == doctest::Approx(2.0));
    CHECK(metrics[1].scaled_on_hand == doctest::Approx(0.0));
    CHECK(metrics[1].sl_deviation == doctest::Approx(-0.95));
}

TEST_CASE("conservation per cell") {
    Rng rng(64);
    InventoryConfig cfg;
    cfg.origins = 1;
    for (int rep = 0; rep < 100; ++rep) {
        const double stock = std::floor(rng.uniform() * 10.0);
        const double dem = std::floor(rng.uniform() * 10.0);
        const double served = std::min(stock, dem);
        const std::vector<double> one_sd = {1.0};
        const auto metrics = simulate(cfg, 0.9, {{stock}}, {{dem}}, one_sd);
        CHECK(metrics[0].scaled_lost_sales == doctest::Approx(dem - served));
        CHECK(metrics[0].scaled_on_hand == doctest::Approx(stock - served));
    }
}

TEST_CASE("higher targets move the metrics monotonically") {
    Rng rng(123);
    const std::size_t n_series = 40;
    std::vector<std::vector<double>> errors(n_series);
    std::vector<double> sd(n_series);
    std::vector<std::vector<double>> demand(n_series);
    std::vector<double> forecast(n_series);
    for (std::size_t s = 0; s < n_series; ++s) {
        for (int i = 0; i < 30; ++i) errors[s].push_back(rng.normal(0.0, 2.0));
        sd[s] = 1.0 + rng.uniform() * 3.0;
        forecast[s] = 5.0 + rng.uniform() * 10.0;
        demand[s] = {std::floor(forecast[s] + rng.normal(0.0, 3.0) + 0.5)};
        demand[s][0] = std::max(demand[s][0], 0.0);
    }
    const SafetyStockPool pool(errors, sd);
    InventoryConfig cfg;
    cfg.origins = 1;

    double prev_on_hand = -1.0, prev_lost = 1e300, prev_achieved = -1.0;
    for (const double target : {0.90, 0.95, 0.99}) {
        std::vector<std::vector<double>> orders(n_series);
        for (std::size_t s = 0; s < n_series; ++s)
            orders[s] = {order_up_to_level(forecast[s], pool.addend(s, target))};
        const auto metrics = simulate(cfg, target, orders, demand, sd);
        CHECK(metrics[0].scaled_on_hand >= prev_on_hand);
        CHECK(metrics[0].scaled_lost_sales <= prev_lost);
        CHECK(metrics[0].achieved_sl >= prev_achieved);
        prev_on_hand = metrics[0].scaled_on_hand;
        prev_lost = metrics[0].scaled_lost_sales;
        prev_achieved = metrics[0].achieved_sl;
    }
}

TEST_CASE("unsupported policies are rejected") {
    InventoryConfig cfg;
    cfg.lead_time = 2;
    const std::vector<double> one_sd = {1.0};
    CHECK_THROWS(simulate(cfg, 0.9, {{1.0}}, {{1.0}}, one_sd));
}
