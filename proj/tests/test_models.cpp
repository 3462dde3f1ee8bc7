#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "aid/batch.hpp"
#include "aid/models.hpp"
#include "aid/rng.hpp"
#include "aid/series.hpp"
#include "aid/simgen.hpp"
#include "aid/smoothing.hpp"
#include "aid/stats.hpp"

using namespace aid;

TEST_CASE("normal regression closed form") {
    // Sxy = 1, Sxx = 2 -> beta1 = 1/2, beta0 = 2/3.
    const std::vector<double> y = {1, 2, 2}, x = {1, 2, 3};
    const auto m = fit_normal_reg(y, x);
    CHECK(m.param("beta0") == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.param("beta1") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.n_params == 3);
    CHECK(m.aic == doctest::Approx(2.0 * 3 - 2.0 * m.loglik).epsilon(1e-12));
}

TEST_CASE("normal regression recovers an affine relation") {
    // Residual pattern +1,-1,-1,+1 is orthogonal to both the intercept and
    // the linear trend, so the fit recovers the line exactly.
    constexpr double kResiduals[4] = {1.0, -1.0, -1.0, 1.0};
    std::vector<double> x(20), y(20);
    for (std::size_t i = 0; i < 20; ++i) {
        x[i] = static_cast<double>(i);
        y[i] = x[i] + 5.0 + kResiduals[i % 4];
    }
    const auto m = fit_normal_reg(y, x);
    CHECK(m.param("beta1") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.param("beta0") == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("normal regression intercept-only on constant regressor") {
    const std::vector<double> y = {1, 5, 3, 7}, x = {2, 2, 2, 2};
    const auto m = fit_normal_reg(y, x);
    CHECK(m.note == "degenerate-regressor");
    CHECK(m.param("beta0") == doctest::Approx(4.0));
    CHECK(m.param("beta1") == 0.0);
    CHECK(m.param("sigma2") == doctest::Approx(variance_population(y)));
}

TEST_CASE("perfect fit flags a non-finite likelihood") {
    const std::vector<double> y = {4, 4, 4, 4}, x = {1, 1, 1, 1};
    const auto m = fit_normal_reg(y, x);
    CHECK_FALSE(m.usable());
    CHECK_THROWS(aic(m));
}

TEST_CASE("negative binomial MLE recovers the mean") {
    Rng rng(1234);
    const std::size_t n = 10000;
    std::vector<double> y(n), x(n, 1.0);
    for (auto& v : y) v = static_cast<double>(rng.nbinom_mean(10.0, 20.0));
    const auto m = fit_nbinom_reg(y, x);
    const double mu_hat = std::exp(m.param("beta0"));
    CHECK(mu_hat > 9.7);
    CHECK(mu_hat < 10.3);
    CHECK(m.converged);
}

TEST_CASE("negative binomial improves on the moment start") {
    Rng rng(99);
    const std::size_t n = 400;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) / 100.0;
        y[i] = static_cast<double>(rng.nbinom_mean(5.0 + x[i], 4.0));
    }
    const auto m = fit_nbinom_reg(y, x);

    const double ybar = mean(y);
    const double yvar = variance_population(y);
    const double s0 =
        std::clamp(ybar * ybar / std::max(yvar - ybar, ybar / 10.0), 0.01, 1e4);
    double ll_start = 0.0;
    for (double v : y) ll_start += nb_logpmf(v, ybar, s0);
    CHECK(m.loglik >= ll_start - 1e-9);
}

TEST_CASE("negative binomial guards") {
    const std::vector<double> zeros(10, 0.0), x(10, 1.0);
    const auto m = fit_nbinom_reg(zeros, x);
    CHECK(m.note == "degenerate-zero-mean");
    CHECK_FALSE(m.converged);

    const std::vector<double> frac = {1.5, 2.0, 3.0};
    CHECK_THROWS(fit_nbinom_reg(frac, std::vector<double>{1, 2, 3}));
}

TEST_CASE("all-equal counts drive the size to its cap") {
    const std::vector<double> y(30, 7.0);
    std::vector<double> x(30);
    for (std::size_t i = 0; i < 30; ++i) x[i] = static_cast<double>(i);
    const auto m = fit_nbinom_reg(y, x);
    CHECK(m.note.find("near-poisson-degenerate") != std::string::npos);
}

TEST_CASE("rectified normal equals normal on positive data") {
    Rng rng(55);
    std::vector<double> y(50), x(50);
    for (std::size_t i = 0; i < 50; ++i) {
        x[i] = static_cast<double>(i);
        y[i] = 10.0 + 0.1 * x[i] + rng.normal(0.0, 1.0);
    }
    const auto rect = fit_rectnorm_reg(y, x);
    const auto norm = fit_normal_reg(y, x);
    CHECK(std::abs(rect.loglik - norm.loglik) < 1e-6);
}

TEST_CASE("censored-normal MLE recovers the latent mean") {
    Rng rng(777);
    const std::size_t n = 10000;
    std::vector<double> y(n), x(n, 1.0);
    for (auto& v : y) v = std::max(rng.normal(1.0, 1.0), 0.0);
    const auto m = fit_rectnorm_reg(y, x);
    CHECK(m.param("beta0") > 0.9);
    CHECK(m.param("beta0") < 1.1);
}

TEST_CASE("all-zero rectified normal hits the boundary") {
    const std::vector<double> y(10, 0.0), x(10, 1.0);
    const auto m = fit_rectnorm_reg(y, x);
    CHECK(m.note == "degenerate-zero-mean");
    CHECK_FALSE(m.converged);
}

TEST_CASE("bernoulli intercept-only closed form") {
    std::vector<int> o(100, 0);
    for (std::size_t i = 0; i < 70; ++i) o[i] = 1;
    const std::vector<double> x(100, 3.0);
    const auto m = fit_bernoulli_reg(o, x);
    CHECK(logistic(m.param("beta0")) == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(m.loglik ==
          doctest::Approx(70.0 * std::log(0.7) + 30.0 * std::log(0.3)).epsilon(1e-9));
    CHECK(m.n_params == 2);
}

TEST_CASE("bernoulli boundary fits keep a finite likelihood") {
    const std::vector<int> ones(20, 1);
    const std::vector<double> x(20, 1.0);
    const auto m = fit_bernoulli_reg(ones, x);
    CHECK(m.note == "boundary");
    CHECK(logistic(m.param("beta0")) == doctest::Approx(20.0 / 21.0).epsilon(1e-9));
    CHECK(std::isfinite(m.loglik));
}

TEST_CASE("perfect separation stays bounded") {
    std::vector<int> o(40);
    std::vector<double> x(40);
    for (std::size_t i = 0; i < 40; ++i) {
        x[i] = static_cast<double>(i);
        o[i] = i >= 20 ? 1 : 0;
    }
    const auto m = fit_bernoulli_reg(o, x);
    CHECK(std::isfinite(m.loglik));
    // Either the optimizer gave up or the linear predictor sits at the clamp.
    if (m.converged) {
        const double eta_max = m.param("beta0") + m.param("beta1") * 39.0;
        CHECK(std::abs(eta_max) <= 30.0 + 1e-6);
    }
}

TEST_CASE("mixture log-likelihood is exactly the sum of its parts") {
    Rng rng(4242);
    const std::size_t n = 120;
    std::vector<double> y(n);
    Regressors reg;
    reg.p_smooth.assign(n, 0.6);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = rng.uniform() < 0.6 ? std::floor(rng.uniform() * 9.0) + 1.0 : 0.0;
        if (y[i] > 0.0) reg.z_smooth.push_back(5.0);
    }
    const auto m = fit_mixture(y, reg, SizesKind::normal);

    std::vector<int> o(n);
    std::vector<double> z;
    for (std::size_t i = 0; i < n; ++i) {
        o[i] = y[i] > 0.0 ? 1 : 0;
        if (o[i]) z.push_back(y[i]);
    }
    const auto occ = fit_bernoulli_reg(o, reg.p_smooth);
    const auto sizes = fit_normal_reg(z, reg.z_smooth, ModelKind::sizes_normal);
    CHECK(m.loglik == occ.loglik + sizes.loglik);  // exact decomposition
    CHECK(m.n_params == 5);
    CHECK(m.aic == doctest::Approx(2.0 * 5 - 2.0 * m.loglik).epsilon(1e-12));
    CHECK(m.components.size() == 2);
}

TEST_CASE("mixture preconditions") {
    Regressors reg;
    reg.p_smooth = {0.5, 0.5, 0.5};
    reg.z_smooth = {1.0, 1.0, 1.0};
    CHECK_THROWS(fit_mixture(std::vector<double>{1, 2, 3}, reg, SizesKind::normal));
    CHECK_THROWS(fit_mixture(std::vector<double>{0, 0, 0}, reg, SizesKind::normal));
}

TEST_CASE("mixture beats the censored normal on lumpy count data") {
    // Generated lumpy count series: the Bernoulli x NB mixture should win
    // the AIC comparison against the zero-censored Gaussian in at least 80%
    // of replications.
    const std::size_t reps = 200;
    std::vector<int> wins(reps, 0);
    aid::parallel_for(reps, 0, [&](std::size_t r) {
        const DemandSeries s = gen_dgp(6, 1000, 60000 + r);
        const Decomposition d = decompose(s);
        const std::size_t n = s.values.size();
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);

        SmoothConfig cfg;
        Regressors reg;
        reg.y_smooth = smooth(x, s.values, cfg);
        std::vector<double> zx(d.size_period.size());
        for (std::size_t i = 0; i < zx.size(); ++i)
            zx[i] = static_cast<double>(d.size_period[i]);
        reg.z_smooth = smooth(zx, d.sizes, cfg);
        std::vector<double> occ(n);
        for (std::size_t i = 0; i < n; ++i) occ[i] = d.occurrence[i];
        reg.p_smooth = smooth(x, occ, cfg);
        for (double& p : reg.p_smooth) p = std::clamp(p, 0.0, 1.0);

        const auto mix = fit_mixture(s.values, reg, SizesKind::nbinom);
        const auto rect = fit_rectnorm_reg(s.values, reg.y_smooth);
        wins[r] = mix.usable() && rect.usable() && mix.aic < rect.aic;
    });
    std::size_t total = 0;
    for (const int w : wins) total += w;
    CHECK(total >= 160);  // >= 80% of 200
}

TEST_CASE("aic arithmetic") {
    FittedModel m;
    m.loglik = -100.0;
    m.n_params = 3;
    CHECK(aic(m) == doctest::Approx(206.0));
    m.loglik = 0.0;
    m.n_params = 5;
    CHECK(aic(m) == doctest::Approx(10.0));
}

TEST_CASE("scaling the response shifts the gaussian log-likelihood by -n log c") {
    Rng rng(8);
    const std::size_t n = 60;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i);
        y[i] = 3.0 + 0.2 * x[i] + rng.normal();
    }
    const double c = 7.0;
    std::vector<double> yc(n);
    for (std::size_t i = 0; i < n; ++i) yc[i] = c * y[i];
    const auto m1 = fit_normal_reg(y, x);
    const auto m2 = fit_normal_reg(yc, x);
    CHECK(m2.loglik ==
          doctest::Approx(m1.loglik - static_cast<double>(n) * std::log(c)).epsilon(1e-9));
    CHECK(m2.param("beta1") == doctest::Approx(c * m1.param("beta1")).epsilon(1e-9));
}

TEST_CASE("adding a constant leaves the I vs III ranking unchanged") {
    Rng rng(9);
    const std::size_t n = 80;
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i);
        y[i] = 5.0 + rng.normal(0.0, 0.5);
        if (y[i] <= 0.0) y[i] = 0.1;
    }
    const auto rank = [&](const std::vector<double>& v) {
        const double a1 = fit_normal_reg(v, x).aic;
        const double a3 = fit_rectnorm_reg(v, x).aic;
        return a1 < a3;
    };
    std::vector<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i) shifted[i] = y[i] + 4.0;
    CHECK(rank(y) == rank(shifted));
}
