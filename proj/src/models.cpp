#include "aid/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aid/optim.hpp"
#include "aid/stats.hpp"

namespace aid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEtaBound = 30.0;     // clamp on linear predictors
constexpr double kLogSizeLo = -10.0;   // NB size = exp(theta) bounds
constexpr double kLogSizeHi = 12.0;
constexpr double kNearPoissonSize = 1e4;

struct Standardized {
    std::vector<double> x;  // (x - shift) / scale
    double shift = 0.0;
    double scale = 1.0;
    bool constant = false;
};

Standardized standardize(std::span<const double> x) {
    Standardized s;
    s.shift = mean(x);
    const double var = variance_population(x);
    if (var <= 1e-24 * std::max(1.0, s.shift * s.shift)) {
        s.constant = true;
        s.x.assign(x.size(), 0.0);
        return s;
    }
    s.scale = std::sqrt(var);
    s.x.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s.x[i] = (x[i] - s.shift) / s.scale;
    return s;
}

// Undo the internal standardisation: eta = b0' + b1'*(x-shift)/scale.
std::pair<double, double> raw_coefficients(double b0, double b1, const Standardized& s) {
    const double slope = s.constant ? 0.0 : b1 / s.scale;
    return {b0 - slope * s.shift, slope};
}

void check_lengths(std::size_t ny, std::size_t nx, const char* what) {
    if (ny != nx) throw std::invalid_argument(std::string(what) + ": y and x lengths differ");
    if (ny < 3) throw std::invalid_argument(std::string(what) + ": need at least 3 observations");
}

void finalize(FittedModel& m) {
    m.aic = std::isfinite(m.loglik) ? 2.0 * m.n_params - 2.0 * m.loglik : kInf;
}

}  // namespace

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::regular_fractional: return "regular_fractional";
        case ModelKind::regular_count: return "regular_count";
        case ModelKind::smooth_intermittent_fractional: return "smooth_intermittent_fractional";
        case ModelKind::lumpy_intermittent_fractional: return "lumpy_intermittent_fractional";
        case ModelKind::smooth_intermittent_count: return "smooth_intermittent_count";
        case ModelKind::lumpy_intermittent_count: return "lumpy_intermittent_count";
        case ModelKind::occurrence: return "occurrence";
        case ModelKind::sizes_normal: return "sizes_normal";
        case ModelKind::sizes_nbinom: return "sizes_nbinom";
    }
    return "unknown";
}

double FittedModel::param(const std::string& name) const {
    for (const auto& [key, value] : params)
        if (key == name) return value;
    throw std::out_of_range("FittedModel: no parameter '" + name + "'");
}

bool FittedModel::usable() const { return std::isfinite(loglik); }

double aic(const FittedModel& model) {
    if (!std::isfinite(model.loglik))
        throw std::domain_error("aic: log-likelihood is not finite");
    return 2.0 * model.n_params - 2.0 * model.loglik;
}

FittedModel fit_normal_reg(std::span<const double> y, std::span<const double> x,
                           ModelKind kind) {
    check_lengths(y.size(), x.size(), "fit_normal_reg");
    const auto n = static_cast<double>(y.size());

    FittedModel m;
    m.kind = kind;
    m.n_params = 3;
    m.n_obs = y.size();
    m.converged = true;

    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    double b0, b1;
    if (sxx <= 1e-24 * std::max(1.0, mx * mx) * n) {
        b0 = my;
        b1 = 0.0;
        m.note = "degenerate-regressor";
    } else {
        b1 = sxy / sxx;
        b0 = my - b1 * mx;
    }

    double sse = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - (b0 + b1 * x[i]);
        sse += r * r;
    }
    const double sigma2 = sse / n;
    m.params = {{"beta0", b0}, {"beta1", b1}, {"sigma2", sigma2}};
    const double scale = std::max(1.0, my * my);
    if (sigma2 <= 1e-15 * scale) {
        m.loglik = kInf;  // perfect fit, density unbounded
        m.converged = false;
        m.note = m.note.empty() ? "non-finite-likelihood" : m.note + ",non-finite-likelihood";
    } else {
        m.loglik = -0.5 * n * (std::log(2.0 * M_PI * sigma2) + 1.0);
    }
    finalize(m);
    return m;
}

FittedModel fit_bernoulli_reg(std::span<const int> o, std::span<const double> x) {
    if (o.size() != x.size())
        throw std::invalid_argument("fit_bernoulli_reg: o and x lengths differ");
    if (o.size() < 3)
        throw std::invalid_argument("fit_bernoulli_reg: need at least 3 observations");
    const auto n = static_cast<double>(o.size());
    double ones = 0.0;
    for (int v : o) {
        if (v != 0 && v != 1)
            throw std::invalid_argument("fit_bernoulli_reg: occurrence must be 0/1");
        ones += v;
    }

    FittedModel m;
    m.kind = ModelKind::occurrence;
    m.n_params = 2;
    m.n_obs = o.size();

    if (ones == 0.0 || ones == n) {
        // Boundary: clamp the rate so the likelihood stays finite for AIC.
        const double p = ones == n ? n / (n + 1.0) : 1.0 / (n + 1.0);
        m.params = {{"beta0", logit(p)}, {"beta1", 0.0}};
        m.loglik = ones == n ? n * std::log(p) : n * std::log(1.0 - p);
        m.converged = true;
        m.note = "boundary";
        finalize(m);
        return m;
    }

    const Standardized sx = standardize(x);
    if (sx.constant) {
        const double p = ones / n;
        m.params = {{"beta0", logit(p)}, {"beta1", 0.0}};
        m.loglik = ones * std::log(p) + (n - ones) * std::log(1.0 - p);
        m.converged = true;
        finalize(m);
        return m;
    }

    auto neg_loglik = [&](std::span<const double> th) {
        double ll = 0.0;
        for (std::size_t i = 0; i < o.size(); ++i) {
            const double eta = std::clamp(th[0] + th[1] * sx.x[i], -kEtaBound, kEtaBound);
            // log(p) = -log(1+e^-eta), log(1-p) = -eta - log(1+e^-eta)
            const double log1pe = eta > 0.0 ? std::log1p(std::exp(-eta)) + 0.0
                                            : std::log1p(std::exp(eta)) - eta;
            ll += o[i] ? -log1pe : -eta - log1pe;
        }
        return -ll;
    };
    GradientFn grad = [&](std::span<const double> th, std::span<double> g) {
        g[0] = g[1] = 0.0;
        for (std::size_t i = 0; i < o.size(); ++i) {
            const double eta = std::clamp(th[0] + th[1] * sx.x[i], -kEtaBound, kEtaBound);
            const double resid = o[i] - logistic(eta);
            g[0] -= resid;
            g[1] -= resid * sx.x[i];
        }
    };

    std::vector<double> start = {logit(ones / n), 0.0};
    const OptimResult opt = minimize_bfgs(neg_loglik, &grad, start);
    const auto [b0, b1] = raw_coefficients(opt.x[0], opt.x[1], sx);
    m.params = {{"beta0", b0}, {"beta1", b1}};
    m.loglik = -opt.fval;
    m.converged = opt.converged;
    if (!opt.converged) m.note = "not-converged";
    // Separation: the linear predictor ran into the clamp, the MLE does not
    // exist and the reported coefficients only mark the direction.
    double eta_max = 0.0;
    for (double xi : sx.x)
        eta_max = std::max(eta_max, std::abs(opt.x[0] + opt.x[1] * xi));
    if (eta_max >= kEtaBound) {
        m.converged = false;
        m.note = m.note.empty() ? "separation" : m.note + ",separation";
    }
    finalize(m);
    return m;
}

FittedModel fit_nbinom_reg(std::span<const double> y, std::span<const double> x,
                           ModelKind kind) {
    check_lengths(y.size(), x.size(), "fit_nbinom_reg");
    double ysum = 0.0;
    for (double v : y) {
        if (v < 0.0 || std::abs(v - std::round(v)) > 1e-9)
            throw std::invalid_argument("fit_nbinom_reg: y must be non-negative integers");
        ysum += v;
    }
    const auto n = static_cast<double>(y.size());

    FittedModel m;
    m.kind = kind;
    m.n_params = 3;
    m.n_obs = y.size();

    if (ysum == 0.0) {
        // Mean at the zero boundary; the likelihood supremum is 0.
        m.params = {{"beta0", -kEtaBound}, {"beta1", 0.0}, {"size", 1.0}};
        double ll = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) ll += nb_logpmf(0.0, std::exp(-kEtaBound), 1.0);
        m.loglik = ll;
        m.converged = false;
        m.note = "degenerate-zero-mean";
        finalize(m);
        return m;
    }

    const Standardized sx = standardize(x);
    const double ybar = ysum / n;
    const double yvar = variance_population(y);
    double size0 = ybar * ybar / std::max(yvar - ybar, ybar / 10.0);
    size0 = std::clamp(size0, 0.01, kNearPoissonSize);

    auto unpack = [&](std::span<const double> th, std::size_t i, double& mu, double& s) {
        const double eta = std::clamp(th[0] + th[1] * sx.x[i], -kEtaBound, kEtaBound);
        mu = std::exp(eta);
        s = std::exp(std::clamp(th[2], kLogSizeLo, kLogSizeHi));
    };
    auto neg_loglik = [&](std::span<const double> th) {
        double ll = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double mu, s;
            unpack(th, i, mu, s);
            ll += nb_logpmf(y[i], mu, s);
        }
        return -ll;
    };
    GradientFn grad = [&](std::span<const double> th, std::span<double> g) {
        g[0] = g[1] = g[2] = 0.0;
        const double s = std::exp(std::clamp(th[2], kLogSizeLo, kLogSizeHi));
        for (std::size_t i = 0; i < y.size(); ++i) {
            double mu, s_unused;
            unpack(th, i, mu, s_unused);
            const double common = s * (y[i] - mu) / (s + mu);
            g[0] -= common;
            g[1] -= common * sx.x[i];
            g[2] -= s * (digamma(y[i] + s) - digamma(s) + std::log(s / (s + mu)) + 1.0 -
                         (s + y[i]) / (s + mu));
        }
    };

    std::vector<double> start = {std::log(std::max(ybar, 1e-8)), 0.0, std::log(size0)};
    const OptimResult opt = minimize_bfgs(neg_loglik, &grad, start);
    const auto [b0, b1] = raw_coefficients(opt.x[0], opt.x[1], sx);
    const double size_hat = std::exp(std::clamp(opt.x[2], kLogSizeLo, kLogSizeHi));
    m.params = {{"beta0", b0}, {"beta1", b1}, {"size", size_hat}};
    m.loglik = -opt.fval;
    m.converged = opt.converged;
    if (size_hat >= kNearPoissonSize) m.note = "near-poisson-degenerate";
    if (!opt.converged) m.note = m.note.empty() ? "not-converged" : m.note + ",not-converged";
    finalize(m);
    return m;
}

FittedModel fit_rectnorm_reg(std::span<const double> y, std::span<const double> x) {
    check_lengths(y.size(), x.size(), "fit_rectnorm_reg");
    std::size_t zeroes = 0;
    for (double v : y) {
        if (v < 0.0) throw std::invalid_argument("fit_rectnorm_reg: y must be non-negative");
        if (v == 0.0) ++zeroes;
    }

    if (zeroes == 0) {
        // No censored mass: exactly the Gaussian regression.
        FittedModel m = fit_normal_reg(y, x, ModelKind::smooth_intermittent_fractional);
        return m;
    }

    FittedModel m;
    m.kind = ModelKind::smooth_intermittent_fractional;
    m.n_params = 3;
    m.n_obs = y.size();

    if (zeroes == y.size()) {
        m.params = {{"beta0", -kEtaBound}, {"beta1", 0.0}, {"sigma2", 1.0}};
        // mu -> -inf pushes every censored term to log(1) = 0.
        m.loglik = static_cast<double>(y.size()) * log_norm_cdf(kEtaBound);
        m.converged = false;
        m.note = "degenerate-zero-mean";
        finalize(m);
        return m;
    }

    const Standardized sx = standardize(x);
    // OLS start on the full data.
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sxx += sx.x[i] * sx.x[i];
        sxy += sx.x[i] * (y[i] - my);
    }
    const double b1_start = sxx > 0.0 ? sxy / sxx : 0.0;
    double sse = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - (my + b1_start * sx.x[i]);
        sse += r * r;
    }
    const double sigma_start = std::max(std::sqrt(sse / static_cast<double>(y.size())), 1e-6);

    constexpr double kLogSigmaLo = -12.0, kLogSigmaHi = 15.0;
    auto neg_loglik = [&](std::span<const double> th) {
        const double sigma = std::exp(std::clamp(th[2], kLogSigmaLo, kLogSigmaHi));
        double ll = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double mu = th[0] + th[1] * sx.x[i];
            if (y[i] > 0.0)
                ll += log_norm_pdf((y[i] - mu) / sigma) - std::log(sigma);
            else
                ll += log_norm_cdf(-mu / sigma);
        }
        return -ll;
    };
    GradientFn grad = [&](std::span<const double> th, std::span<double> g) {
        const double sigma = std::exp(std::clamp(th[2], kLogSigmaLo, kLogSigmaHi));
        g[0] = g[1] = g[2] = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double mu = th[0] + th[1] * sx.x[i];
            double dmu, dsigma;
            if (y[i] > 0.0) {
                const double r = (y[i] - mu) / sigma;
                dmu = r / sigma;
                dsigma = (r * r - 1.0) / sigma;
            } else {
                const double z = -mu / sigma;
                const double mills = std::exp(log_norm_pdf(z) - log_norm_cdf(z));
                dmu = -mills / sigma;
                dsigma = mills * mu / (sigma * sigma);
            }
            g[0] -= dmu;
            g[1] -= dmu * sx.x[i];
            g[2] -= dsigma * sigma;  // chain rule through log sigma
        }
    };

    std::vector<double> start = {my, b1_start, std::log(sigma_start)};
    const OptimResult opt = minimize_bfgs(neg_loglik, &grad, start);
    const auto [b0, b1] = raw_coefficients(opt.x[0], opt.x[1], sx);
    const double sigma_hat = std::exp(std::clamp(opt.x[2], kLogSigmaLo, kLogSigmaHi));
    m.params = {{"beta0", b0}, {"beta1", b1}, {"sigma2", sigma_hat * sigma_hat}};
    m.loglik = -opt.fval;
    m.converged = opt.converged;
    if (opt.x[2] <= kLogSigmaLo + 0.1) {
        m.loglik = kInf;
        m.converged = false;
        m.note = "non-finite-likelihood";
    } else if (!opt.converged) {
        m.note = "not-converged";
    }
    finalize(m);
    return m;
}

FittedModel fit_mixture(std::span<const double> y, const Regressors& reg, SizesKind sizes_kind) {
    if (reg.p_smooth.size() != y.size())
        throw std::invalid_argument("fit_mixture: p_smooth must align with y");
    std::vector<int> o(y.size());
    std::vector<double> z;
    for (std::size_t i = 0; i < y.size(); ++i) {
        o[i] = y[i] > 0.0 ? 1 : 0;
        if (o[i]) z.push_back(y[i]);
    }
    if (z.empty() || z.size() == y.size())
        throw std::invalid_argument("fit_mixture: y needs both zero and non-zero values");
    if (z.size() < 3)
        throw std::runtime_error("fit_mixture: insufficient-sizes (need >= 3 non-zero values)");
    if (reg.z_smooth.size() != z.size())
        throw std::invalid_argument("fit_mixture: z_smooth must align with the non-zero values");

    FittedModel occ = fit_bernoulli_reg(o, reg.p_smooth);
    FittedModel sizes = sizes_kind == SizesKind::normal
                            ? fit_normal_reg(z, reg.z_smooth, ModelKind::sizes_normal)
                            : fit_nbinom_reg(z, reg.z_smooth, ModelKind::sizes_nbinom);

    FittedModel m;
    m.kind = sizes_kind == SizesKind::normal ? ModelKind::lumpy_intermittent_fractional
                                             : ModelKind::lumpy_intermittent_count;
    m.n_params = occ.n_params + sizes.n_params;  // 2 + 3
    m.n_obs = y.size();
    m.loglik = occ.loglik + sizes.loglik;
    m.converged = occ.converged && sizes.converged;
    for (const auto& [key, value] : occ.params) m.params.emplace_back("occ_" + key, value);
    for (const auto& [key, value] : sizes.params) m.params.emplace_back("sizes_" + key, value);
    if (!occ.note.empty()) m.note = "occ:" + occ.note;
    if (!sizes.note.empty())
        m.note += (m.note.empty() ? "" : ";") + ("sizes:" + sizes.note);
    m.components = {std::move(occ), std::move(sizes)};
    finalize(m);
    return m;
}

}  // namespace aid
