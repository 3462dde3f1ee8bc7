#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aid {

/// The six candidate demand models plus the sub-fits mixtures are built from.
enum class ModelKind {
    regular_fractional,             // I   Gaussian regression on the data
    regular_count,                  // II  Negative Binomial regression
    smooth_intermittent_fractional, // III rectified-normal regression
    lumpy_intermittent_fractional,  // IV  Bernoulli x Gaussian mixture
    smooth_intermittent_count,      // V   Negative Binomial with zeroes
    lumpy_intermittent_count,       // VI  Bernoulli x Negative Binomial mixture
    occurrence,                     // Bernoulli sub-fit
    sizes_normal,                   // Gaussian sub-fit on demand sizes
    sizes_nbinom,                   // Negative Binomial sub-fit on demand sizes
};

const char* to_string(ModelKind kind);

struct FittedModel {
    ModelKind kind;
    std::vector<std::pair<std::string, double>> params;
    double loglik = 0.0;
    int n_params = 0;
    double aic = 0.0;     // 2*n_params - 2*loglik, +inf when loglik is not finite
    bool converged = false;
    std::size_t n_obs = 0;
    std::string note;     // degeneracy/boundary markers, empty when clean
    std::vector<FittedModel> components;  // sub-fits of a mixture

    double param(const std::string& name) const;  // throws when missing
    bool usable() const;  // finite log-likelihood
};

/// The three smoothed series the candidate models regress on.
struct Regressors {
    std::vector<double> y_smooth;  // smoothed demand, aligned with y
    std::vector<double> z_smooth;  // smoothed sizes, aligned with the non-zero y
    std::vector<double> p_smooth;  // smoothed occurrence in [0,1], aligned with y
};

enum class SizesKind { normal, nbinom };

/// Model I: y ~ N(b0 + b1*x, sigma2), closed-form least squares with the
/// ML variance (divide by n).
FittedModel fit_normal_reg(std::span<const double> y, std::span<const double> x,
                           ModelKind kind = ModelKind::regular_fractional);

/// Models II/V: y ~ NB(exp(b0 + b1*x), size), joint ML over (b0, b1, log size).
FittedModel fit_nbinom_reg(std::span<const double> y, std::span<const double> x,
                           ModelKind kind = ModelKind::regular_count);

/// Model III: zero-censored Gaussian. Positive observations contribute the
/// normal density, zeroes the censored mass Phi(-mu/sigma). Without zeroes
/// this is exactly the model I fit.
FittedModel fit_rectnorm_reg(std::span<const double> y, std::span<const double> x);

/// Occurrence part of the mixtures: o ~ Bernoulli(logistic(b0 + b1*x)).
/// All-one/all-zero inputs get the (n+1)-clamped intercept-only boundary fit
/// so the log-likelihood stays finite.
FittedModel fit_bernoulli_reg(std::span<const int> o, std::span<const double> x);

/// Models IV/VI: occurrence fit on p_smooth plus a sizes fit on z_smooth;
/// the joint log-likelihood is exactly the sum of the two parts.
FittedModel fit_mixture(std::span<const double> y, const Regressors& reg, SizesKind sizes_kind);

/// 2k - 2*loglik; throws std::domain_error on a non-finite log-likelihood.
double aic(const FittedModel& model);

}  // namespace aid
