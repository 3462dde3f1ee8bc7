#pragma once

#include <cstddef>
#include <span>

namespace aid {

double mean(std::span<const double> v);
double variance_population(std::span<const double> v);  // divide by n
double variance_sample(std::span<const double> v);      // divide by n-1
double sd_sample(std::span<const double> v);

double logistic(double x);
double logit(double p);

/// log of the standard normal density.
double log_norm_pdf(double z);

/// log of the standard normal CDF, stable deep into the lower tail.
double log_norm_cdf(double z);

double norm_cdf(double z);

/// Digamma function (asymptotic series with upward recurrence).
double digamma(double x);

/// Negative Binomial log pmf in the (mean, size) parameterisation:
/// variance = mu + mu^2/size.
double nb_logpmf(double y, double mu, double size);

}  // namespace aid
