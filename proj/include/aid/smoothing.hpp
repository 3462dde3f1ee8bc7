#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aid {

enum class SmoothMethod { supsmu, lowess };

struct SmoothConfig {
    SmoothMethod method = SmoothMethod::supsmu;
    double lowess_span = 2.0 / 3.0;  // fraction of points, (0,1]
    double supsmu_bass = 0.0;        // [0,10], larger favours wider spans
    std::size_t min_points = 7;      // below this the smooth is the in-sample mean
};

/**
 * Friedman's variable-span smoother.
 *
 * Local linear fits are run at three base spans (0.05, 0.2 and 0.5 of n).
 * Leave-one-out absolute residuals of each fit are smoothed with the
 * midrange span and the per-point span with the smallest cross-validated
 * residual wins; bass enhancement pulls the choice toward the widest span.
 * The winning spans are themselves smoothed and the final estimate
 * interpolates between the fits of the two bracketing base spans.
 *
 * x must be strictly increasing and the same length as y. Inputs shorter
 * than config.min_points return the mean of y at every point; inputs
 * shorter than 2 throw.
 */
std::vector<double> supsmu(std::span<const double> x, std::span<const double> y,
                           const SmoothConfig& config = {});

/// Locally weighted regression with tricube weights and two robustness
/// iterations. Same length/fallback rules as supsmu.
std::vector<double> lowess(std::span<const double> x, std::span<const double> y, double span,
                           std::size_t min_points = 7);

/// Dispatch on config.method.
std::vector<double> smooth(std::span<const double> x, std::span<const double> y,
                           const SmoothConfig& config);

}  // namespace aid
