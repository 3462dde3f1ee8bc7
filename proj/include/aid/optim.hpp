#pragma once

#include <functional>
#include <span>
#include <vector>

namespace aid {

struct OptimOptions {
    int max_iter = 500;
    double rel_tol = 1e-8;       // relative change of the objective
    double grad_tol = 1e-7;      // sup-norm of the gradient
    double step_limit = 10.0;    // per-iteration cap on the step sup-norm
};

struct OptimResult {
    std::vector<double> x;
    double fval = 0.0;
    bool converged = false;
    int iterations = 0;
};

using Objective = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Minimises f starting at x0 with BFGS and Armijo backtracking. When grad
/// is null a central finite-difference gradient is used. The final point
/// never has a larger objective than the starting one.
OptimResult minimize_bfgs(const Objective& f, const GradientFn* grad, std::vector<double> x0,
                          const OptimOptions& options = {});

}  // namespace aid
