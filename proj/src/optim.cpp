#include "aid/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aid {

namespace {

void finite_difference_grad(const Objective& f, std::span<const double> x,
                            std::span<double> grad) {
    std::vector<double> probe(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
        const double saved = probe[i];
        probe[i] = saved + h;
        const double f_plus = f(probe);
        probe[i] = saved - h;
        const double f_minus = f(probe);
        probe[i] = saved;
        grad[i] = (f_plus - f_minus) / (2.0 * h);
    }
}

double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

OptimResult minimize_bfgs(const Objective& f, const GradientFn* grad, std::vector<double> x0,
                          const OptimOptions& options) {
    const std::size_t dim = x0.size();
    OptimResult result;
    result.x = std::move(x0);
    result.fval = f(result.x);
    if (!std::isfinite(result.fval)) return result;  // hopeless start

    auto eval_grad = [&](std::span<const double> x, std::span<double> g) {
        if (grad)
            (*grad)(x, g);
        else
            finite_difference_grad(f, x, g);
    };

    std::vector<double> g(dim), g_new(dim), direction(dim), x_new(dim), s(dim), yv(dim);
    std::vector<double> hess_inv(dim * dim, 0.0);  // inverse Hessian approximation
    for (std::size_t i = 0; i < dim; ++i) hess_inv[i * dim + i] = 1.0;
    eval_grad(result.x, g);

    for (int iter = 0; iter < options.max_iter; ++iter) {
        result.iterations = iter + 1;
        if (sup_norm(g) <= options.grad_tol * std::max(1.0, std::abs(result.fval))) {
            result.converged = true;
            break;
        }

        for (std::size_t i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < dim; ++j) acc += hess_inv[i * dim + j] * g[j];
            direction[i] = -acc;
        }
        double descent = 0.0;
        for (std::size_t i = 0; i < dim; ++i) descent += direction[i] * g[i];
        if (!(descent < 0.0)) {
            // Bad curvature; fall back to steepest descent.
            for (std::size_t i = 0; i < dim; ++i) direction[i] = -g[i];
            descent = 0.0;
            for (std::size_t i = 0; i < dim; ++i) descent += direction[i] * g[i];
            if (!(descent < 0.0)) {
                result.converged = true;  // gradient numerically zero
                break;
            }
            std::fill(hess_inv.begin(), hess_inv.end(), 0.0);
            for (std::size_t i = 0; i < dim; ++i) hess_inv[i * dim + i] = 1.0;
        }

        const double dir_norm = sup_norm(direction);
        double alpha = dir_norm > options.step_limit ? options.step_limit / dir_norm : 1.0;
        double f_new = std::numeric_limits<double>::infinity();
        bool accepted = false;
        constexpr double kArmijo = 1e-4;
        for (int ls = 0; ls < 50; ++ls) {
            for (std::size_t i = 0; i < dim; ++i) x_new[i] = result.x[i] + alpha * direction[i];
            f_new = f(x_new);
            if (std::isfinite(f_new) && f_new <= result.fval + kArmijo * alpha * descent) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;  // no further progress possible along this ray

        eval_grad(x_new, g_new);
        double sty = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            s[i] = x_new[i] - result.x[i];
            yv[i] = g_new[i] - g[i];
            sty += s[i] * yv[i];
        }

        const double f_change = std::abs(result.fval - f_new);
        result.x = x_new;
        result.fval = f_new;
        g = g_new;

        if (f_change <= options.rel_tol * (std::abs(f_new) + options.rel_tol)) {
            result.converged = true;
            break;
        }

        if (sty > 1e-12) {
            // BFGS inverse update: H <- (I - r s y')H(I - r y s') + r s s'
            const double rho = 1.0 / sty;
            std::vector<double> hy(dim, 0.0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) hy[i] += hess_inv[i * dim + j] * yv[j];
            double yhy = 0.0;
            for (std::size_t i = 0; i < dim; ++i) yhy += yv[i] * hy[i];
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    hess_inv[i * dim + j] += rho * ((1.0 + rho * yhy) * s[i] * s[j] -
                                                    hy[i] * s[j] - s[i] * hy[j]);
        }
    }
    return result;
}

}  // namespace aid
