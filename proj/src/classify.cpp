#include "aid/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "aid/stats.hpp"

namespace aid {

namespace {

constexpr double kIntegerTol = 1e-9;

std::vector<double> index_axis(std::size_t n) {
    std::vector<double> x(n);
    std::iota(x.begin(), x.end(), 1.0);
    return x;
}

FittedModel failed_candidate(ModelKind kind, const std::string& why) {
    FittedModel m;
    m.kind = kind;
    m.loglik = -std::numeric_limits<double>::infinity();
    m.aic = std::numeric_limits<double>::infinity();
    m.converged = false;
    m.note = "fit-failed: " + why;
    return m;
}

template <typename Fit>
FittedModel try_fit(ModelKind kind, Fit&& fit) {
    try {
        return fit();
    } catch (const std::exception& e) {
        return failed_candidate(kind, e.what());
    }
}

// Lowest AIC wins; non-finite likelihoods never win; ties go to the model
// with fewer parameters, then to the earlier candidate.
std::size_t pick_winner(const std::vector<FittedModel>& candidates) {
    std::size_t best = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    int best_params = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double a = candidates[i].usable() ? candidates[i].aic
                                                : std::numeric_limits<double>::infinity();
        if (a < best_aic || (a == best_aic && candidates[i].n_params < best_params)) {
            best = i;
            best_aic = a;
            best_params = candidates[i].n_params;
        }
    }
    return best;
}

}  // namespace

const char* to_string(TopClass c) {
    switch (c) {
        case TopClass::regular: return "regular";
        case TopClass::smooth_intermittent: return "smooth_intermittent";
        case TopClass::lumpy_intermittent: return "lumpy_intermittent";
    }
    return "unknown";
}

const char* to_string(Valueness v) {
    return v == Valueness::count ? "count" : "fractional";
}

const char* to_string(SbcQuadrant q) {
    switch (q) {
        case SbcQuadrant::smooth: return "smooth";
        case SbcQuadrant::intermittent: return "intermittent";
        case SbcQuadrant::erratic: return "erratic";
        case SbcQuadrant::lumpy: return "lumpy";
    }
    return "unknown";
}

int class_index(TopClass top, Valueness valueness) {
    return static_cast<int>(top) * 2 + (valueness == Valueness::count ? 0 : 1);
}

bool is_count(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("is_count: empty input");
    return std::all_of(values.begin(), values.end(), [](double v) {
        return std::abs(v - std::round(v)) <= kIntegerTol;
    });
}

DemandClass classify(const DemandSeries& series, double nu, const SmoothConfig& config) {
    if (series.values.size() < 10)
        throw std::invalid_argument("classify: series '" + series.id +
                                    "' has fewer than 10 observations");

    DemandClass result;
    result.stockouts = detect_stockouts(series, nu, config);
    const DemandSeries cleaned = drop_flagged(series, result.stockouts.flags);

    const Decomposition d = decompose(cleaned);
    if (d.degenerate)
        throw std::runtime_error("classify: series '" + series.id +
                                 "' is empty-demand after stockout removal");

    result.values_integer = is_count(cleaned.values);
    const bool zeroes_remain = d.sizes.size() < cleaned.values.size();
    const std::size_t n = cleaned.values.size();
    const auto x_axis = index_axis(n);

    if (!zeroes_remain) {
        result.top = TopClass::regular;
        if (!result.values_integer) {
            result.valueness = Valueness::fractional;  // no comparison needed
            return result;
        }
        const auto y_smooth = smooth(x_axis, cleaned.values, config);
        result.evidence.push_back(try_fit(ModelKind::regular_fractional, [&] {
            return fit_normal_reg(cleaned.values, y_smooth);
        }));
        result.evidence.push_back(try_fit(ModelKind::regular_count, [&] {
            return fit_nbinom_reg(cleaned.values, y_smooth);
        }));
        const auto& winner = result.evidence[pick_winner(result.evidence)];
        result.valueness = winner.kind == ModelKind::regular_count ? Valueness::count
                                                                   : Valueness::fractional;
        return result;
    }

    // Intermittent. The binary case (zeroes plus one repeated value) is
    // decided before any fitting since constant sizes degenerate the
    // Gaussian sizes model.
    const bool constant_sizes =
        std::all_of(d.sizes.begin(), d.sizes.end(), [&](double v) {
            return std::abs(v - d.sizes.front()) <= kIntegerTol * std::max(1.0, d.sizes.front());
        });
    if (constant_sizes && result.values_integer) {
        result.top = TopClass::smooth_intermittent;
        result.valueness = Valueness::count;
        result.binary_special = true;
        return result;
    }

    Regressors reg;
    reg.y_smooth = smooth(x_axis, cleaned.values, config);
    std::vector<double> z_axis(d.size_period.size());
    std::transform(d.size_period.begin(), d.size_period.end(), z_axis.begin(),
                   [](std::size_t p) { return static_cast<double>(p); });
    reg.z_smooth = smooth(z_axis, d.sizes, config);
    std::vector<double> occ(n);
    std::transform(d.occurrence.begin(), d.occurrence.end(), occ.begin(),
                   [](int o) { return static_cast<double>(o); });
    reg.p_smooth = smooth(x_axis, occ, config);
    for (double& p : reg.p_smooth) p = std::clamp(p, 0.0, 1.0);

    result.evidence.push_back(try_fit(ModelKind::smooth_intermittent_fractional, [&] {
        return fit_rectnorm_reg(cleaned.values, reg.y_smooth);
    }));
    result.evidence.push_back(try_fit(ModelKind::lumpy_intermittent_fractional, [&] {
        return fit_mixture(cleaned.values, reg, SizesKind::normal);
    }));
    if (result.values_integer) {
        result.evidence.push_back(try_fit(ModelKind::smooth_intermittent_count, [&] {
            return fit_nbinom_reg(cleaned.values, reg.y_smooth,
                                  ModelKind::smooth_intermittent_count);
        }));
        result.evidence.push_back(try_fit(ModelKind::lumpy_intermittent_count, [&] {
            return fit_mixture(cleaned.values, reg, SizesKind::nbinom);
        }));
    }

    const auto& winner = result.evidence[pick_winner(result.evidence)];
    switch (winner.kind) {
        case ModelKind::smooth_intermittent_fractional:
            result.top = TopClass::smooth_intermittent;
            result.valueness = Valueness::fractional;
            break;
        case ModelKind::lumpy_intermittent_fractional:
            result.top = TopClass::lumpy_intermittent;
            result.valueness = Valueness::fractional;
            break;
        case ModelKind::smooth_intermittent_count:
            result.top = TopClass::smooth_intermittent;
            result.valueness = Valueness::count;
            break;
        case ModelKind::lumpy_intermittent_count:
        default:
            result.top = TopClass::lumpy_intermittent;
            result.valueness = Valueness::count;
            break;
    }
    return result;
}

SBCClass sbc_classify(const DemandSeries& series) {
    const Decomposition d = decompose(series);
    if (d.sizes.size() < 2)
        throw std::invalid_argument("sbc_classify: series '" + series.id +
                                    "' needs at least 2 non-zero observations");
    SBCClass out;
    double interval_sum = 0.0;
    for (std::size_t q : d.intervals) interval_sum += static_cast<double>(q);
    out.adi = interval_sum / static_cast<double>(d.intervals.size());
    const double mz = mean(d.sizes);
    const double sdz = std::sqrt(variance_population(d.sizes));
    out.cv2 = mz > 0.0 ? (sdz / mz) * (sdz / mz) : 0.0;

    constexpr double kAdiCut = 1.32, kCv2Cut = 0.49;
    if (out.adi < kAdiCut)
        out.quadrant = out.cv2 < kCv2Cut ? SbcQuadrant::smooth : SbcQuadrant::erratic;
    else
        out.quadrant = out.cv2 < kCv2Cut ? SbcQuadrant::intermittent : SbcQuadrant::lumpy;
    return out;
}

}  // namespace aid
