#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "aid/classify.hpp"
#include "aid/simgen.hpp"
#include "aid/smoothing.hpp"

namespace aid {

struct ConfusionMatrix {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
    std::size_t total() const { return tp + fp + tn + fn; }
    double tpr() const;  // tp / (tp + fn)
    double fpr() const;  // fp / (fp + tn)
};

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted);

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (FPR, TPR) incl. anchors
    double auc = 0.0;
};

/// 1-nu log-spaced from 0.5 down to 1e-5: dense where the detector operates.
std::vector<double> default_nu_grid(std::size_t levels = 50);

/// Sorts the per-level operating points, adds the (0,0) and (1,1) anchors
/// and integrates with the trapezoid rule.
RocCurve roc_from_confusions(std::span<const ConfusionMatrix> per_level);

/// Sweeps the detection level over the grid, aggregating per-observation
/// confusion matrices over all series (the smoothing is done once per
/// series). Throws when no series carries a positive truth label.
RocCurve roc_auc(const std::vector<LabeledSeries>& labeled, std::span<const double> nu_grid,
                 const SmoothConfig& config = {}, int workers = 1);

/// sqrt(mean((actual - forecast)^2) / mean(diff(in_sample)^2)).
double rmsse(std::span<const double> in_sample, std::span<const double> actual,
             std::span<const double> forecast);

struct ClassLabel {
    TopClass top;
    Valueness valueness;
};

struct ClassAccuracy {
    std::array<double, 6> rate{};                    // exact-match rate per truth class
    std::array<std::size_t, 6> support{};            // truth counts
    std::array<std::array<std::size_t, 6>, 6> table{};  // [truth][predicted]
};

ClassAccuracy class_accuracy(std::span<const ClassLabel> truth,
                             std::span<const ClassLabel> predicted);

/// The holdout evaluation rule: detection is re-run on the full series
/// (train plus holdout) and flagged holdout cells are excluded. Returns one
/// bool per holdout cell, true = keep.
std::vector<bool> holdout_evaluation_mask(const DemandSeries& full, std::size_t horizon,
                                          double nu, const SmoothConfig& config = {});

}  // namespace aid
