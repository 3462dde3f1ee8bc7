#include <doctest.h>

#include <cmath>

#include "aid/metrics.hpp"
#include "aid/rng.hpp"
#include "aid/simgen.hpp"

using namespace aid;

TEST_CASE("confusion counts") {
    const std::vector<int> t1 = {1, 0, 1, 0};
    const auto c1 = confusion(t1, t1);
    CHECK(c1.tp == 2);
    CHECK(c1.tn == 2);
    CHECK(c1.fp == 0);
    CHECK(c1.fn == 0);

    const auto c2 = confusion(t1, std::vector<int>{0, 0, 0, 0});
    CHECK(c2.fp == 0);
    CHECK(c2.tp == 0);
    CHECK(c2.fn == 2);

    const auto c3 = confusion(std::vector<int>{1, 0}, std::vector<int>{0, 1});
    CHECK(c3.fn == 1);
    CHECK(c3.fp == 1);
}

TEST_CASE("confusion aggregation is commutative and associative") {
    ConfusionMatrix a{1, 2, 3, 4}, b{5, 6, 7, 8}, c{2, 0, 1, 9};
    ConfusionMatrix ab = a;
    ab += b;
    ConfusionMatrix ba = b;
    ba += a;
    CHECK(ab.tp == ba.tp);
    CHECK(ab.fn == ba.fn);
    ConfusionMatrix abc1 = ab;
    abc1 += c;
    ConfusionMatrix bc = b;
    bc += c;
    ConfusionMatrix abc2 = a;
    abc2 += bc;
    CHECK(abc1.tp == abc2.tp);
    CHECK(abc1.tn == abc2.tn);
}

TEST_CASE("rmsse hand examples") {
    CHECK(rmsse(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5},
                std::vector<double>{3, 3}) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
    CHECK(rmsse(std::vector<double>{1, 2, 3}, std::vector<double>{4},
                std::vector<double>{3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rmsse(std::vector<double>{1, 2, 3}, std::vector<double>{4, 5},
                std::vector<double>{4, 5}) == 0.0);
    CHECK_THROWS(rmsse(std::vector<double>{2, 2, 2}, std::vector<double>{1},
                       std::vector<double>{1}));
}

TEST_CASE("rmsse is scale-free") {
    const std::vector<double> in = {3, 1, 4, 1, 5}, a = {2, 6}, f = {3, 5};
    const double base = rmsse(in, a, f);
    const double c = 123.456;
    std::vector<double> in_c(in), a_c(a), f_c(f);
    for (auto& v : in_c) v *= c;
    for (auto& v : a_c) v *= c;
    for (auto& v : f_c) v *= c;
    CHECK(std::abs(rmsse(in_c, a_c, f_c) - base) < 1e-12);
}

TEST_CASE("perfect detector gives auc 1, label swap mirrors it") {
    // Synthetic score-thresholded flags: nested sets over the grid.
    Rng rng(606);
    const std::size_t n = 10000;
    std::vector<int> truth(n);
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
        truth[i] = rng.uniform() < 0.2 ? 1 : 0;
        score[i] = truth[i];  // perfect predictor
    }
    std::vector<ConfusionMatrix> per_level;
    for (double cut = 0.1; cut < 1.0; cut += 0.2) {
        std::vector<int> predicted(n);
        for (std::size_t i = 0; i < n; ++i) predicted[i] = score[i] > cut ? 1 : 0;
        per_level.push_back(confusion(truth, predicted));
    }
    CHECK(roc_from_confusions(per_level).auc == doctest::Approx(1.0));

    // Random scores: auc near 1/2; swapping predictions mirrors the curve.
    for (std::size_t i = 0; i < n; ++i) score[i] = rng.uniform();
    per_level.clear();
    std::vector<ConfusionMatrix> swapped;
    for (double cut = 0.05; cut < 1.0; cut += 0.05) {
        std::vector<int> predicted(n), inverted(n);
        for (std::size_t i = 0; i < n; ++i) {
            predicted[i] = score[i] > cut ? 1 : 0;
            inverted[i] = 1 - predicted[i];
        }
        per_level.push_back(confusion(truth, predicted));
        swapped.push_back(confusion(truth, inverted));
    }
    const double auc = roc_from_confusions(per_level).auc;
    CHECK(auc > 0.45);
    CHECK(auc < 0.55);
    CHECK(roc_from_confusions(swapped).auc == doctest::Approx(1.0 - auc).epsilon(1e-9));
}

TEST_CASE("roc over generated stockout series") {
    std::vector<LabeledSeries> labeled;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        ScenarioConfig cfg;
        cfg.n = 100;
        cfg.p_occ = 0.8;
        cfg.n_stockouts = 2;
        cfg.stockout_len = 7;
        cfg.seed = seed;
        labeled.push_back(gen_stockout_series(cfg));
    }
    const auto grid = default_nu_grid();
    const auto curve = roc_auc(labeled, grid, SmoothConfig{}, 1);
    CHECK(curve.auc > 0.8);  // long gaps in dense series are easy
    CHECK(curve.auc <= 1.0);
    // Points are monotone after sorting by FPR.
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].first >= curve.points[i - 1].first);
        CHECK(curve.points[i].second >= curve.points[i - 1].second - 1e-12);
    }
    // Parallel evaluation must not change anything.
    const auto curve2 = roc_auc(labeled, grid, SmoothConfig{}, 2);
    CHECK(curve2.auc == curve.auc);

    CHECK_THROWS(roc_auc(labeled, std::vector<double>{0.5, 0.9}, SmoothConfig{}, 1));
}

TEST_CASE("roc with no positive labels is an error") {
    std::vector<LabeledSeries> labeled;
    ScenarioConfig cfg;
    cfg.n_stockouts = 0;
    labeled.push_back(gen_stockout_series(cfg));
    CHECK_THROWS(roc_auc(labeled, default_nu_grid(), SmoothConfig{}, 1));
}

TEST_CASE("class accuracy rates and cross-tab") {
    using CL = ClassLabel;
    const std::vector<CL> truth = {
        {TopClass::regular, Valueness::count},
        {TopClass::regular, Valueness::fractional},
        {TopClass::smooth_intermittent, Valueness::count},
        {TopClass::lumpy_intermittent, Valueness::fractional},
    };
    const auto perfect = class_accuracy(truth, truth);
    for (const auto& label : truth)
        CHECK(perfect.rate[class_index(label.top, label.valueness)] == 1.0);

    const std::vector<CL> all_regular_count(truth.size(),
                                            CL{TopClass::regular, Valueness::count});
    const auto biased = class_accuracy(truth, all_regular_count);
    CHECK(biased.rate[class_index(TopClass::regular, Valueness::count)] == 1.0);
    CHECK(biased.rate[class_index(TopClass::regular, Valueness::fractional)] == 0.0);
    CHECK(biased.table[class_index(TopClass::lumpy_intermittent, Valueness::fractional)]
                      [class_index(TopClass::regular, Valueness::count)] == 1);
}

TEST_CASE("default nu grid shape") {
    const auto grid = default_nu_grid();
    CHECK(grid.size() == 50);
    CHECK(grid.front() == doctest::Approx(0.5));
    CHECK(grid.back() == doctest::Approx(1.0 - 1e-5));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("holdout evaluation mask excludes flagged cells") {
    // A dense series ending in a long zero run: the trailing cells are
    // flagged and excluded from evaluation.
    DemandSeries s;
    s.id = "mask";
    s.values.assign(60, 2.0);
    for (std::size_t t = 52; t < 60; ++t) s.values[t] = 0.0;
    const auto keep = holdout_evaluation_mask(s, 4, 0.999);
    CHECK(keep.size() == 4);
    for (bool k : keep) CHECK_FALSE(k);

    DemandSeries clean;
    clean.id = "clean";
    clean.values.assign(60, 2.0);
    const auto keep_all = holdout_evaluation_mask(clean, 4, 0.999);
    for (bool k : keep_all) CHECK(k);
}
