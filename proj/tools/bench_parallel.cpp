// Benchmark: the OpenMP batch kernels against the serial reference path,
// verifying along the way that both produce identical results.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "aid/batch.hpp"
#include "aid/classify.hpp"
#include "aid/metrics.hpp"
#include "aid/rng.hpp"
#include "aid/simgen.hpp"

using namespace aid;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<std::string> classify_batch(const std::vector<DemandSeries>& series,
                                        int workers) {
    std::vector<std::string> labels(series.size());
    parallel_for(series.size(), workers, [&](std::size_t i) {
        const auto k = classify(series[i], 0.999);
        labels[i] = std::string(to_string(k.top)) + "/" + to_string(k.valueness);
    });
    return labels;
}

struct Timing {
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = false;
};

template <typename Run, typename Result>
Timing time_both(Run&& run, Result* serial_out) {
    Timing t;
    double t0 = now_ms();
    const auto serial = run(1);
    t.serial_ms = now_ms() - t0;
    t0 = now_ms();
    const auto parallel = run(0);  // all hardware threads
    t.parallel_ms = now_ms() - t0;
    t.identical = serial == parallel;
    if (serial_out) *serial_out = serial;
    return t;
}

void report(const char* name, const Timing& t) {
    std::printf("%-22s serial %8.1f ms   parallel %8.1f ms   speedup %4.2fx   match %s\n",
                name, t.serial_ms, t.parallel_ms,
                t.parallel_ms > 0.0 ? t.serial_ms / t.parallel_ms : 0.0,
                t.identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n_series = argc > 1 ? std::stoul(argv[1]) : 300;
    std::printf("workers available: %d\n", resolve_workers(0));

    // Workload 1: batch classification over a mixed panel.
    std::vector<DemandSeries> panel(n_series);
    parallel_for(n_series, 0, [&](std::size_t i) {
        panel[i] = gen_dgp(1 + static_cast<int>(i % 6), 400,
                           splitmix64(0xbeef ^ (i * 0x9e3779b97f4a7c15ULL)));
    });
    std::vector<std::string> labels;
    report("classify x400", time_both([&](int w) { return classify_batch(panel, w); },
                                      &labels));

    // Workload 2: ROC sweep over labeled stockout series.
    std::vector<LabeledSeries> labeled(n_series);
    parallel_for(n_series, 0, [&](std::size_t i) {
        ScenarioConfig cfg;
        cfg.n = 400;
        cfg.p_occ = 0.7;
        cfg.n_stockouts = 5;
        cfg.stockout_len = 6;
        cfg.seed = splitmix64(0xfeed ^ (i * 0x9e3779b97f4a7c15ULL));
        labeled[i] = gen_stockout_series(cfg);
    });
    const auto grid = default_nu_grid();
    report("roc sweep x50 levels",
           time_both(
               [&](int w) {
                   const auto curve = roc_auc(labeled, grid, SmoothConfig{}, w);
                   return curve.points;
               },
               static_cast<std::vector<std::pair<double, double>>*>(nullptr)));

    std::size_t regular = 0;
    for (const auto& label : labels)
        if (label.rfind("regular", 0) == 0) ++regular;
    std::printf("sanity: %zu of %zu series classified regular\n", regular, labels.size());
    return 0;
}
