// aid: demand classification, stockout detection and the downstream
// forecasting/inventory experiments, driven from CSV datasets or the
// built-in generators.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aid/batch.hpp"
#include "aid/classify.hpp"
#include "aid/dataset.hpp"
#include "aid/features.hpp"
#include "aid/inventory.hpp"
#include "aid/metrics.hpp"
#include "aid/pipeline.hpp"
#include "aid/rng.hpp"
#include "aid/simgen.hpp"
#include "aid/stockout.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", v);
    return buffer;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

struct CommonOptions {
    std::string input;
    std::string out_dir = "out";
    std::string config_path;
    double nu = 0.999;
    std::string smoother = "supsmu";
    double lowess_span = 2.0 / 3.0;
    double supsmu_bass = 0.0;
    std::size_t horizon = 2;
    std::uint64_t seed = 1;
    int workers = 0;
    std::size_t fourier_order = 2;
    std::vector<double> service_levels = {0.90, 0.95, 0.99};
    int frequency = 52;
    bool promo = false;
    double promo_rate = 0.1;
    double promo_multiplier = 2.0;

    aid::SmoothConfig smooth() const {
        aid::SmoothConfig cfg;
        cfg.method = smoother == "lowess" ? aid::SmoothMethod::lowess
                                          : aid::SmoothMethod::supsmu;
        cfg.lowess_span = lowess_span;
        cfg.supsmu_bass = supsmu_bass;
        return cfg;
    }
    aid::PanelOptions panel_options() const {
        aid::PanelOptions options;
        options.horizon = horizon;
        options.fourier_order = fourier_order;
        options.nu = nu;
        options.smooth = smooth();
        options.workers = workers;
        return options;
    }
};

// Flat key=value config file; '#' starts a comment. Command-line flags win.
std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> values;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) values[key] = value;
    }
    return values;
}

void apply_config(const std::map<std::string, std::string>& cfg, CLI::App* cmd,
                  CommonOptions& opts) {
    const auto given = [&](const char* flag) {
        const CLI::Option* option = cmd->get_option_no_throw(flag);
        return option != nullptr && option->count() > 0;
    };
    const auto fetch = [&](const char* key) -> const std::string* {
        const auto it = cfg.find(key);
        return it == cfg.end() ? nullptr : &it->second;
    };
    if (const auto* v = fetch("nu"); v && !given("--nu")) opts.nu = std::stod(*v);
    if (const auto* v = fetch("smoother"); v && !given("--smoother")) opts.smoother = *v;
    if (const auto* v = fetch("lowess_span"); v && !given("--lowess-span"))
        opts.lowess_span = std::stod(*v);
    if (const auto* v = fetch("supsmu_bass"); v && !given("--supsmu-bass"))
        opts.supsmu_bass = std::stod(*v);
    if (const auto* v = fetch("horizon"); v && !given("--horizon"))
        opts.horizon = std::stoul(*v);
    if (const auto* v = fetch("seed"); v && !given("--seed")) opts.seed = std::stoull(*v);
    if (const auto* v = fetch("workers"); v && !given("--workers"))
        opts.workers = std::stoi(*v);
    if (const auto* v = fetch("fourier_order"); v && !given("--fourier-order"))
        opts.fourier_order = std::stoul(*v);
    if (const auto* v = fetch("frequency"); v && !given("--frequency"))
        opts.frequency = std::stoi(*v);
    if (const auto* v = fetch("promo_rate"); v && !given("--promo-rate"))
        opts.promo_rate = std::stod(*v);
    if (const auto* v = fetch("promo_multiplier"); v && !given("--promo-multiplier"))
        opts.promo_multiplier = std::stod(*v);
    if (const auto* v = fetch("service_levels"); v && !given("--service-levels")) {
        opts.service_levels.clear();
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) opts.service_levels.push_back(std::stod(item));
    }
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool needs_input) {
    if (needs_input)
        cmd->add_option("--input", opts.input, "input dataset CSV")->required();
    cmd->add_option("--out-dir", opts.out_dir, "output directory");
    cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--nu", opts.nu, "stockout detection level (1 disables)");
    cmd->add_option("--smoother", opts.smoother, "supsmu or lowess")
        ->check(CLI::IsMember({"supsmu", "lowess"}));
    cmd->add_option("--lowess-span", opts.lowess_span, "lowess span in (0,1]");
    cmd->add_option("--supsmu-bass", opts.supsmu_bass, "bass enhancement in [0,10]");
    cmd->add_option("--horizon", opts.horizon, "holdout length per series");
    cmd->add_option("--seed", opts.seed, "base RNG seed");
    cmd->add_option("--workers", opts.workers, "worker threads (0 = all)");
    cmd->add_option("--fourier-order", opts.fourier_order, "seasonal sine/cosine pairs");
    cmd->add_option("--service-levels", opts.service_levels, "inventory target levels")
        ->delimiter(',');
    cmd->add_option("--frequency", opts.frequency, "periods per seasonal cycle");
    cmd->add_flag("--promo", opts.promo, "also run the promotion-contaminated variant");
    cmd->add_option("--promo-rate", opts.promo_rate, "share of non-zero values promoted");
    cmd->add_option("--promo-multiplier", opts.promo_multiplier, "promotion multiplier");
}

constexpr const char* kEngines[] = {"smoothed_series", "pooled_regression"};
constexpr aid::Engine kEngineValues[] = {aid::Engine::smoothed_series,
                                         aid::Engine::pooled_regression};
constexpr const char* kApproaches[] = {"conventional", "full", "mixture",
                                       "category_partial", "category_full"};
constexpr aid::Approach kApproachValues[] = {
    aid::Approach::conventional, aid::Approach::full, aid::Approach::mixture,
    aid::Approach::category_partial, aid::Approach::category_full};

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

int cmd_classify(const CommonOptions& opts) {
    const aid::Dataset dataset = aid::parse_dataset_csv(opts.input, opts.frequency);
    const std::size_t n = dataset.records.size();

    struct Row {
        bool ok = false;
        std::string error;
        aid::DemandClass klass;
        bool sbc_ok = false;
        aid::SBCClass sbc;
    };
    std::vector<Row> rows(n);
    aid::parallel_for(n, opts.workers, [&](std::size_t i) {
        const auto& series = dataset.records[i].series;
        try {
            rows[i].klass = aid::classify(series, opts.nu, opts.smooth());
            rows[i].ok = true;
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
        try {
            rows[i].sbc = aid::sbc_classify(series);
            rows[i].sbc_ok = true;
        } catch (const std::exception&) {
        }
    });

    json report = json::array();
    std::size_t summary[2][3] = {{0, 0, 0}, {0, 0, 0}};
    std::string sbc_csv = "# schema: aid-sbc v1\n";
    sbc_csv += "series_id,adi,cv2,sbc_quadrant,aid_top,aid_valueness\n";
    std::size_t failures = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& id = dataset.records[i].series.id;
        json entry;
        entry["id"] = id;
        if (rows[i].ok) {
            const auto& k = rows[i].klass;
            entry["top"] = aid::to_string(k.top);
            entry["valueness"] = aid::to_string(k.valueness);
            entry["binary_special"] = k.binary_special;
            entry["values_integer"] = k.values_integer;
            json stockouts;
            stockouts["level"] = k.stockouts.level;
            stockouts["flagged_observations"] = k.stockouts.flag_count();
            stockouts["flagged_intervals"] = k.stockouts.flagged_intervals.size();
            stockouts["leading"] = k.stockouts.leading_flag;
            stockouts["trailing"] = k.stockouts.trailing_flag;
            stockouts["insufficient_data"] = k.stockouts.insufficient_data;
            entry["stockouts"] = stockouts;
            json evidence = json::array();
            for (const auto& m : k.evidence) {
                json fit;
                fit["model"] = aid::to_string(m.kind);
                fit["loglik"] = m.loglik;
                fit["aic"] = m.aic;
                fit["n_params"] = m.n_params;
                fit["converged"] = m.converged;
                if (!m.note.empty()) fit["note"] = m.note;
                evidence.push_back(fit);
            }
            entry["evidence"] = evidence;
            const int r = k.top == aid::TopClass::regular
                              ? 0
                              : (k.top == aid::TopClass::smooth_intermittent ? 1 : 2);
            ++summary[k.valueness == aid::Valueness::count ? 0 : 1][r];
        } else {
            entry["error"] = rows[i].error;
            ++failures;
        }
        if (rows[i].sbc_ok) {
            entry["sbc"] = {{"adi", rows[i].sbc.adi},
                            {"cv2", rows[i].sbc.cv2},
                            {"quadrant", aid::to_string(rows[i].sbc.quadrant)}};
            sbc_csv += id + ',' + fmt(rows[i].sbc.adi) + ',' + fmt(rows[i].sbc.cv2) + ',' +
                       aid::to_string(rows[i].sbc.quadrant) + ',' +
                       (rows[i].ok ? aid::to_string(rows[i].klass.top) : "error") + ',' +
                       (rows[i].ok ? aid::to_string(rows[i].klass.valueness) : "error") +
                       '\n';
        }
        report.push_back(entry);
    }

    std::string summary_csv = "# schema: aid-classification-summary v1\n";
    summary_csv += "valueness,regular,smooth_intermittent,lumpy_intermittent\n";
    summary_csv += std::string("count,") + std::to_string(summary[0][0]) + ',' +
                   std::to_string(summary[0][1]) + ',' + std::to_string(summary[0][2]) +
                   '\n';
    summary_csv += std::string("fractional,") + std::to_string(summary[1][0]) + ',' +
                   std::to_string(summary[1][1]) + ',' + std::to_string(summary[1][2]) +
                   '\n';

    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir + "/classification.json", report.dump(2) + "\n");
    write_file(opts.out_dir + "/classification_summary.csv", summary_csv);
    write_file(opts.out_dir + "/sbc_aid.csv", sbc_csv);
    std::cout << "classified " << (n - failures) << "/" << n << " series (" << failures
              << " failed); reports in " << opts.out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct ScenarioSetting {
    std::string label;
    aid::ScenarioConfig cfg;
};

std::vector<ScenarioSetting> scenario_settings(int scenario) {
    std::vector<ScenarioSetting> settings;
    const auto add = [&](const std::string& label, std::size_t n, double p,
                         std::size_t count, std::size_t len) {
        aid::ScenarioConfig cfg;
        cfg.n = n;
        cfg.p_occ = p;
        cfg.n_stockouts = count;
        cfg.stockout_len = len;
        settings.push_back({label, cfg});
    };
    switch (scenario) {
        case 1:
            for (const std::size_t len : {3, 5, 7, 10})
                add("len=" + std::to_string(len), 100, 0.8, 1, len);
            break;
        case 2:
            for (const std::size_t count : {1, 3, 5, 7, 10})
                add("count=" + std::to_string(count), 100, 0.8, count, 5);
            break;
        case 3:
            for (const double p : {0.1, 0.3, 0.5, 0.7, 0.9})
                add("p=" + fmt(p), 100, p, 5, 5);
            break;
        case 4:
            for (const std::size_t n : {30, 100, 400, 1000})
                add("n=" + std::to_string(n), n, 0.8, 5, 5);
            break;
        default:
            throw std::runtime_error("scenario must be 1..4");
    }
    return settings;
}

std::vector<aid::LabeledSeries> replicate_scenario(const aid::ScenarioConfig& base,
                                                   std::size_t replications,
                                                   std::uint64_t seed, int workers) {
    std::vector<aid::LabeledSeries> labeled(replications);
    aid::parallel_for(replications, workers, [&](std::size_t r) {
        aid::ScenarioConfig cfg = base;
        cfg.seed = aid::splitmix64(seed ^ (r * 0x9e3779b97f4a7c15ULL));
        labeled[r] = aid::gen_stockout_series(cfg);
    });
    return labeled;
}

int cmd_simulate(const CommonOptions& opts, const std::string& mode, int scenario,
                 std::size_t replications, const std::vector<std::size_t>& n_list) {
    std::filesystem::create_directories(opts.out_dir);

    if (mode == "scenario") {
        const auto settings = scenario_settings(scenario);
        const auto grid = aid::default_nu_grid();
        std::string roc_csv = "# schema: aid-roc-points v1\n";
        roc_csv += "scenario,setting,fpr,tpr\n";
        std::string auc_csv = "# schema: aid-auc v1\n";
        auc_csv += "scenario,setting,auc\n";
        for (const auto& setting : settings) {
            const auto labeled =
                replicate_scenario(setting.cfg, replications, opts.seed, opts.workers);
            const auto curve = aid::roc_auc(labeled, grid, opts.smooth(), opts.workers);
            for (const auto& [fpr, tpr] : curve.points)
                roc_csv += std::to_string(scenario) + ',' + setting.label + ',' +
                           fmt(fpr) + ',' + fmt(tpr) + '\n';
            auc_csv += std::to_string(scenario) + ',' + setting.label + ',' +
                       fmt(curve.auc) + '\n';
            std::cout << "scenario " << scenario << " " << setting.label
                      << " auc=" << fmt(curve.auc) << "\n";
        }
        write_file(opts.out_dir + "/roc_points.csv", roc_csv);
        write_file(opts.out_dir + "/auc.csv", auc_csv);
        return 0;
    }

    if (mode != "dgp") throw std::runtime_error("mode must be 'scenario' or 'dgp'");

    // Demand-identification accuracy over the six generators.
    const aid::ClassLabel expected[6] = {
        {aid::TopClass::regular, aid::Valueness::fractional},
        {aid::TopClass::smooth_intermittent, aid::Valueness::fractional},
        {aid::TopClass::lumpy_intermittent, aid::Valueness::fractional},
        {aid::TopClass::regular, aid::Valueness::count},
        {aid::TopClass::smooth_intermittent, aid::Valueness::count},
        {aid::TopClass::lumpy_intermittent, aid::Valueness::count},
    };
    const auto run_table = [&](bool with_promo) {
        std::string csv = "# schema: aid-dgp-accuracy v1\n";
        csv += "dgp,n,replications,rate\n";
        for (int kind = 1; kind <= 6; ++kind) {
            for (const std::size_t n : n_list) {
                std::vector<int> hits(replications, 0);
                aid::parallel_for(replications, opts.workers, [&](std::size_t r) {
                    const std::uint64_t seed = aid::splitmix64(
                        opts.seed ^ (kind * 1000003ULL) ^ (n * 7919ULL) ^
                        (r * 0x9e3779b97f4a7c15ULL));
                    aid::DemandSeries s = aid::gen_dgp(kind, n, seed);
                    if (with_promo)
                        s = aid::inject_promotions(s, opts.promo_rate,
                                                   opts.promo_multiplier, seed ^ 0xfeed);
                    try {
                        const auto k = aid::classify(s, opts.nu, opts.smooth());
                        hits[r] = k.top == expected[kind - 1].top &&
                                  k.valueness == expected[kind - 1].valueness;
                    } catch (const std::exception&) {
                    }
                });
                double rate = 0.0;
                for (const int h : hits) rate += h;
                rate /= static_cast<double>(replications);
                csv += std::to_string(kind) + ',' + std::to_string(n) + ',' +
                       std::to_string(replications) + ',' + fmt(rate) + '\n';
                std::cout << "dgp " << kind << (with_promo ? " (promo)" : "")
                          << " n=" << n << " rate=" << fmt(rate) << "\n";
            }
        }
        return csv;
    };
    write_file(opts.out_dir + "/accuracy.csv", run_table(false));
    if (opts.promo) write_file(opts.out_dir + "/accuracy_promo.csv", run_table(true));
    return 0;
}

// ---------------------------------------------------------------------------
// forecast / inventory
// ---------------------------------------------------------------------------

std::vector<std::pair<aid::Engine, aid::Approach>> select_runs(
    const std::vector<std::string>& engines, const std::vector<std::string>& approaches) {
    std::vector<std::pair<aid::Engine, aid::Approach>> runs;
    for (std::size_t e = 0; e < 2; ++e) {
        if (!engines.empty() &&
            std::find(engines.begin(), engines.end(), kEngines[e]) == engines.end())
            continue;
        for (std::size_t a = 0; a < 5; ++a) {
            if (!approaches.empty() && std::find(approaches.begin(), approaches.end(),
                                                 kApproaches[a]) == approaches.end())
                continue;
            // The smoothed-series category variants coincide with the
            // mixture; skip them to keep the tables free of duplicates.
            if (kEngineValues[e] == aid::Engine::smoothed_series &&
                (kApproachValues[a] == aid::Approach::category_partial ||
                 kApproachValues[a] == aid::Approach::category_full))
                continue;
            runs.emplace_back(kEngineValues[e], kApproachValues[a]);
        }
    }
    if (runs.empty()) throw std::runtime_error("no engine/approach combination selected");
    return runs;
}

std::string skipped_csv(const aid::ForecastPanel& panel) {
    std::string csv = "# schema: aid-skipped v1\n";
    csv += "series_id,reason\n";
    for (const auto& [id, reason] : panel.skipped) csv += id + ',' + reason + '\n';
    return csv;
}

int cmd_forecast(const CommonOptions& opts, const std::vector<std::string>& engines,
                 const std::vector<std::string>& approaches) {
    const aid::Dataset dataset = aid::parse_dataset_csv(opts.input, opts.frequency);
    const aid::ForecastPanel panel =
        aid::build_forecast_panel(dataset, opts.panel_options());
    if (panel.features.empty()) throw std::runtime_error("no usable series in the panel");

    std::string summary_csv = "# schema: aid-rmsse-summary v1\n";
    summary_csv += "engine,approach,min,q1,median,mean,q3,max,used,dropped\n";
    std::string forecast_csv = "# schema: aid-forecasts v1\n";
    forecast_csv += "series_id,engine,approach,step,forecast\n";
    for (const auto& [engine, approach] : select_runs(engines, approaches)) {
        const auto forecasts = aid::run_approach(approach, engine, panel.features);
        const auto summary = aid::summarize_rmsse(panel, forecasts);
        summary_csv += std::string(aid::to_string(engine)) + ',' +
                       aid::to_string(approach) + ',' + fmt(summary.min) + ',' +
                       fmt(summary.q1) + ',' + fmt(summary.median) + ',' +
                       fmt(summary.mean) + ',' + fmt(summary.q3) + ',' +
                       fmt(summary.max) + ',' + std::to_string(summary.used) + ',' +
                       std::to_string(summary.dropped) + '\n';
        for (std::size_t s = 0; s < panel.ids.size(); ++s)
            for (std::size_t h = 0; h < panel.horizon; ++h)
                forecast_csv += panel.ids[s] + ',' + aid::to_string(engine) + ',' +
                                aid::to_string(approach) + ',' + std::to_string(h + 1) +
                                ',' + fmt(forecasts.forecast[s][h]) + '\n';
        std::cout << aid::to_string(engine) << "/" << aid::to_string(approach)
                  << " median RMSSE " << fmt(summary.median) << " over " << summary.used
                  << " series\n";
    }

    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir + "/rmsse_summary.csv", summary_csv);
    write_file(opts.out_dir + "/forecasts.csv", forecast_csv);
    write_file(opts.out_dir + "/skipped.csv", skipped_csv(panel));
    return 0;
}

int cmd_inventory(const CommonOptions& opts, const std::vector<std::string>& engines,
                  const std::vector<std::string>& approaches) {
    const aid::Dataset dataset = aid::parse_dataset_csv(opts.input, opts.frequency);
    const aid::ForecastPanel panel =
        aid::build_forecast_panel(dataset, opts.panel_options());
    if (panel.features.empty()) throw std::runtime_error("no usable series in the panel");

    aid::InventoryConfig config;
    config.target_levels = opts.service_levels;
    config.origins = panel.horizon;

    std::string csv = "# schema: aid-inventory v1\n";
    csv += "engine,approach,origin,target_sl,achieved_sl,scaled_lost_sales,"
           "scaled_on_hand,sl_deviation\n";
    for (const auto& [engine, approach] : select_runs(engines, approaches)) {
        const auto forecasts = aid::run_approach(approach, engine, panel.features);
        const auto tradeoffs = aid::run_inventory_pipeline(panel, forecasts, config);
        for (const auto& tradeoff : tradeoffs) {
            for (std::size_t o = 0; o < tradeoff.per_origin.size(); ++o) {
                const auto& m = tradeoff.per_origin[o];
                csv += std::string(aid::to_string(engine)) + ',' +
                       aid::to_string(approach) + ',' + std::to_string(o + 1) + ',' +
                       fmt(tradeoff.target) + ',' + fmt(m.achieved_sl) + ',' +
                       fmt(m.scaled_lost_sales) + ',' + fmt(m.scaled_on_hand) + ',' +
                       fmt(m.sl_deviation) + '\n';
            }
            std::cout << aid::to_string(engine) << "/" << aid::to_string(approach)
                      << " target " << fmt(tradeoff.target) << " achieved "
                      << fmt(tradeoff.overall.achieved_sl) << "\n";
        }
    }

    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir + "/inventory.csv", csv);
    write_file(opts.out_dir + "/skipped.csv", skipped_csv(panel));
    return 0;
}

// ---------------------------------------------------------------------------
// generate / features
// ---------------------------------------------------------------------------

int cmd_generate(const CommonOptions& opts, const std::string& mode, int dgp,
                 std::size_t per_dgp, std::size_t n, double p_occ, std::size_t count,
                 std::size_t len, std::size_t replications, const std::string& out_path) {
    if (mode == "dgp") {
        aid::Dataset dataset;
        dataset.frequency = opts.frequency;
        const std::vector<int> kinds =
            dgp == 0 ? std::vector<int>{1, 2, 3, 4, 5, 6} : std::vector<int>{dgp};
        for (const int kind : kinds) {
            for (std::size_t i = 0; i < per_dgp; ++i) {
                aid::SeriesRecord record;
                record.series = aid::gen_dgp(
                    kind, n,
                    aid::splitmix64(opts.seed ^ (kind * 1000003ULL) ^
                                    (i * 0x9e3779b97f4a7c15ULL)));
                record.series.id =
                    std::string(aid::dgp_name(kind)) + "_" + std::to_string(i + 1);
                record.series.frequency = opts.frequency;
                if (opts.promo)
                    record.series = aid::inject_promotions(
                        record.series, opts.promo_rate, opts.promo_multiplier,
                        opts.seed ^ (kind * 31ULL + i));
                dataset.records.push_back(std::move(record));
            }
        }
        std::sort(dataset.records.begin(), dataset.records.end(),
                  [](const auto& a, const auto& b) { return a.series.id < b.series.id; });
        aid::write_dataset_csv(out_path, dataset);
        std::cout << "wrote " << dataset.records.size() << " series to " << out_path
                  << "\n";
        return 0;
    }
    if (mode != "scenario") throw std::runtime_error("mode must be 'dgp' or 'scenario'");

    aid::ScenarioConfig cfg;
    cfg.n = n;
    cfg.p_occ = p_occ;
    cfg.n_stockouts = count;
    cfg.stockout_len = len;
    std::string csv = "# schema: aid-labeled-dataset v1\n";
    csv += "series_id,period,value,stockout_truth\n";
    for (std::size_t r = 0; r < replications; ++r) {
        cfg.seed = aid::splitmix64(opts.seed ^ (r * 0x9e3779b97f4a7c15ULL));
        const auto labeled = aid::gen_stockout_series(cfg);
        const std::string id = "scenario_" + std::to_string(r + 1);
        for (std::size_t t = 0; t < labeled.series.values.size(); ++t)
            csv += id + ',' + std::to_string(t + 1) + ',' +
                   fmt(labeled.series.values[t]) + ',' +
                   std::to_string(labeled.truth_flags[t]) + '\n';
    }
    write_file(out_path, csv);
    std::cout << "wrote " << replications << " labeled series to " << out_path << "\n";
    return 0;
}

int cmd_features(const CommonOptions& opts) {
    const aid::Dataset dataset = aid::parse_dataset_csv(opts.input, opts.frequency);
    const aid::ForecastPanel panel =
        aid::build_forecast_panel(dataset, opts.panel_options());
    if (panel.features.empty()) throw std::runtime_error("no usable series in the panel");

    std::string csv = "# schema: aid-features v1\n";
    csv += "series_id,period,segment,target,smooth_sales,smooth_demand,smooth_sizes,"
           "probability,stockout_dummy,category_partial,category_full";
    const auto& first = panel.features.front();
    for (const auto& name : first.fourier_names) csv += ',' + name;
    for (const auto& name : first.exog_names) csv += ',' + name;
    csv += '\n';
    for (std::size_t s = 0; s < panel.features.size(); ++s) {
        const auto& f = panel.features[s];
        for (std::size_t t = 0; t < f.rows(); ++t) {
            const bool insample = t < f.n_insample;
            csv += f.id + ',' + std::to_string(t + 1) + ',' +
                   (insample ? "insample" : "holdout") + ',' +
                   (insample ? fmt(f.target[t]) : "") + ',' + fmt(f.smooth_sales[t]) +
                   ',' + fmt(f.smooth_demand[t]) + ',' + fmt(f.smooth_sizes[t]) + ',' +
                   fmt(f.probability[t]) + ',' + std::to_string(f.stockout_dummy[t]) +
                   ',' + std::to_string(f.category_partial) + ',' +
                   std::to_string(f.category_full);
            for (const auto& column : f.fourier) csv += ',' + fmt(column[t]);
            for (const auto& column : f.exog) csv += ',' + fmt(column[t]);
            csv += '\n';
        }
    }
    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir + "/features.csv", csv);
    std::cout << "wrote features for " << panel.features.size() << " series\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"demand classification and intermittent-demand toolkit"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto* classify_cmd =
        app.add_subcommand("classify", "detect stockouts and classify demand");
    add_common_flags(classify_cmd, opts, true);

    auto* simulate_cmd = app.add_subcommand("simulate", "replication experiments");
    add_common_flags(simulate_cmd, opts, false);
    std::string sim_mode = "scenario";
    int scenario = 3;
    std::size_t replications = 500;
    std::vector<std::size_t> n_list = {30, 60, 100, 400, 1000};
    simulate_cmd->add_option("--mode", sim_mode, "scenario or dgp")
        ->check(CLI::IsMember({"scenario", "dgp"}));
    simulate_cmd->add_option("--scenario", scenario, "scenario number 1..4");
    simulate_cmd->add_option("--replications", replications, "series per setting");
    simulate_cmd->add_option("--n-list", n_list, "sample sizes for dgp mode")
        ->delimiter(',');

    auto* forecast_cmd = app.add_subcommand("forecast", "run forecasting approaches");
    add_common_flags(forecast_cmd, opts, true);
    std::vector<std::string> engines, approaches;
    forecast_cmd->add_option("--engines", engines, "subset of engines")
        ->delimiter(',')
        ->check(CLI::IsMember({kEngines[0], kEngines[1]}));
    forecast_cmd->add_option("--approaches", approaches, "subset of approaches")
        ->delimiter(',')
        ->check(CLI::IsMember({kApproaches[0], kApproaches[1], kApproaches[2],
                               kApproaches[3], kApproaches[4]}));

    auto* inventory_cmd = app.add_subcommand("inventory", "order-up-to simulation");
    add_common_flags(inventory_cmd, opts, true);
    inventory_cmd->add_option("--engines", engines, "subset of engines")
        ->delimiter(',')
        ->check(CLI::IsMember({kEngines[0], kEngines[1]}));
    inventory_cmd->add_option("--approaches", approaches, "subset of approaches")
        ->delimiter(',')
        ->check(CLI::IsMember({kApproaches[0], kApproaches[1], kApproaches[2],
                               kApproaches[3], kApproaches[4]}));

    auto* generate_cmd = app.add_subcommand("generate", "write synthetic datasets");
    add_common_flags(generate_cmd, opts, false);
    std::string gen_mode = "dgp", gen_out = "dataset.csv";
    int gen_dgp_kind = 0;
    std::size_t per_dgp = 10, gen_n = 120, gen_count = 5, gen_len = 5;
    double gen_p = 0.8;
    std::size_t gen_reps = 100;
    generate_cmd->add_option("--mode", gen_mode, "dgp or scenario")
        ->check(CLI::IsMember({"dgp", "scenario"}));
    generate_cmd->add_option("--dgp", gen_dgp_kind, "generator kind 1..6 (0 = all)");
    generate_cmd->add_option("--per-dgp", per_dgp, "series per generator");
    generate_cmd->add_option("--n", gen_n, "observations per series");
    generate_cmd->add_option("--p-occ", gen_p, "occurrence probability");
    generate_cmd->add_option("--count", gen_count, "stockouts per series");
    generate_cmd->add_option("--len", gen_len, "stockout length");
    generate_cmd->add_option("--replications", gen_reps, "series in scenario mode");
    generate_cmd->add_option("--out", gen_out, "output CSV path");

    auto* features_cmd = app.add_subcommand("features", "export the feature matrix");
    add_common_flags(features_cmd, opts, true);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    try {
        if (!opts.config_path.empty()) {
            const auto cfg = load_config(opts.config_path);
            apply_config(cfg, active, opts);
            // Scenario definitions can live in the config file too; explicit
            // flags still win.
            const auto given = [&](const char* flag) {
                const CLI::Option* option = active->get_option_no_throw(flag);
                return option != nullptr && option->count() > 0;
            };
            const auto fetch = [&](const char* key) -> const std::string* {
                const auto it = cfg.find(key);
                return it == cfg.end() ? nullptr : &it->second;
            };
            if (const auto* v = fetch("scenario_n"); v && !given("--n"))
                gen_n = std::stoul(*v);
            if (const auto* v = fetch("scenario_p_occ"); v && !given("--p-occ"))
                gen_p = std::stod(*v);
            if (const auto* v = fetch("scenario_stockouts"); v && !given("--count"))
                gen_count = std::stoul(*v);
            if (const auto* v = fetch("scenario_length"); v && !given("--len"))
                gen_len = std::stoul(*v);
            if (const auto* v = fetch("replications"); v && !given("--replications")) {
                replications = std::stoul(*v);
                gen_reps = replications;
            }
        }
        if (active == classify_cmd) return cmd_classify(opts);
        if (active == simulate_cmd)
            return cmd_simulate(opts, sim_mode, scenario, replications, n_list);
        if (active == forecast_cmd) return cmd_forecast(opts, engines, approaches);
        if (active == inventory_cmd) return cmd_inventory(opts, engines, approaches);
        if (active == generate_cmd)
            return cmd_generate(opts, gen_mode, gen_dgp_kind, per_dgp, gen_n, gen_p,
                                gen_count, gen_len, gen_reps, gen_out);
        if (active == features_cmd) return cmd_features(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
