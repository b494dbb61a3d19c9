// Command line front end: train, predict, bound, sweep, figure2, validate-region.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "locsvm/errors.hpp"
#include "locsvm/harness.hpp"

using namespace locsvm;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string format = "csv";
};

json load_json(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
}

ScenarioConfig load_scenario(const Common& c, const ScenarioConfig& defaults = {}) {
    auto cfg = scenario_from_json(load_json(c.config), defaults);
    if (c.seed) cfg.seed = *c.seed;
    return cfg;
}

Dataset scenario_data(const ScenarioConfig& cfg) {
    return cfg.data_model == DataModel::custom_file ? read_csv_dataset(cfg.data_path)
                                                    : generate_sign_data(cfg.seed, cfg.n, cfg.noise_sd);
}

fs::path out_file(const Common& c, const std::string& name) {
    fs::create_directories(c.out);
    return fs::path(c.out) / name;
}

void write_rows(const Common& c, const std::vector<ResultRow>& rows) {
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json j = {{"scenario_id", r.scenario_id}, {"empirical", r.empirical}, {"bound", r.bound},
                      {"slack", r.slack},             {"terms", r.terms},         {"satisfied", r.satisfied},
                      {"runtime_ms", r.runtime_ms}};
            if (!r.error.empty()) j["error"] = r.error;
            arr.push_back(j);
        }
        std::ofstream(out_file(c, "results.json")) << arr.dump(2) << "\n";
    } else {
        std::ofstream out(out_file(c, "results.csv"));
        out << results_csv_header() << "\n";
        for (const auto& r : rows) out << results_csv_row(r) << "\n";
    }
    for (const auto& r : rows)
        if (!r.error.empty()) std::cerr << r.scenario_id << ": " << r.error << "\n";
}

int summarize(const std::vector<ResultRow>& rows) {
    std::size_t bad = 0;
    for (const auto& r : rows) bad += r.satisfied ? 0 : 1;
    std::cout << rows.size() << " rows, " << bad << " unsatisfied\n";
    return bad == 0 ? 0 : 1;
}

int cmd_train(const Common& c) {
    const auto cfg = load_scenario(c);
    const auto data = scenario_data(cfg);
    TrainOptions opts;
    opts.tol = cfg.tol;
    json model;
    if (cfg.regions) {
        const auto m = train_localized(data, *cfg.regions, WeightScheme::equal_split, {cfg.lambda}, {cfg.kernel},
                                       cfg.loss, opts);
        model = {{"type", "localized"}, {"model", to_json(m)}};
    } else {
        const auto m = train(data, cfg.loss, cfg.kernel, cfg.lambda, opts);
        model = {{"type", "svm"}, {"model", to_json(m)}};
    }
    std::ofstream(out_file(c, "model.json")) << model.dump(2) << "\n";
    std::cout << "wrote " << out_file(c, "model.json").string() << "\n";
    return 0;
}

int cmd_predict(const Common& c, const std::string& model_path, const std::string& input, std::size_t resolution,
                double lo, double hi) {
    const auto j = load_json(model_path);
    Predictor f;
    try {
        if (j.at("type") == "localized") {
            auto m = std::make_shared<LocalizedModel>(localized_from_json(j.at("model")));
            f = [m](const Point& x) { return m->predict(x); };
        } else {
            auto m = std::make_shared<TrainedSvm>(svm_from_json(j.at("model")));
            f = [m](const Point& x) { return m->predict(x); };
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed model file: ") + e.what());
    }
    std::vector<Point> xs;
    if (!input.empty()) {
        xs = read_csv_dataset(input).xs();
    } else {
        if (resolution < 2) throw ConfigError("grid resolution must be >= 2");
        for (std::size_t i = 0; i < resolution; ++i)
            xs.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1)});
    }
    std::vector<double> ys;
    for (const auto& x : xs) ys.push_back(f(x));
    if (c.format == "json") {
        std::ofstream(out_file(c, "predictions.json")) << json{{"x", xs}, {"prediction", ys}}.dump(2) << "\n";
    } else {
        std::ofstream out(out_file(c, "predictions.csv"));
        out << "x,prediction\n";
        char buf[64];
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (double v : xs[i]) {
                std::snprintf(buf, sizeof buf, "%.17g,", v);
                out << buf;
            }
            std::snprintf(buf, sizeof buf, "%.17g\n", ys[i]);
            out << buf;
        }
    }
    return 0;
}

int cmd_bound(const Common& c) {
    const auto rows = run_scenario(load_scenario(c));
    write_rows(c, rows);
    return summarize(rows);
}

int cmd_sweep(const Common& c) {
    auto cfg = sweep_from_json(load_json(c.config));
    if (c.seed) cfg.seed = *c.seed;
    const auto rows = run_sweep(sweep_scenarios(cfg), cfg.threads);
    write_rows(c, rows);
    return summarize(rows);
}

int cmd_figure2(const Common& c) {
    const auto cfg = load_scenario(c, figure2_defaults());
    const auto r = figure2(cfg);
    write_figure2(r, c.out);
    const bool ok = r.l1_distance <= r.bound.total + r.slack;
    std::printf("sup distance %.6f, L1 distance %.6f, bound %.6f (%s)\n", r.sup_distance, r.l1_distance,
                r.bound.total, ok ? "satisfied" : "violated");
    return ok ? 0 : 1;
}

int cmd_validate(const Common& c) {
    const auto cfg = load_scenario(c);
    if (!cfg.regions) throw ConfigError("config needs a regionalization");
    const auto data = scenario_data(cfg);
    std::vector<Point> grid;
    for (std::size_t i = 0; i < cfg.grid_resolution; ++i)
        grid.push_back({cfg.grid_lo + (cfg.grid_hi - cfg.grid_lo) * static_cast<double>(i) /
                                          static_cast<double>(cfg.grid_resolution - 1)});
    const auto report = validate(*cfg.regions, data, data.dim() == 1 ? grid : std::vector<Point>{});
    if (c.format == "json") {
        std::cout << to_json(report).dump(2) << "\n";
    } else {
        std::cout << "valid,cover_ok,mass_ok,bad_data_points,bad_grid_points,zero_mass_regions\n"
                  << report.valid() << "," << report.cover_ok() << "," << report.mass_ok() << ","
                  << report.bad_data_points.size() << "," << report.bad_grid_points.size() << ","
                  << report.zero_mass_regions.size() << "\n";
    }
    return report.valid() ? 0 : 1;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "JSON config file");
    app->add_option("--seed", c.seed, "Override the config seed");
    app->add_option("--out", c.out, "Output directory");
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Localized SVM stability toolkit"};
    app.require_subcommand(1);
    Common common;
    std::string model_path, input;
    std::size_t resolution = 2001;
    double lo = -1.0, hi = 1.0;

    auto* train_cmd = app.add_subcommand("train", "Train a global or localized SVM from a config");
    auto* predict_cmd = app.add_subcommand("predict", "Evaluate a saved model");
    auto* bound_cmd = app.add_subcommand("bound", "Certify the stability bounds for one scenario");
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a randomized bound-certification sweep");
    auto* fig_cmd = app.add_subcommand("figure2", "Compare localized SVMs on two nearby borders");
    auto* validate_cmd = app.add_subcommand("validate-region", "Check a regionalization against data");
    for (auto* sub : {train_cmd, predict_cmd, bound_cmd, sweep_cmd, fig_cmd, validate_cmd}) add_common(sub, common);
    predict_cmd->add_option("--model", model_path, "model.json written by train")->required();
    predict_cmd->add_option("--input", input, "CSV of inputs (last column ignored as label)");
    predict_cmd->add_option("--resolution", resolution, "Grid size when no input is given");
    predict_cmd->add_option("--lo", lo);
    predict_cmd->add_option("--hi", hi);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*train_cmd) return cmd_train(common);
        if (*predict_cmd) return cmd_predict(common, model_path, input, resolution, lo, hi);
        if (*bound_cmd) return cmd_bound(common);
        if (*sweep_cmd) return cmd_sweep(common);
        if (*fig_cmd) return cmd_figure2(common);
        if (*validate_cmd) return cmd_validate(common);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
