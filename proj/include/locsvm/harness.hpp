#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locsvm/bounds.hpp"
#include "locsvm/dataset.hpp"
#include "locsvm/localized.hpp"
#include "locsvm/serialize.hpp"

namespace locsvm {

/// Seeded stream: std::mt19937_64 with fixed, hand-written conversions to
/// uniform and Gaussian variates, so draws are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller; two uniforms per draw, sine branch discarded.
    double normal();
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// X ~ U(-1, 1), Y = sign(X) + noise_sd * N(0, 1).
Dataset generate_sign_data(std::uint64_t seed, std::size_t n, double noise_sd);

/// Plain CSV, one "x_1,...,x_d,y" row per line. A non-numeric first line is a header.
Dataset read_csv_dataset(const std::string& path);

enum class DataModel { sign_model, custom_file };
enum class Perturbation { replace_points, shift_lambda, shift_bandwidth, shift_border };

std::string_view to_string(Perturbation p);
Perturbation perturbation_from_string(std::string_view name);

struct ScenarioConfig {
    std::string id = "scenario";
    std::uint64_t seed = 1;
    DataModel data_model = DataModel::sign_model;
    std::string data_path;
    std::size_t n = 100;
    double noise_sd = 0.7071067811865476;  // variance 0.5
    Perturbation perturbation = Perturbation::replace_points;
    /// Replaced fraction for replace_points, otherwise the shift delta.
    double amount = 0.0;
    LossSpec loss = LossSpec::pinball(0.5);
    KernelSpec kernel = KernelSpec::gaussian(1.0);
    double lambda = 0.1;
    /// Shared regionalization for the localized checks. Defaults to the
    /// overlapping cover {(-inf, 0.2), [-0.2, inf)}; unused for shift_border.
    std::optional<Regionalization> regions;
    /// Border of the first partition for shift_border; the second sits at border + amount.
    double border = 0.0;
    bool anchor_second = false;
    std::size_t grid_resolution = 2001;
    double grid_lo = -1.0;
    double grid_hi = 1.0;
    std::vector<double> p{1.0, 2.0};
    double tol = 1e-6;
};

ScenarioConfig scenario_from_json(const json& j, const ScenarioConfig& defaults = {});
json to_json(const ScenarioConfig& cfg);

struct ResultRow {
    std::string scenario_id;
    double empirical = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    std::map<std::string, double> terms;
    bool satisfied = false;
    double runtime_ms = 0.0;
    std::string error;
};

/// Trains both sides of the comparison and certifies each applicable bound.
/// One row per check: global_sup, global_lp<p>, localized_sup, localized_lp<p>
/// or, for border shifts, diff_region_l1. Errors become unsatisfied rows.
std::vector<ResultRow> run_scenario(const ScenarioConfig& cfg);

struct SweepConfig {
    std::uint64_t seed = 1;
    std::size_t scenarios_per_family = 100;
    std::vector<Perturbation> families{Perturbation::replace_points, Perturbation::shift_lambda,
                                       Perturbation::shift_bandwidth, Perturbation::shift_border};
    std::size_t threads = 0;  // 0: hardware concurrency
    ScenarioConfig base;
};

SweepConfig sweep_from_json(const json& j);

/// Deterministic randomized scenarios, id "<family>:<index>".
std::vector<ScenarioConfig> sweep_scenarios(const SweepConfig& cfg);

/// Runs every scenario, concurrently, and returns rows sorted by scenario id.
std::vector<ResultRow> run_sweep(const std::vector<ScenarioConfig>& scenarios, std::size_t threads = 0);

std::string results_csv_header();
std::string results_csv_row(const ResultRow& row);

struct Figure2Result {
    Dataset data;
    std::vector<double> grid;
    std::vector<double> f1, f2;
    double sup_distance = 0.0;
    double l1_distance = 0.0;
    double slack = 0.0;
    BoundReport bound;
    LocalizedModel model1, model2;
};

/// Defaults of the two-border comparison on the sign model.
ScenarioConfig figure2_defaults();

Figure2Result figure2(const ScenarioConfig& cfg);

/// Writes figure2_curves.csv, figure2_data.csv and figure2_bound.json into dir.
void write_figure2(const Figure2Result& r, const std::string& dir);

}  // namespace locsvm
