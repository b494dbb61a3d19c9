#include "locsvm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "locsvm/errors.hpp"

namespace locsvm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kKernelGrid = 401;
constexpr int kMaxRedraws = 100;

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

void draw_sign_point(Rng& rng, double noise_sd, std::vector<Point>& xs, std::vector<double>& ys) {
    const double x = rng.uniform(-1.0, 1.0);
    const double eps = noise_sd > 0.0 ? noise_sd * rng.normal() : 0.0;
    xs.push_back({x});
    ys.push_back(sign(x) + eps);
}

std::vector<Point> linspace(double lo, double hi, std::size_t n) {
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)});
    return out;
}

KernelSpec shift_gamma(const KernelSpec& k, double delta) {
    auto params = k.params();
    auto it = params.find("gamma");
    if (it == params.end()) throw ConfigError("shift_bandwidth needs a kernel with a gamma parameter");
    it->second += delta;
    return KernelSpec(k.family(), params);
}

Regionalization default_cover() {
    return Regionalization({Box({-kInf}, {0.2}), Box({-0.2}, {kInf})}, RegionMode::overlapping);
}

// Both sides of a comparison.
struct Setup {
    Dataset d1, d2;
    double lambda1 = 0.0, lambda2 = 0.0;
    KernelSpec k1 = KernelSpec::gaussian(1.0), k2 = KernelSpec::gaussian(1.0);
    Regionalization r1 = default_cover(), r2 = default_cover();
};

Dataset base_data(const ScenarioConfig& cfg, Rng& rng) {
    if (cfg.data_model == DataModel::custom_file) return read_csv_dataset(cfg.data_path);
    std::vector<Point> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < cfg.n; ++i) draw_sign_point(rng, cfg.noise_sd, xs, ys);
    return Dataset(std::move(xs), std::move(ys));
}

bool usable(const Setup& s, Perturbation p) {
    if (p == Perturbation::shift_border) {
        const auto st = intersect(s.r1, s.r2);
        for (const auto& piece : st.pieces)
            if (mass(s.d1.marginal(), piece) <= 0.0 || mass(s.d2.marginal(), piece) <= 0.0) return false;
        return true;
    }
    return validate(s.r1, s.d1, {}).valid() && validate(s.r1, s.d2, {}).valid();
}

Setup build_once(const ScenarioConfig& cfg, std::uint64_t attempt) {
    Rng rng(cfg.seed, attempt);
    Setup s;
    s.d1 = base_data(cfg, rng);
    s.d2 = s.d1;
    s.lambda1 = s.lambda2 = cfg.lambda;
    s.k1 = s.k2 = cfg.kernel;
    s.r1 = s.r2 = cfg.regions ? *cfg.regions : default_cover();
    switch (cfg.perturbation) {
        case Perturbation::replace_points: {
            if (cfg.data_model != DataModel::sign_model)
                throw ConfigError("replace_points needs the sign data model to draw fresh points");
            const auto m = static_cast<std::size_t>(std::ceil(cfg.amount * static_cast<double>(cfg.n)));
            std::vector<Point> xs = s.d1.xs();
            std::vector<double> ys = s.d1.ys();
            std::vector<Point> fx;
            std::vector<double> fy;
            for (std::size_t i = 0; i < m; ++i) draw_sign_point(rng, cfg.noise_sd, fx, fy);
            for (std::size_t i = 0; i < m; ++i) {
                xs[i] = fx[i];
                ys[i] = fy[i];
            }
            s.d2 = Dataset(std::move(xs), std::move(ys));
            break;
        }
        case Perturbation::shift_lambda: s.lambda2 = cfg.lambda + cfg.amount; break;
        case Perturbation::shift_bandwidth: s.k2 = shift_gamma(cfg.kernel, cfg.amount); break;
        case Perturbation::shift_border:
            s.r1 = Regionalization::intervals({cfg.border});
            s.r2 = Regionalization::intervals({cfg.border + cfg.amount});
            break;
    }
    return s;
}

// Redraws the data until every region (or intersection piece) has positive
// mass under both measures; the bounds are only defined in that case.
Setup build(const ScenarioConfig& cfg) {
    const int tries = cfg.data_model == DataModel::sign_model ? kMaxRedraws : 1;
    for (int attempt = 0; attempt < tries; ++attempt) {
        auto s = build_once(cfg, static_cast<std::uint64_t>(attempt));
        if (usable(s, cfg.perturbation)) return s;
    }
    throw RegionError("no draw gives every region positive mass");
}

std::string p_label(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

ResultRow make_row(const std::string& id, double empirical, const BoundReport& b, double slack) {
    ResultRow row;
    row.scenario_id = id;
    row.empirical = empirical;
    row.bound = b.total;
    row.slack = slack;
    row.terms = b.terms;
    row.satisfied = empirical <= b.total + slack;
    return row;
}

std::vector<ResultRow> scenario_rows(const ScenarioConfig& cfg) {
    const auto s = build(cfg);
    TrainOptions opts;
    opts.tol = cfg.tol;
    const double lip = cfg.loss.lipschitz();
    const double kappa = std::max(s.k1.sup_norm(), s.k2.sup_norm());
    const double tau = std::min(s.lambda1, s.lambda2);
    const double slack = 2.0 * cfg.tol * kappa * kappa / tau;
    const auto grid = linspace(cfg.grid_lo, cfg.grid_hi, cfg.grid_resolution);
    const auto q1 = s.d1.marginal();
    std::vector<ResultRow> rows;

    if (cfg.perturbation == Perturbation::shift_border) {
        const auto m1 = train_localized(s.d1, s.r1, WeightScheme::equal_split, {s.lambda1}, {s.k1}, cfg.loss, opts);
        const auto m2 = train_localized(s.d2, s.r2, WeightScheme::equal_split, {s.lambda2}, {s.k2}, cfg.loss, opts);
        const PartitionSide one{&s.d1, &s.r1, {s.lambda1}, {s.k1}};
        const PartitionSide two{&s.d2, &s.r2, {s.lambda2}, {s.k2}};
        const auto b = bound_diff_region_l1(one, two, cfg.loss, cfg.anchor_second);
        const auto anchor = cfg.anchor_second ? s.d2.marginal() : q1;
        const double emp = empirical_lp_diff([&](const Point& x) { return m1.predict(x); },
                                             [&](const Point& x) { return m2.predict(x); }, 1.0, anchor);
        rows.push_back(make_row(cfg.id + ":diff_region_l1", emp, b, slack));
        return rows;
    }

    const double tv = tv_distance(s.d1, s.d2);
    const double dl = std::abs(s.lambda1 - s.lambda2);
    const bool same_kernel = s.k1 == s.k2;
    const auto kgrid = linspace(cfg.grid_lo, cfg.grid_hi, kKernelGrid);

    const auto g1 = train(s.d1, cfg.loss, s.k1, s.lambda1, opts);
    const auto g2 = train(s.d2, cfg.loss, s.k2, s.lambda2, opts);
    const Predictor f1 = [&](const Point& x) { return g1.predict(x); };
    const Predictor f2 = [&](const Point& x) { return g2.predict(x); };
    const double ksup = same_kernel ? 0.0 : kernel_sup_diff(s.k1, s.k2, kgrid);
    rows.push_back(make_row(cfg.id + ":global_sup", empirical_sup_diff(f1, f2, grid),
                            bound_global_sup(lip, kappa, tau, tv, dl, ksup), slack));
    for (double p : cfg.p) {
        const double klp = same_kernel ? 0.0 : kernel_lp_diff(s.k1, s.k2, p, q1);
        rows.push_back(make_row(cfg.id + ":global_lp" + p_label(p), empirical_lp_diff(f1, f2, p, q1),
                                bound_global_lp(lip, kappa, tau, tv, dl, klp, p), slack));
    }

    const auto& r = s.r1;
    const auto l1 = train_localized(s.d1, r, WeightScheme::equal_split, {s.lambda1}, {s.k1}, cfg.loss, opts);
    const auto l2 = train_localized(s.d2, r, WeightScheme::equal_split, {s.lambda2}, {s.k2}, cfg.loss, opts);
    const Predictor h1 = [&](const Point& x) { return l1.predict(x); };
    const Predictor h2 = [&](const Point& x) { return l2.predict(x); };
    std::vector<RegionInputs> sup_inputs;
    std::vector<Dataset> local1;
    for (const auto& region : r.regions()) {
        local1.push_back(restrict(s.d1, region));
        std::vector<Point> inside;
        for (const auto& x : kgrid)
            if (region.contains(x)) inside.push_back(x);
        if (inside.empty()) inside = kgrid;
        RegionInputs in;
        in.kappa = kappa;
        in.tau = tau;
        in.tv = tv_distance(local1.back(), restrict(s.d2, region));
        in.dlambda = dl;
        in.kernel_diff = same_kernel ? 0.0 : kernel_sup_diff(s.k1, s.k2, inside);
        in.mass = mass(q1, region);
        sup_inputs.push_back(in);
    }
    rows.push_back(make_row(cfg.id + ":localized_sup", empirical_sup_diff(h1, h2, grid),
                            bound_localized_sup(lip, sup_inputs), slack));
    for (double p : cfg.p) {
        auto inputs = sup_inputs;
        for (std::size_t b = 0; b < inputs.size(); ++b)
            inputs[b].kernel_diff = same_kernel ? 0.0 : kernel_lp_diff(s.k1, s.k2, p, local1[b].marginal());
        rows.push_back(make_row(cfg.id + ":localized_lp" + p_label(p), empirical_lp_diff(h1, h2, p, q1),
                                bound_localized_lp(lip, inputs, p), slack));
    }
    return rows;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    auto seq = make_seq(seed, stream);
    engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Dataset generate_sign_data(std::uint64_t seed, std::size_t n, double noise_sd) {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (!(noise_sd >= 0.0)) throw ConfigError("noise scale must be >= 0");
    Rng rng(seed);
    std::vector<Point> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < n; ++i) draw_sign_point(rng, noise_sd, xs, ys);
    return Dataset(std::move(xs), std::move(ys));
}

Dataset read_csv_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file '" + path + "'");
    std::vector<Point> xs;
    std::vector<double> ys;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            throw ConfigError("non-numeric row in '" + path + "': " + line);
        }
        first = false;
        if (values.size() < 2) throw ConfigError("rows need at least one input and a label");
        ys.push_back(values.back());
        values.pop_back();
        xs.push_back(std::move(values));
    }
    return Dataset(std::move(xs), std::move(ys));
}

std::string_view to_string(Perturbation p) {
    switch (p) {
        case Perturbation::replace_points: return "replace_points";
        case Perturbation::shift_lambda: return "shift_lambda";
        case Perturbation::shift_bandwidth: return "shift_bandwidth";
        case Perturbation::shift_border: return "shift_border";
    }
    return "unknown";
}

Perturbation perturbation_from_string(std::string_view name) {
    for (auto p : {Perturbation::replace_points, Perturbation::shift_lambda, Perturbation::shift_bandwidth,
                   Perturbation::shift_border})
        if (to_string(p) == name) return p;
    throw ConfigError("unknown perturbation '" + std::string(name) + "'");
}

ScenarioConfig scenario_from_json(const json& j, const ScenarioConfig& defaults) {
    ScenarioConfig c = defaults;
    try {
        c.id = get_or<std::string>(j, "id", c.id);
        c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
        if (j.contains("data_model")) {
            const auto m = j.at("data_model").get<std::string>();
            if (m == "sign_model") c.data_model = DataModel::sign_model;
            else if (m == "custom_file") c.data_model = DataModel::custom_file;
            else throw ConfigError("unknown data_model '" + m + "'");
        }
        c.data_path = get_or<std::string>(j, "data_path", c.data_path);
        c.n = get_or<std::size_t>(j, "n", c.n);
        if (j.contains("noise_variance")) c.noise_sd = std::sqrt(j.at("noise_variance").get<double>());
        c.noise_sd = get_or<double>(j, "noise_scale", c.noise_sd);
        if (j.contains("perturbation")) {
            const auto& pj = j.at("perturbation");
            c.perturbation = perturbation_from_string(pj.at("type").get<std::string>());
            const char* key = c.perturbation == Perturbation::replace_points ? "fraction" : "delta";
            c.amount = get_or<double>(pj, key, 0.0);
        }
        if (j.contains("loss")) c.loss = loss_from_json(j.at("loss"));
        if (j.contains("kernel")) c.kernel = kernel_from_json(j.at("kernel"));
        c.lambda = get_or<double>(j, "lambda", c.lambda);
        if (j.contains("regionalization")) c.regions = regionalization_from_json(j.at("regionalization"));
        c.border = get_or<double>(j, "border", c.border);
        c.anchor_second = get_or<bool>(j, "anchor_second", c.anchor_second);
        if (j.contains("eval_grid")) {
            const auto& g = j.at("eval_grid");
            c.grid_resolution = get_or<std::size_t>(g, "resolution", c.grid_resolution);
            if (g.contains("range")) {
                c.grid_lo = g.at("range").at(0).get<double>();
                c.grid_hi = g.at("range").at(1).get<double>();
            }
        }
        if (j.contains("p")) {
            c.p = j.at("p").is_array() ? j.at("p").get<std::vector<double>>()
                                       : std::vector<double>{j.at("p").get<double>()};
        }
        c.tol = get_or<double>(j, "tol", c.tol);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario config: ") + e.what());
    }
    if (c.data_model == DataModel::sign_model && c.n < 2) throw ConfigError("n must be >= 2");
    if (!(c.noise_sd >= 0.0)) throw ConfigError("noise scale must be >= 0");
    if (c.perturbation == Perturbation::replace_points && !(c.amount >= 0.0 && c.amount <= 1.0))
        throw ConfigError("fraction must lie in [0, 1]");
    if (c.perturbation != Perturbation::replace_points && !(c.amount >= 0.0) )
        throw ConfigError("delta must be >= 0");
    if (c.grid_resolution < 2) throw ConfigError("grid resolution must be >= 2");
    if (!(c.grid_lo < c.grid_hi)) throw ConfigError("grid range must be increasing");
    if (!(c.lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    for (double p : c.p)
        if (!(p >= 1.0)) throw ConfigError("p must be >= 1");
    return c;
}

json to_json(const ScenarioConfig& c) {
    json j = {{"id", c.id},
              {"seed", c.seed},
              {"data_model", c.data_model == DataModel::sign_model ? "sign_model" : "custom_file"},
              {"n", c.n},
              {"noise_scale", c.noise_sd},
              {"perturbation",
               {{"type", std::string(to_string(c.perturbation))},
                {c.perturbation == Perturbation::replace_points ? "fraction" : "delta", c.amount}}},
              {"loss", to_json(c.loss)},
              {"kernel", to_json(c.kernel)},
              {"lambda", c.lambda},
              {"border", c.border},
              {"anchor_second", c.anchor_second},
              {"eval_grid", {{"resolution", c.grid_resolution}, {"range", {c.grid_lo, c.grid_hi}}}},
              {"p", c.p},
              {"tol", c.tol}};
    if (c.data_model == DataModel::custom_file) j["data_path"] = c.data_path;
    if (c.regions) j["regionalization"] = to_json(*c.regions);
    return j;
}

std::vector<ResultRow> run_scenario(const ScenarioConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<ResultRow> rows;
    try {
        rows = scenario_rows(cfg);
    } catch (const std::exception& e) {
        ResultRow row;
        row.scenario_id = cfg.id + ":error";
        row.empirical = row.bound = std::numeric_limits<double>::quiet_NaN();
        row.error = e.what();
        rows = {row};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) r.runtime_ms = ms;
    return rows;
}

SweepConfig sweep_from_json(const json& j) {
    SweepConfig c;
    c.base = scenario_from_json(j.value("base", json::object()));
    try {
        c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
        c.scenarios_per_family = get_or<std::size_t>(j, "scenarios_per_family", c.scenarios_per_family);
        c.threads = get_or<std::size_t>(j, "threads", c.threads);
        if (j.contains("families")) {
            c.families.clear();
            for (const auto& f : j.at("families")) c.families.push_back(perturbation_from_string(f.get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed sweep config: ") + e.what());
    }
    return c;
}

std::vector<ScenarioConfig> sweep_scenarios(const SweepConfig& cfg) {
    static const std::vector<LossSpec> losses{LossSpec::pinball(0.25), LossSpec::pinball(0.5),
                                              LossSpec::pinball(0.75), LossSpec::logistic(),
                                              LossSpec::eps_insensitive(0.1), LossSpec::absolute()};
    const int width = std::max<int>(3, static_cast<int>(std::to_string(cfg.scenarios_per_family).size()));
    std::vector<ScenarioConfig> out;
    for (auto family : cfg.families) {
        for (std::size_t i = 0; i < cfg.scenarios_per_family; ++i) {
            Rng rng(cfg.seed, (static_cast<std::uint64_t>(family) + 1) << 32 | i);
            ScenarioConfig s = cfg.base;
            char id[64];
            std::snprintf(id, sizeof id, "%s:%0*zu", std::string(to_string(family)).c_str(), width, i);
            s.id = id;
            s.seed = rng.next();
            s.perturbation = family;
            s.n = 30 + static_cast<std::size_t>(rng.uniform() * 51.0);
            s.loss = losses[static_cast<std::size_t>(rng.uniform() * static_cast<double>(losses.size()))];
            const bool gaussian = rng.uniform() < 0.5;
            const double gamma = gaussian ? rng.uniform(0.5, 8.0) : rng.uniform(0.5, 4.0);
            s.kernel = gaussian ? KernelSpec::gaussian(gamma) : KernelSpec::laplacian(gamma);
            s.lambda = std::pow(10.0, rng.uniform(-2.0, 0.0));
            const double u = rng.uniform();
            switch (family) {
                case Perturbation::replace_points: s.amount = i == 0 ? 0.0 : 0.3 * u; break;
                case Perturbation::shift_lambda: s.amount = s.lambda * u; break;
                case Perturbation::shift_bandwidth: s.amount = 0.5 * gamma * u; break;
                case Perturbation::shift_border: s.amount = 0.01 + 0.19 * u; break;
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<ResultRow> run_sweep(const std::vector<ScenarioConfig>& scenarios, std::size_t threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, scenarios.size()));
    std::vector<std::vector<ResultRow>> results(scenarios.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) results[i] = run_scenario(scenarios[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<ResultRow> rows;
    for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ResultRow& a, const ResultRow& b) { return a.scenario_id < b.scenario_id; });
    return rows;
}

std::string results_csv_header() {
    std::string h = "scenario_id,empirical,bound";
    for (const auto& t : kTermNames) h += "," + t;
    return h + ",satisfied,runtime_ms";
}

std::string results_csv_row(const ResultRow& row) {
    char buf[64];
    std::string out = row.scenario_id;
    auto add = [&](double v) {
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        out += buf;
    };
    add(row.empirical);
    add(row.bound);
    for (const auto& t : kTermNames) {
        auto it = row.terms.find(t);
        add(it == row.terms.end() ? 0.0 : it->second);
    }
    out += row.satisfied ? ",true" : ",false";
    std::snprintf(buf, sizeof buf, ",%.3f", row.runtime_ms);
    return out + buf;
}

ScenarioConfig figure2_defaults() {
    ScenarioConfig c;
    c.id = "figure2";
    c.seed = 2023;
    c.n = 500;
    c.noise_sd = std::sqrt(0.5);
    c.perturbation = Perturbation::shift_border;
    c.amount = 0.05;
    c.border = 0.0;
    c.loss = LossSpec::pinball(0.5);
    c.kernel = KernelSpec::gaussian(10.0);
    c.lambda = 0.01;
    return c;
}

Figure2Result figure2(const ScenarioConfig& cfg) {
    if (cfg.perturbation != Perturbation::shift_border) throw ConfigError("figure2 compares two borders");
    const auto s = build(cfg);
    TrainOptions opts;
    opts.tol = cfg.tol;
    auto m1 = train_localized(s.d1, s.r1, WeightScheme::equal_split, {s.lambda1}, {s.k1}, cfg.loss, opts);
    auto m2 = train_localized(s.d2, s.r2, WeightScheme::equal_split, {s.lambda2}, {s.k2}, cfg.loss, opts);
    const PartitionSide one{&s.d1, &s.r1, {s.lambda1}, {s.k1}};
    const PartitionSide two{&s.d2, &s.r2, {s.lambda2}, {s.k2}};
    Figure2Result r{s.d1, {}, {}, {}, 0.0, 0.0, 0.0,
                    bound_diff_region_l1(one, two, cfg.loss, cfg.anchor_second), std::move(m1), std::move(m2)};
    for (const auto& x : linspace(cfg.grid_lo, cfg.grid_hi, cfg.grid_resolution)) {
        r.grid.push_back(x[0]);
        r.f1.push_back(r.model1.predict(x));
        r.f2.push_back(r.model2.predict(x));
        r.sup_distance = std::max(r.sup_distance, std::abs(r.f1.back() - r.f2.back()));
    }
    r.l1_distance = empirical_lp_diff([&](const Point& x) { return r.model1.predict(x); },
                                      [&](const Point& x) { return r.model2.predict(x); }, 1.0,
                                      cfg.anchor_second ? s.d2.marginal() : s.d1.marginal());
    const double kappa = std::max(s.k1.sup_norm(), s.k2.sup_norm());
    r.slack = 2.0 * cfg.tol * kappa * kappa / std::min(s.lambda1, s.lambda2);
    return r;
}

void write_figure2(const Figure2Result& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    char buf[128];
    {
        std::ofstream out(base / "figure2_curves.csv");
        out << "x,f1,f2,diff\n";
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.grid[i], r.f1[i], r.f2[i],
                          r.f1[i] - r.f2[i]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "# sup_distance,%.17g\n# l1_distance,%.17g\n", r.sup_distance,
                      r.l1_distance);
        out << buf;
        std::snprintf(buf, sizeof buf, "# bound_total,%.17g\n# bound_satisfied,%s\n", r.bound.total,
                      r.l1_distance <= r.bound.total + r.slack ? "true" : "false");
        out << buf;
    }
    {
        std::ofstream out(base / "figure2_data.csv");
        out << "x,y\n";
        for (std::size_t i = 0; i < r.data.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.data.xs()[i][0], r.data.ys()[i]);
            out << buf;
        }
    }
    {
        std::ofstream out(base / "figure2_bound.json");
        json j = to_json(r.bound);
        j["sup_distance"] = r.sup_distance;
        j["l1_distance"] = r.l1_distance;
        j["slack"] = r.slack;
        out << j.dump(2) << "\n";
    }
}

}  // namespace locsvm
