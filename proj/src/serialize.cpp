#include "locsvm/serialize.hpp"

#include <cmath>
#include <limits>

#include "locsvm/errors.hpp"

namespace locsvm {

namespace {

json bound_value(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double bound_from(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ConfigError("invalid bound token '" + s + "'");
    }
    return j.get<double>();
}

std::map<std::string, double> params_from(const json& j) {
    std::map<std::string, double> out;
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) out[k] = v.get<double>();
    return out;
}

}  // namespace

json to_json(const LossSpec& loss) {
    return {{"family", std::string(to_string(loss.family()))}, {"params", loss.params()}};
}

LossSpec loss_from_json(const json& j) {
    try {
        return LossSpec(loss_family_from_string(j.at("family").get<std::string>()), params_from(j));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed loss spec: ") + e.what());
    }
}

json to_json(const KernelSpec& kernel) {
    return {{"family", std::string(to_string(kernel.family()))}, {"params", kernel.params()}};
}

KernelSpec kernel_from_json(const json& j) {
    try {
        return KernelSpec(kernel_family_from_string(j.at("family").get<std::string>()), params_from(j));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed kernel spec: ") + e.what());
    }
}

json to_json(const TrainedSvm& m) {
    return {{"kernel", to_json(m.kernel())}, {"lambda", m.lambda()},   {"support", m.support_xs()},
            {"alphas", m.alphas()},          {"loss", to_json(m.loss())}, {"residual", m.certificate_residual()}};
}

TrainedSvm svm_from_json(const json& j) {
    try {
        return TrainedSvm(kernel_from_json(j.at("kernel")), j.at("lambda").get<double>(),
                          j.at("support").get<std::vector<Point>>(), j.at("alphas").get<std::vector<double>>(),
                          loss_from_json(j.at("loss")), j.value("residual", 0.0));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed model: ") + e.what());
    }
}

json to_json(const Regionalization& r) {
    json regions = json::array();
    for (const auto& b : r.regions()) {
        json lo = json::array(), hi = json::array();
        for (double v : b.lower()) lo.push_back(bound_value(v));
        for (double v : b.upper()) hi.push_back(bound_value(v));
        regions.push_back({{"lower", lo}, {"upper", hi}});
    }
    return {{"mode", std::string(to_string(r.mode()))}, {"regions", regions}};
}

Regionalization regionalization_from_json(const json& j) {
    try {
        std::vector<Box> boxes;
        for (const auto& rj : j.at("regions")) {
            std::vector<double> lo, hi;
            for (const auto& v : rj.at("lower")) lo.push_back(bound_from(v));
            for (const auto& v : rj.at("upper")) hi.push_back(bound_from(v));
            boxes.emplace_back(std::move(lo), std::move(hi));
        }
        return Regionalization(std::move(boxes), region_mode_from_string(j.value("mode", "partition")));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed regionalization: ") + e.what());
    }
}

json to_json(const LocalizedModel& m) {
    json locals = json::array();
    for (const auto& l : m.locals()) locals.push_back(to_json(l));
    return {{"regionalization", to_json(m.regionalization())}, {"weights", "equal_split"}, {"locals", locals}};
}

LocalizedModel localized_from_json(const json& j) {
    try {
        if (j.value("weights", "equal_split") != "equal_split") throw ConfigError("unknown weight scheme");
        std::vector<TrainedSvm> locals;
        for (const auto& l : j.at("locals")) locals.push_back(svm_from_json(l));
        return LocalizedModel(regionalization_from_json(j.at("regionalization")), WeightScheme::equal_split,
                              std::move(locals));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed localized model: ") + e.what());
    }
}

json to_json(const BoundReport& r) {
    json j = {{"theorem", std::string(to_string(r.theorem))}, {"total", r.total}, {"terms", r.terms},
              {"inputs_digest", r.digest}, {"vectors", r.vectors}};
    if (r.p > 0.0) j["p"] = r.p;
    return j;
}

json to_json(const ValidationReport& r) {
    return {{"valid", r.valid()},
            {"cover_ok", r.cover_ok()},
            {"mass_ok", r.mass_ok()},
            {"bad_data_points", r.bad_data_points},
            {"bad_grid_points", r.bad_grid_points},
            {"zero_mass_regions", r.zero_mass_regions},
            {"masses", r.masses}};
}

}  // namespace locsvm
