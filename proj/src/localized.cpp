#include "locsvm/localized.hpp"

#include <string>

#include "locsvm/errors.hpp"

namespace locsvm {

Dataset restrict(const Dataset& data, const Box& region) {
    std::vector<Point> xs;
    std::vector<double> ys, ws;
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!region.contains(data.xs()[i])) continue;
        xs.push_back(data.xs()[i]);
        ys.push_back(data.ys()[i]);
        ws.push_back(data.weights()[i]);
        total += data.weights()[i];
    }
    if (xs.empty() || total <= 0.0) throw RegionError("region has zero probability mass");
    if (xs.size() == data.size()) return data;
    for (auto& w : ws) w /= total;
    return Dataset(std::move(xs), std::move(ys), std::move(ws));
}

LocalizedModel::LocalizedModel(Regionalization regionalization, WeightScheme weights,
                               std::vector<TrainedSvm> locals)
    : regionalization_(std::move(regionalization)), weights_(weights), locals_(std::move(locals)) {
    if (locals_.size() != regionalization_.size())
        throw ConfigError("need exactly one local model per region");
}

std::vector<double> LocalizedModel::lambdas() const {
    std::vector<double> out;
    for (const auto& m : locals_) out.push_back(m.lambda());
    return out;
}

std::vector<KernelSpec> LocalizedModel::kernels() const {
    std::vector<KernelSpec> out;
    for (const auto& m : locals_) out.push_back(m.kernel());
    return out;
}

double LocalizedModel::predict(const Point& x) const {
    if (regionalization_.mode() == RegionMode::partition) {
        const auto cover = regionalization_.covering(x);
        if (cover.size() != 1) throw RegionError("point is not in exactly one cell of the partition");
        return locals_[cover.front()].predict(x);
    }
    const auto w = weights(weights_, regionalization_, x);
    double acc = 0.0;
    for (std::size_t b = 0; b < w.size(); ++b)
        if (w[b] > 0.0) acc += w[b] * locals_[b].predict(x);  // zero extension outside X_b
    return acc;
}

double predict_localized(const LocalizedModel& m, const Point& x) { return m.predict(x); }

LocalizedModel train_localized(const Dataset& data, const Regionalization& r, WeightScheme w,
                               const std::vector<double>& lambdas, const std::vector<KernelSpec>& kernels,
                               const LossSpec& loss, const TrainOptions& options) {
    const std::size_t B = r.size();
    auto aligned = [B](std::size_t n) { return n == 1 || n == B; };
    if (!aligned(lambdas.size()) || !aligned(kernels.size()))
        throw ConfigError("lambdas and kernels must be scalars or one per region");
    std::vector<TrainedSvm> locals;
    locals.reserve(B);
    for (std::size_t b = 0; b < B; ++b) {
        const double lambda = lambdas[lambdas.size() == 1 ? 0 : b];
        const auto& kernel = kernels[kernels.size() == 1 ? 0 : b];
        Dataset local;
        try {
            local = restrict(data, r.regions()[b]);
        } catch (const RegionError& e) {
            throw RegionError("region " + std::to_string(b) + ": " + e.what(), b);
        }
        try {
            locals.push_back(train(local, loss, kernel, lambda, options));
        } catch (const SolverError& e) {
            throw SolverError("region " + std::to_string(b) + ": " + e.what(), e.best_residual(), b);
        }
    }
    return LocalizedModel(r, w, std::move(locals));
}

}  // namespace locsvm
