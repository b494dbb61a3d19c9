#include "locsvm/dataset.hpp"

#include <cmath>
#include <numeric>

#include "locsvm/errors.hpp"

namespace locsvm {

Dataset::Dataset(std::vector<Point> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    weights_.assign(ys_.size(), ys_.empty() ? 0.0 : 1.0 / static_cast<double>(ys_.size()));
    validate();
}

Dataset::Dataset(std::vector<Point> xs, std::vector<double> ys, std::vector<double> weights)
    : xs_(std::move(xs)), ys_(std::move(ys)), weights_(std::move(weights)) {
    validate();
}

void Dataset::validate() const {
    if (ys_.empty()) throw ConfigError("dataset must contain at least one point");
    if (xs_.size() != ys_.size() || weights_.size() != ys_.size())
        throw ConfigError("dataset xs, ys and weights must have equal length");
    const std::size_t d = xs_.front().size();
    for (const auto& x : xs_)
        if (x.size() != d) throw DomainError("dataset points have mixed dimensions");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("dataset weights must be >= 0");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("dataset weights must sum to 1");
}

}  // namespace locsvm
