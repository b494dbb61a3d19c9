#pragma once

#include <cstddef>
#include <vector>

#include "locsvm/kernels.hpp"
#include "locsvm/types.hpp"

namespace locsvm {

/// Weighted empirical measure on X x Y. Weights default to 1/n.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Point> xs, std::vector<double> ys);
    Dataset(std::vector<Point> xs, std::vector<double> ys, std::vector<double> weights);

    std::size_t size() const noexcept { return ys_.size(); }
    std::size_t dim() const noexcept { return xs_.empty() ? 0 : xs_.front().size(); }
    const std::vector<Point>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// The X-marginal as a weighted point sample.
    WeightedPoints marginal() const { return {xs_, weights_}; }

private:
    void validate() const;

    std::vector<Point> xs_;
    std::vector<double> ys_;
    std::vector<double> weights_;
};

}  // namespace locsvm
