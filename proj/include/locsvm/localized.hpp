#pragma once

#include <cstddef>
#include <vector>

#include "locsvm/dataset.hpp"
#include "locsvm/regions.hpp"
#include "locsvm/svm.hpp"

namespace locsvm {

/// Points of data inside region, with weights renormalised to sum to one.
/// Throws RegionError when the region has zero mass.
Dataset restrict(const Dataset& data, const Box& region);

/// One local SVM per region, combined through region weights (overlapping
/// regionalizations) or by the unique containing cell (partitions).
class LocalizedModel {
public:
    LocalizedModel(Regionalization regionalization, WeightScheme weights, std::vector<TrainedSvm> locals);

    const Regionalization& regionalization() const noexcept { return regionalization_; }
    WeightScheme weight_scheme() const noexcept { return weights_; }
    const std::vector<TrainedSvm>& locals() const noexcept { return locals_; }
    std::vector<double> lambdas() const;
    std::vector<KernelSpec> kernels() const;

    /// Overlapping: sum_b w_b(x) f_b(x) over regions containing x.
    /// Partition: f_b(x) for the cell containing x.
    double predict(const Point& x) const;

    friend bool operator==(const LocalizedModel&, const LocalizedModel&) = default;

private:
    Regionalization regionalization_;
    WeightScheme weights_;
    std::vector<TrainedSvm> locals_;
};

/// Trains the local SVMs. lambdas and kernels hold either one entry (shared
/// by all regions) or one entry per region. Errors from a region carry its index.
LocalizedModel train_localized(const Dataset& data, const Regionalization& r, WeightScheme w,
                               const std::vector<double>& lambdas, const std::vector<KernelSpec>& kernels,
                               const LossSpec& loss, const TrainOptions& options = {});

double predict_localized(const LocalizedModel& m, const Point& x);

}  // namespace locsvm
