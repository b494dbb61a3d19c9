#pragma once

#include <json.hpp>

#include "locsvm/bounds.hpp"
#include "locsvm/kernels.hpp"
#include "locsvm/localized.hpp"
#include "locsvm/losses.hpp"
#include "locsvm/regions.hpp"
#include "locsvm/svm.hpp"

// JSON encodings. Doubles are written with round-trip precision, so
// decode(encode(v)) == v for every finite value.

namespace locsvm {

using json = nlohmann::json;

json to_json(const LossSpec& loss);
LossSpec loss_from_json(const json& j);

json to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const json& j);

/// {"kernel", "lambda", "support": [[...]], "alphas", "loss", "residual"}
json to_json(const TrainedSvm& model);
TrainedSvm svm_from_json(const json& j);

/// {"mode", "regions": [{"lower": [...], "upper": [...]}]}, infinities as "inf" / "-inf".
json to_json(const Regionalization& r);
Regionalization regionalization_from_json(const json& j);

/// {"regionalization", "weights", "locals": [TrainedSvm...]}
json to_json(const LocalizedModel& m);
LocalizedModel localized_from_json(const json& j);

json to_json(const BoundReport& r);

json to_json(const ValidationReport& r);

}  // namespace locsvm
