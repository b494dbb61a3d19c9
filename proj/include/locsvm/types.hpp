#pragma once

#include <vector>

namespace locsvm {

/// A point of the input space X = R^d.
using Point = std::vector<double>;

}  // namespace locsvm
