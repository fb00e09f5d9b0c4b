#pragma once

#include <cmath>

#include "qdecay/tensors.hpp"

namespace testutil {

inline double max_abs(const qdecay::Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool rel_near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace testutil
