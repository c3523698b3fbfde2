#pragma once

#include <string>

#include "eclipse/oracle.hpp"
#include "eclipse/tensor.hpp"

// Test-support interface only. Attack code must treat every oracle as a
// black box; nothing under this header may be included from attack or
// evaluation implementations.

namespace eclipse::testkit {

// Exact gradient of the synthetic oracle's softmax score for `label` with
// respect to every pixel of `image`:
//   d score_k / d x_p = score_k * (T_k[p] - sum_j score_j * T_j[p]) / temperature
Gradient synthetic_score_gradient(const SyntheticOracleSpec& spec,
                                  const Image& image, const std::string& label);

}  // namespace eclipse::testkit
