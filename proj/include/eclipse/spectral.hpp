#pragma once

#include <string>
#include <vector>

#include "eclipse/tensor.hpp"

namespace eclipse {

inline constexpr int kDefaultSpectralBands = 64;

// Identifies how feature vectors were computed so persisted matrices and
// detectors are only ever compared like-for-like.
inline constexpr const char* kSpectralRecipe = "dct-radial-logband-gray/v1";

// Radial frequency signature of an image: grayscale -> orthonormal 2-D DCT
// -> log(1 + |coefficient|) -> mean per radial band. Band index for
// coefficient (i, j) is floor(bands * r) with
// r = sqrt((i/H)^2 + (j/W)^2) / sqrt(2), clamped to the last band. Bands
// with no coefficients (possible when bands > image side) are reported as 0.
// Values are raw; standardization happens at training time with dataset
// statistics.
std::vector<double> spectral_features(const Image& image,
                                      int bands = kDefaultSpectralBands);

// Same signature computed from an already-grayscale plane.
std::vector<double> spectral_features_gray(const Mat2& gray, int bands);

}  // namespace eclipse
