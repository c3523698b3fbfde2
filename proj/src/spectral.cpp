#include "eclipse/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "eclipse/errors.hpp"

namespace eclipse {

std::vector<double> spectral_features_gray(const Mat2& gray, int bands) {
  if (bands < 2) throw InvalidArgument("spectral_features: bands must be >= 2");
  const Mat2 spectrum = dct2(gray);
  const int h = spectrum.rows;
  const int w = spectrum.cols;

  std::vector<double> sum(static_cast<std::size_t>(bands), 0.0);
  std::vector<std::int64_t> count(static_cast<std::size_t>(bands), 0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double ri = static_cast<double>(i) / h;
      const double rj = static_cast<double>(j) / w;
      const double r = std::sqrt(ri * ri + rj * rj) * inv_sqrt2;
      int band = static_cast<int>(r * bands);
      band = std::clamp(band, 0, bands - 1);
      sum[static_cast<std::size_t>(band)] += std::log1p(std::abs(spectrum.at(i, j)));
      ++count[static_cast<std::size_t>(band)];
    }
  }
  std::vector<double> features(static_cast<std::size_t>(bands), 0.0);
  for (int b = 0; b < bands; ++b) {
    const auto idx = static_cast<std::size_t>(b);
    if (count[idx] > 0) features[idx] = sum[idx] / static_cast<double>(count[idx]);
  }
  return features;
}

std::vector<double> spectral_features(const Image& image, int bands) {
  return spectral_features_gray(to_grayscale(image), bands);
}

}  // namespace eclipse
