#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclipse/oracle.hpp"
#include "eclipse/tensor.hpp"

namespace eclipse {

// Heatmaps are Mat2 planes normalized to [0,1]; a constant plane maps to
// all 0.5 (degenerate min-max).
using Heatmap = Mat2;

struct SpatialMask {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> cells;  // 1 = sampleable

  SpatialMask() = default;
  SpatialMask(int r, int c, bool value)
      : rows(r), cols(c), cells(static_cast<std::size_t>(r) * c, value ? 1 : 0) {}

  bool at(int r, int c) const {
    return cells[static_cast<std::size_t>(r) * cols + c] != 0;
  }
  int area() const;
  void fill(bool value);
};

Heatmap normalize_heatmap(const Mat2& raw);

// Grayscale PNG or headerless row-major CSV of reals; values are min-max
// normalized. Dimensions must match the image under attack.
Heatmap load_heatmap(const std::string& path, int expected_rows, int expected_cols);

/// Black-box saliency: slide a patch of constant 0.5 over the image and
// record the score drop it causes, averaged per pixel by coverage count.
// Issues ceil((H-patch)/stride+1) * ceil((W-patch)/stride+1) + 1 queries
// against the local oracle.
Heatmap occlusion_saliency(const Oracle& local_oracle, const Image& image,
                           const std::string& target_label, int patch, int stride);

// M[i,j] = heat[i,j] >= tau
SpatialMask threshold_mask(const Heatmap& heat, double tau);

// True requests resetting the mask to all-ones and clearing the sampled
// set. sampled_count counts distinct (i,j,c) coordinates since the last
// reset; the fraction rule is taken over maskable coordinates, which is
// 3 * Area(M) because the mask is spatial but sampling is per channel.
bool mask_reset_check(const SpatialMask& mask, std::int64_t sampled_count,
                      std::int64_t min_area, double sampled_fraction_cap = 0.75);

}  // namespace eclipse
