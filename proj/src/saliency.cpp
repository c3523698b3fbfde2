#include "eclipse/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "eclipse/codec.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

int SpatialMask::area() const {
  return static_cast<int>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

void SpatialMask::fill(bool value) {
  std::fill(cells.begin(), cells.end(), value ? std::uint8_t{1} : std::uint8_t{0});
}

Heatmap normalize_heatmap(const Mat2& raw) {
  if (raw.v.empty()) throw InvalidArgument("normalize_heatmap: empty plane");
  const auto [lo_it, hi_it] = std::minmax_element(raw.v.begin(), raw.v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Heatmap out(raw.rows, raw.cols);
  if (hi - lo <= 0.0) {
    std::fill(out.v.begin(), out.v.end(), 0.5);
    return out;
  }
  for (std::size_t i = 0; i < raw.v.size(); ++i) {
    out.v[i] = (raw.v[i] - lo) / (hi - lo);
  }
  return out;
}

namespace {

Mat2 read_heatmap_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_heatmap: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaError("load_heatmap: non-numeric cell in " + path);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw SchemaError("load_heatmap: ragged CSV in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw SchemaError("load_heatmap: empty CSV " + path);
  Mat2 out(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) out.at(r, c) = rows[r][c];
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Heatmap load_heatmap(const std::string& path, int expected_rows, int expected_cols) {
  Mat2 raw = ends_with(path, ".csv") ? read_heatmap_csv(path) : read_png_gray(path);
  if (raw.rows != expected_rows || raw.cols != expected_cols) {
    throw InvalidArgument("load_heatmap: " + path + " is " +
                          std::to_string(raw.rows) + "x" + std::to_string(raw.cols) +
                          ", expected " + std::to_string(expected_rows) + "x" +
                          std::to_string(expected_cols));
  }
  return normalize_heatmap(raw);
}

Heatmap occlusion_saliency(const Oracle& local_oracle, const Image& image,
                           const std::string& target_label, int patch, int stride) {
  const int h = image.height();
  const int w = image.width();
  if (patch < 1 || patch > std::min(h, w)) {
    throw InvalidArgument("occlusion_saliency: patch must be in [1, min(H,W)]");
  }
  if (stride < 1) throw InvalidArgument("occlusion_saliency: stride must be >= 1");

  const double base = query_target(local_oracle, image, target_label);

  // grid positions step by stride and always include the final offset so
  // every pixel is covered
  auto positions = [&](int extent) {
    std::vector<int> pos;
    for (int p = 0; p + patch <= extent; p += stride) pos.push_back(p);
    if (pos.back() != extent - patch) pos.push_back(extent - patch);
    return pos;
  };

  Mat2 drops(h, w, 0.0);
  Mat2 coverage(h, w, 0.0);
  Image occluded = image;
  for (int r0 : positions(h)) {
    for (int c0 : positions(w)) {
      for (int r = r0; r < r0 + patch; ++r) {
        for (int c = c0; c < c0 + patch; ++c) {
          for (int ch = 0; ch < Tensor3::kChannels; ++ch) occluded.at(r, c, ch) = 0.5;
        }
      }
      const double drop = base - query_target(local_oracle, occluded, target_label);
      for (int r = r0; r < r0 + patch; ++r) {
        for (int c = c0; c < c0 + patch; ++c) {
          drops.at(r, c) += drop;
          coverage.at(r, c) += 1.0;
          for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
            occluded.at(r, c, ch) = image.at(r, c, ch);
          }
        }
      }
    }
  }
  for (std::size_t i = 0; i < drops.v.size(); ++i) drops.v[i] /= coverage.v[i];
  return normalize_heatmap(drops);
}

SpatialMask threshold_mask(const Heatmap& heat, double tau) {
  SpatialMask mask(heat.rows, heat.cols, false);
  for (std::size_t i = 0; i < heat.v.size(); ++i) {
    mask.cells[i] = heat.v[i] >= tau ? 1 : 0;
  }
  return mask;
}

bool mask_reset_check(const SpatialMask& mask, std::int64_t sampled_count,
                      std::int64_t min_area, double sampled_fraction_cap) {
  const std::int64_t area = mask.area();
  if (area < min_area) return true;
  const double maskable = 3.0 * static_cast<double>(area);
  return static_cast<double>(sampled_count) > sampled_fraction_cap * maskable;
}

}  // namespace eclipse
