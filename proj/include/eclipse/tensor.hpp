#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eclipse {

// Dense H x W x 3 array of doubles, row-major with interleaved channels.
// Used both for images (values expected in [0,1]) and gradient buffers
// (unbounded values).
class Tensor3 {
 public:
  static constexpr int kChannels = 3;

  Tensor3() = default;
  Tensor3(int height, int width, double fill = 0.0);

  double& at(int row, int col, int ch) {
    return values_[flat_index(row, col, ch)];
  }
  double at(int row, int col, int ch) const {
    return values_[flat_index(row, col, ch)];
  }

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t flat_index(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * width_ + col) * kChannels + ch;
  }

  bool same_shape(const Tensor3& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  bool operator==(const Tensor3& other) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

using Image = Tensor3;     // invariant: all values in [0,1]
using Gradient = Tensor3;  // unbounded

// Plain H x W matrix of doubles, used for heatmaps and DCT planes.
struct Mat2 {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Mat2() = default;
  Mat2(int r, int c, double fill = 0.0)
      : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, fill) {}

  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return v[static_cast<std::size_t>(r) * cols + c];
  }
  bool operator==(const Mat2&) const = default;
};

struct Coord {
  int row = 0;
  int col = 0;
  int ch = 0;
  bool operator==(const Coord&) const = default;
};

bool in_unit_range(const Tensor3& t);

// Separable Gaussian weights on a k x k grid, normalized to sum 1.
struct Kernel2D {
  int size = 0;
  std::vector<double> weights;  // size * size, row-major

  double at(int r, int c) const { return weights[static_cast<std::size_t>(r) * size + c]; }
};

// k must be odd and positive, sigma positive.
Kernel2D gaussian_kernel(int k, double sigma);

// Per-channel 2-D convolution with reflected borders (edge pixel not
// repeated). Output shape equals input shape.
Tensor3 gaussian_blur(const Tensor3& buffer, const Kernel2D& kernel);

// Elementwise clamp of candidate into [max(0, x-beta), min(1, x+beta)].
Image clip_to_budget(const Image& candidate, const Image& original, double beta);

// Orthonormal type-II 2-D DCT and its inverse. idct2(dct2(x)) == x and
// Parseval holds under this convention.
Mat2 dct2(const Mat2& plane);
Mat2 idct2(const Mat2& spectrum);

// Pixel-space image of the orthonormal 2-D DCT basis function (u, v);
// unit L2 norm by construction.
Mat2 dct_basis_image(int u, int v, int rows, int cols);

// Extract / overwrite one channel plane of a tensor.
Mat2 channel_plane(const Tensor3& t, int ch);
void set_channel_plane(Tensor3& t, int ch, const Mat2& plane);

// Luma conversion used by the spectral feature recipe.
// gray = 0.299 R + 0.587 G + 0.114 B
Mat2 to_grayscale(const Image& image);

}  // namespace eclipse
