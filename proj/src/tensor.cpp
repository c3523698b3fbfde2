#include "eclipse/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eclipse/errors.hpp"

namespace eclipse {

Tensor3::Tensor3(int height, int width, double fill)
    : height_(height), width_(width) {
  if (height < 1 || width < 1) {
    throw InvalidArgument("Tensor3: height and width must be >= 1");
  }
  values_.assign(static_cast<std::size_t>(height) * width * kChannels, fill);
}

bool in_unit_range(const Tensor3& t) {
  return std::all_of(t.values().begin(), t.values().end(),
                     [](double v) { return v >= 0.0 && v <= 1.0; });
}

Kernel2D gaussian_kernel(int k, double sigma) {
  if (k < 1 || k % 2 == 0) {
    throw InvalidArgument("gaussian_kernel: size must be odd and positive");
  }
  if (!(sigma > 0.0)) {
    throw InvalidArgument("gaussian_kernel: sigma must be positive");
  }
  Kernel2D kernel;
  kernel.size = k;
  kernel.weights.resize(static_cast<std::size_t>(k) * k);
  const double c = (k - 1) / 2.0;
  double sum = 0.0;
  for (int r = 0; r < k; ++r) {
    for (int col = 0; col < k; ++col) {
      const double d2 = (r - c) * (r - c) + (col - c) * (col - c);
      const double w = std::exp(-d2 / (2.0 * sigma * sigma));
      kernel.weights[static_cast<std::size_t>(r) * k + col] = w;
      sum += w;
    }
  }
  for (double& w : kernel.weights) w /= sum;
  return kernel;
}

namespace {

// Mirror index into [0, n) without repeating the edge sample.
int reflect_index(int idx, int n) {
  if (n == 1) return 0;
  while (idx < 0 || idx >= n) {
    if (idx < 0) idx = -idx;
    if (idx >= n) idx = 2 * n - 2 - idx;
  }
  return idx;
}

}  // namespace

Tensor3 gaussian_blur(const Tensor3& buffer, const Kernel2D& kernel) {
  if (buffer.empty()) {
    throw InvalidArgument("gaussian_blur: empty buffer");
  }
  if (kernel.size < 1 || kernel.size % 2 == 0 ||
      kernel.weights.size() != static_cast<std::size_t>(kernel.size) * kernel.size) {
    throw InvalidArgument("gaussian_blur: malformed kernel");
  }
  const int h = buffer.height();
  const int w = buffer.width();
  const int half = kernel.size / 2;
  Tensor3 out(h, w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        double acc = 0.0;
        for (int kr = 0; kr < kernel.size; ++kr) {
          const int rr = reflect_index(r + kr - half, h);
          for (int kc = 0; kc < kernel.size; ++kc) {
            const int cc = reflect_index(c + kc - half, w);
            acc += kernel.at(kr, kc) * buffer.at(rr, cc, ch);
          }
        }
        out.at(r, c, ch) = acc;
      }
    }
  }
  return out;
}

Image clip_to_budget(const Image& candidate, const Image& original, double beta) {
  if (!candidate.same_shape(original)) {
    throw InvalidArgument("clip_to_budget: shape mismatch");
  }
  if (beta < 0.0) throw InvalidArgument("clip_to_budget: negative budget");
  Image out = candidate;
  const auto& x = original.values();
  auto& v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lo = std::max(0.0, x[i] - beta);
    const double hi = std::min(1.0, x[i] + beta);
    v[i] = std::clamp(v[i], lo, hi);
  }
  return out;
}

namespace {

// Cosine basis for a 1-D orthonormal DCT-II of length n; row u holds the
// analysis weights for frequency u.
std::vector<double> dct_matrix(int n) {
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  const double norm0 = std::sqrt(1.0 / n);
  const double norm = std::sqrt(2.0 / n);
  for (int u = 0; u < n; ++u) {
    const double a = (u == 0) ? norm0 : norm;
    for (int i = 0; i < n; ++i) {
      m[static_cast<std::size_t>(u) * n + i] =
          a * std::cos(std::numbers::pi * (2.0 * i + 1.0) * u / (2.0 * n));
    }
  }
  return m;
}

}  // namespace

Mat2 dct2(const Mat2& plane) {
  const int h = plane.rows;
  const int w = plane.cols;
  const auto mr = dct_matrix(h);
  const auto mc = dct_matrix(w);
  // rows first: tmp[u][j] = sum_i mr[u][i] * x[i][j]
  Mat2 tmp(h, w);
  for (int u = 0; u < h; ++u) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int i = 0; i < h; ++i) {
        acc += mr[static_cast<std::size_t>(u) * h + i] * plane.at(i, j);
      }
      tmp.at(u, j) = acc;
    }
  }
  Mat2 out(h, w);
  for (int u = 0; u < h; ++u) {
    for (int v = 0; v < w; ++v) {
      double acc = 0.0;
      for (int j = 0; j < w; ++j) {
        acc += mc[static_cast<std::size_t>(v) * w + j] * tmp.at(u, j);
      }
      out.at(u, v) = acc;
    }
  }
  return out;
}

Mat2 idct2(const Mat2& spectrum) {
  const int h = spectrum.rows;
  const int w = spectrum.cols;
  const auto mr = dct_matrix(h);
  const auto mc = dct_matrix(w);
  // inverse is the transpose of the analysis matrix
  Mat2 tmp(h, w);
  for (int i = 0; i < h; ++i) {
    for (int v = 0; v < w; ++v) {
      double acc = 0.0;
      for (int u = 0; u < h; ++u) {
        acc += mr[static_cast<std::size_t>(u) * h + i] * spectrum.at(u, v);
      }
      tmp.at(i, v) = acc;
    }
  }
  Mat2 out(h, w);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int v = 0; v < w; ++v) {
        acc += mc[static_cast<std::size_t>(v) * w + j] * tmp.at(i, v);
      }
      out.at(i, j) = acc;
    }
  }
  return out;
}

Mat2 dct_basis_image(int u, int v, int rows, int cols) {
  if (u < 0 || u >= rows || v < 0 || v >= cols) {
    throw InvalidArgument("dct_basis_image: frequency out of range");
  }
  const double au = (u == 0) ? std::sqrt(1.0 / rows) : std::sqrt(2.0 / rows);
  const double av = (v == 0) ? std::sqrt(1.0 / cols) : std::sqrt(2.0 / cols);
  Mat2 out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const double ci = std::cos(std::numbers::pi * (2.0 * i + 1.0) * u / (2.0 * rows));
    for (int j = 0; j < cols; ++j) {
      const double cj = std::cos(std::numbers::pi * (2.0 * j + 1.0) * v / (2.0 * cols));
      out.at(i, j) = au * av * ci * cj;
    }
  }
  return out;
}

Mat2 channel_plane(const Tensor3& t, int ch) {
  Mat2 out(t.height(), t.width());
  for (int r = 0; r < t.height(); ++r) {
    for (int c = 0; c < t.width(); ++c) {
      out.at(r, c) = t.at(r, c, ch);
    }
  }
  return out;
}

void set_channel_plane(Tensor3& t, int ch, const Mat2& plane) {
  if (plane.rows != t.height() || plane.cols != t.width()) {
    throw InvalidArgument("set_channel_plane: shape mismatch");
  }
  for (int r = 0; r < t.height(); ++r) {
    for (int c = 0; c < t.width(); ++c) {
      t.at(r, c, ch) = plane.at(r, c);
    }
  }
}

Mat2 to_grayscale(const Image& image) {
  Mat2 out(image.height(), image.width());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      out.at(r, c) = 0.299 * image.at(r, c, 0) + 0.587 * image.at(r, c, 1) +
                     0.114 * image.at(r, c, 2);
    }
  }
  return out;
}

}  // namespace eclipse
