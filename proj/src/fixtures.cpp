#include "eclipse/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "eclipse/codec.hpp"
#include "eclipse/errors.hpp"

namespace eclipse::fixtures {

namespace {

constexpr std::uint64_t kSeedStride = 0x9E3779B97F4A7C15ULL;

// Per-channel inverse DCT of a handful of low-frequency coefficients.
Image band_limited_noise(int height, int width, int max_band, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Image out(height, width);
  for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
    Mat2 coeffs(height, width);
    const int bu = std::min(max_band, height - 1);
    const int bv = std::min(max_band, width - 1);
    for (int u = 0; u <= bu; ++u) {
      for (int v = 0; v <= bv; ++v) {
        coeffs.at(u, v) = normal(rng) / (1.0 + u + v);
      }
    }
    set_channel_plane(out, ch, idct2(coeffs));
  }
  return out;
}

// Full-spectrum noise with a natural-image-like power-law amplitude
// falloff, so every radial band carries some organic energy. The exponent
// is drawn per image: the corpus then spans flat-textured and busy images
// rather than sharing one rigid spectral envelope.
Image natural_noise(int height, int width, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> exponent_dist(1.2, 2.4);
  Image out(height, width);
  for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
    const double exponent = exponent_dist(rng);
    Mat2 coeffs(height, width);
    for (int u = 0; u < height; ++u) {
      for (int v = 0; v < width; ++v) {
        coeffs.at(u, v) = normal(rng) / std::pow(1.0 + u + v, exponent);
      }
    }
    set_channel_plane(out, ch, idct2(coeffs));
  }
  return out;
}

void snap_to_byte_grid(Image& image) {
  for (double& v : image.values()) {
    v = std::clamp(std::round(v * 255.0) / 255.0, 0.0, 1.0);
  }
}

double dot(const Tensor3& a, const Tensor3& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.values()[i] * b.values()[i];
  return acc;
}

}  // namespace

Image smooth_random_image(int height, int width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image image = natural_noise(height, width, rng);
  double lo = image.values().front();
  double hi = lo;
  for (double v : image.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  // Random contrast: washed-out through punchy images, so absolute band
  // energies genuinely vary across the corpus instead of being pinned by
  // the range normalization.
  std::uniform_real_distribution<double> contrast_dist(0.06, 0.38);
  const double contrast = contrast_dist(rng);
  const double span = hi - lo;
  for (double& v : image.values()) {
    v = span > 0.0 ? 0.5 + contrast * (2.0 * (v - lo) / span - 1.0) : 0.5;
  }
  // A broad lighting gradient of random strength: some images carry strong
  // low-frequency structure, others almost none.
  Image lighting = band_limited_noise(height, width, 3, rng);
  double lighting_peak = 1e-12;
  for (double v : lighting.values()) {
    lighting_peak = std::max(lighting_peak, std::abs(v));
  }
  std::uniform_real_distribution<double> lighting_dist(0.0, 0.20);
  const double lighting_scale = lighting_dist(rng) / lighting_peak;
  for (std::size_t i = 0; i < image.values().size(); ++i) {
    image.values()[i] += lighting_scale * lighting.values()[i];
  }
  // Soft mid-frequency texture (smoothed noise) of random strength.
  Image texture(height, width);
  std::normal_distribution<double> unit(0.0, 1.0);
  for (double& v : texture.values()) v = unit(rng);
  texture = gaussian_blur(texture, gaussian_kernel(3, 1.0));
  std::uniform_real_distribution<double> texture_dist(0.0, 0.38);
  const double texture_scale = texture_dist(rng);
  for (std::size_t i = 0; i < image.values().size(); ++i) {
    image.values()[i] += texture_scale * texture.values()[i];
  }
  // Grain with a per-image level, like sensor noise: gives every frequency
  // band organic energy whose magnitude varies between images.
  std::uniform_real_distribution<double> level(0.005, 0.035);
  std::normal_distribution<double> grain(0.0, level(rng));
  for (double& v : image.values()) {
    v = std::clamp(v + grain(rng), 0.05, 0.95);
  }
  snap_to_byte_grid(image);
  return image;
}

DeskOracle make_desk_oracle(int height, int width, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ kSeedStride);

  Image smooth = band_limited_noise(height, width, 3, rng);
  double peak = 0.0;
  for (double v : smooth.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) peak = 1.0;

  // Score difference direction: 70% smooth, 30% pixel-alternating.
  Image direction(height, width);
  double l1 = 0.0;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double checker = (r + c) % 2 == 0 ? 1.0 : -1.0;
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        const double d = 0.7 * smooth.at(r, c, ch) / peak + 0.3 * checker;
        direction.at(r, c, ch) = d;
        l1 += std::abs(d);
      }
    }
  }

  DeskOracle oracle;
  Image t_cat(height, width);
  Image t_dog(height, width);
  for (std::size_t i = 0; i < direction.size(); ++i) {
    t_dog.values()[i] = 0.5 + 0.5 * direction.values()[i];
    t_cat.values()[i] = 0.5 - 0.5 * direction.values()[i];
  }
  // Temperature such that a full L-inf budget of 0.1 along the direction is
  // worth about 6 logits: far enough to matter, near enough to reach.
  oracle.spec.temperature = 0.1 * l1 / 6.0;
  oracle.spec.templates[oracle.source_label] = std::move(t_cat);
  oracle.spec.templates[oracle.target_label] = std::move(t_dog);
  oracle.spec.validate();
  return oracle;
}

std::vector<Image> make_benign(int height, int width, int count,
                               std::uint64_t seed) {
  std::vector<Image> images;
  images.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    images.push_back(smooth_random_image(
        height, width, seed + kSeedStride * static_cast<std::uint64_t>(i + 1)));
  }
  return images;
}

std::vector<Image> make_corpus(const DeskOracle& oracle, int count,
                               std::uint64_t seed, double initial_logit) {
  const Image& t_dog = oracle.spec.templates.at(oracle.target_label);
  const Image& t_cat = oracle.spec.templates.at(oracle.source_label);
  const int height = t_dog.height();
  const int width = t_dog.width();
  Image direction(height, width);
  for (std::size_t i = 0; i < direction.size(); ++i) {
    direction.values()[i] = t_dog.values()[i] - t_cat.values()[i];
  }

  // Shift images only along the smooth part of the score direction; pushing
  // the pixel-alternating part into every base image would hand the images
  // an unnatural high-frequency fingerprint of their own.
  Image smooth_direction = direction;
  double checker_dot = 0.0;
  double checker_norm = 0.0;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double checker = (r + c) % 2 == 0 ? 1.0 : -1.0;
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        checker_dot += direction.at(r, c, ch) * checker;
        checker_norm += 1.0;
      }
    }
  }
  const double checker_coeff = checker_dot / checker_norm;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double checker = (r + c) % 2 == 0 ? 1.0 : -1.0;
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        smooth_direction.at(r, c, ch) -= checker_coeff * checker;
      }
    }
  }
  const double cross = dot(direction, smooth_direction);
  if (cross <= 0.0) throw InvalidArgument("make_corpus: degenerate oracle templates");

  std::vector<Image> corpus;
  corpus.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Image image = smooth_random_image(height, width,
                                      seed + kSeedStride * static_cast<std::uint64_t>(i + 1));
    // Slide the image along the smooth direction until the target logit
    // sits where requested, then re-snap to the byte grid.
    const double logit_now = dot(direction, image) / oracle.spec.temperature;
    const double shift = (initial_logit - logit_now) * oracle.spec.temperature / cross;
    for (std::size_t k = 0; k < image.size(); ++k) {
      image.values()[k] += shift * smooth_direction.values()[k];
    }
    snap_to_byte_grid(image);
    corpus.push_back(std::move(image));
  }
  return corpus;
}

Heatmap desk_heatmap(const DeskOracle& oracle) {
  const Image& t_dog = oracle.spec.templates.at(oracle.target_label);
  const Image& t_cat = oracle.spec.templates.at(oracle.source_label);
  Mat2 salience(t_dog.height(), t_dog.width());
  for (int r = 0; r < t_dog.height(); ++r) {
    for (int c = 0; c < t_dog.width(); ++c) {
      double acc = 0.0;
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        acc += std::abs(t_dog.at(r, c, ch) - t_cat.at(r, c, ch));
      }
      salience.at(r, c) = acc;
    }
  }
  return normalize_heatmap(salience);
}

std::vector<std::string> write_corpus(const std::string& dir,
                                      const DeskOracle& oracle,
                                      const std::vector<Image>& corpus) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("write_corpus: cannot create " + dir + ": " + ec.message());

  std::ofstream manifest(fs::path(dir) / "manifest.csv");
  if (!manifest) throw IoError("write_corpus: cannot open manifest.csv");
  manifest << "filename,ground_truth_label,target_label\n";

  std::vector<std::string> names;
  names.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03zu.png", i);
    write_png(corpus[i], (fs::path(dir) / name).string());
    manifest << name << ',' << oracle.source_label << ',' << oracle.target_label
             << '\n';
    names.emplace_back(name);
  }
  if (!manifest) throw IoError("write_corpus: manifest write failed");
  manifest.close();

  save_synthetic_spec(oracle.spec, (fs::path(dir) / "oracle.json").string());
  write_png_gray(desk_heatmap(oracle), (fs::path(dir) / "heatmap.png").string());
  return names;
}

}  // namespace eclipse::fixtures
