#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eclipse/oracle.hpp"
#include "eclipse/saliency.hpp"
#include "eclipse/tensor.hpp"

namespace eclipse::fixtures {

// Random image with a natural-looking power-law amplitude spectrum plus
// per-image contrast, lighting, texture and grain variation, snapped to the
// 8-bit grid so PNG round-trips and query-cache keys are lossless.
Image smooth_random_image(int height, int width, std::uint64_t seed);

// A batch of independent natural images (no relationship to any oracle);
// the negative class for detector experiments.
std::vector<Image> make_benign(int height, int width, int count,
                               std::uint64_t seed);

// Two-label synthetic victim ("cat" vs "dog") whose score surface mixes a
// smooth component with a pixel-alternating one. The smooth part rewards
// low-frequency perturbations; the alternating part is only reachable by
// spiky perturbations, which JPEG re-encoding then destroys.
struct DeskOracle {
  SyntheticOracleSpec spec;
  std::string source_label = "cat";
  std::string target_label = "dog";
};

DeskOracle make_desk_oracle(int height, int width, std::uint64_t seed);

// Images whose initial target-label logit sits near `initial_logit`
// (default: solidly classified as the source label, target score ~0.12).
std::vector<Image> make_corpus(const DeskOracle& oracle, int count,
                               std::uint64_t seed, double initial_logit = -2.0);

// Saliency a local surrogate would produce for the desk oracle: normalized
// channel-summed |T_target - T_source|.
Heatmap desk_heatmap(const DeskOracle& oracle);

// Writes <dir>/img_###.png, <dir>/manifest.csv (filename, ground truth,
// target), <dir>/oracle.json and <dir>/heatmap.png. Returns image ids.
std::vector<std::string> write_corpus(const std::string& dir,
                                      const DeskOracle& oracle,
                                      const std::vector<Image>& corpus);

}  // namespace eclipse::fixtures
