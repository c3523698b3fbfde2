#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eclipse/oracle.hpp"
#include "eclipse/saliency.hpp"
#include "eclipse/tensor.hpp"

namespace eclipse {

// One row of an attack trace; serialized as JSON lines by the CLI.
struct TracePoint {
  int t = 0;
  double fitness = 0.0;
  double epsilon = 0.0;
  double tau = 0.0;
  int mask_area = 0;
  std::uint64_t queries = 0;           // counted remote calls so far
  std::uint64_t queries_uncached = 0;  // what the count would be without caching
  bool accepted = false;
};

struct AttackOutcome {
  bool success = false;
  Image adversarial;
  QueryLedger queries;
  std::vector<TracePoint> trace;
  int iterations_used = 0;
  double final_fitness = 0.0;
};

// All Alg.-style constants are configuration with the hard-coded values as
// defaults; beta/step/kernel defaults follow the comparison parameter table.
struct EclipseConfig {
  double beta = 0.1;                  // L-inf budget
  int max_iterations = 1000;
  double epsilon0 = 0.1;              // initial step multiplier
  int sample_size = 64;               // probes per iteration
  int kernel_size = 3;                // Gaussian blur kernel, odd
  double sigma = 1.0;
  double probe_magnitude = 0.1;       // finite-difference probe, clipped to [0,1]
  int min_area = 0;                   // 0 = auto: 1% of H*W
  double success_threshold = 0.5;
  double epsilon_decay = 0.95;
  double epsilon_floor = 0.02;
  double tau_step = 0.01;
  double tau_cap = 0.5;
  double sampled_fraction_cap = 0.75;
  std::uint64_t seed = 0;
  bool blur_gradients = true;    // false = "no Gaussian blur" ablation
  bool use_heatmap_mask = true;  // false = "no local surrogate" ablation

  void validate() const;
};

// Mutable state of one ECLIPSE run, visible to observers for tracing and
// invariant checks.
struct EclipseState {
  Image current;                      // C_t
  Gradient gradient;                  // persists across iterations
  SpatialMask mask;                   // M_t
  double tau = 0.0;
  double epsilon = 0.0;
  double fitness = 0.0;
  std::vector<std::uint8_t> sampled;  // per (i,j,c) flat coordinate, since last reset
  std::int64_t sampled_count = 0;
  int iteration = 0;
};

struct EclipseIterationView {
  const EclipseState& state;          // after this iteration's updates
  std::span<const Coord> batch;
  const Image& candidate;             // post-clipping; equals state.current if accepted
  bool candidate_skipped = false;     // degenerate all-zero delta
  bool accepted = false;
  bool mask_reset = false;
};

using EclipseObserver = std::function<void(const EclipseIterationView&)>;

// Finite-difference probes at the batch coordinates:
//   grad[i,j,c] = f(clip01(C + probe * e_ijc)) - base_score
// where base_score is f(C), already known to the caller (from the initial
// query or the last accepted candidate), so each batch costs exactly
// batch.size() oracle calls. Only batch coordinates are updated; prior
// estimates elsewhere persist.
void estimate_gradients(const Oracle& oracle, const std::string& target_label,
                        const Image& current, double base_score,
                        std::span<const Coord> batch, double probe_magnitude,
                        Gradient& buffer);

// Hill climbing over blurred gradient estimates restricted to a saliency
// mask. Per iteration: sample coordinates from the mask without replacement,
// probe them, blur the gradient buffer, step by epsilon * delta / max|delta|,
// clip to budget and [0,1], accept if the target score improves, then decay
// epsilon (accepted only), advance the mask threshold and apply the reset
// rule. Returns success as soon as fitness exceeds the success threshold.
AttackOutcome eclipse_attack(const Oracle& oracle, const Heatmap& heatmap,
                             const Image& original, const std::string& target_label,
                             const EclipseConfig& config,
                             const EclipseObserver& observer = {});

struct SimbaConfig {
  double step = 0.1;
  double beta = 0.1;
  std::int64_t max_iterations = 100000;
  double success_threshold = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

// Pixel-basis random search: try +step then -step along a fresh random
// basis direction, keep whichever improves the target score.
AttackOutcome simba_attack(const Oracle& oracle, const Image& original,
                           const std::string& target_label, const SimbaConfig& config);

struct SimbaDctConfig {
  double step = 0.1;
  double beta = 0.1;
  std::int64_t max_iterations = 100000;
  double freq_fraction = 0.125;  // lowest fraction of frequencies per dimension
  double success_threshold = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

// Same search as simba_attack with orthonormal DCT basis directions
// restricted to low frequencies, applied in pixel space.
AttackOutcome simba_dct_attack(const Oracle& oracle, const Image& original,
                               const std::string& target_label,
                               const SimbaDctConfig& config);

struct SquareConfig {
  double beta = 0.1;
  double p_init = 0.2;  // start area ratio
  std::int64_t max_iterations = 10000;
  double success_threshold = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

// L-inf random search: vertical +-beta stripe initialization, then random
// squares of +-beta per channel, accepted if the target score improves.
// The square side follows the standard halving schedule scaled to
// max_iterations.
AttackOutcome square_attack_linf(const Oracle& oracle, const Image& original,
                                 const std::string& target_label,
                                 const SquareConfig& config);

// Area fraction at iteration t (0-based) of the halving schedule; exposed
// for tests.
double square_p_schedule(std::int64_t t, std::int64_t max_iterations, double p_init);

}  // namespace eclipse
