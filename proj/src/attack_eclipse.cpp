#include <algorithm>
#include <cmath>
#include <random>

#include "eclipse/attacks.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

void EclipseConfig::validate() const {
  if (beta < 0.0 || beta > 1.0) {
    throw InvalidArgument("EclipseConfig: beta must be in [0,1]");
  }
  if (max_iterations < 0) throw InvalidArgument("EclipseConfig: max_iterations < 0");
  if (!(epsilon0 > 0.0)) throw InvalidArgument("EclipseConfig: epsilon0 must be > 0");
  if (sample_size < 1) throw InvalidArgument("EclipseConfig: sample_size must be >= 1");
  if (kernel_size < 1 || kernel_size % 2 == 0) {
    throw InvalidArgument("EclipseConfig: kernel_size must be odd and positive");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("EclipseConfig: sigma must be > 0");
  if (!(probe_magnitude > 0.0) || probe_magnitude > 1.0) {
    throw InvalidArgument("EclipseConfig: probe_magnitude must be in (0,1]");
  }
  if (min_area < 0) throw InvalidArgument("EclipseConfig: min_area < 0");
  if (!(epsilon_decay > 0.0) || epsilon_decay > 1.0) {
    throw InvalidArgument("EclipseConfig: epsilon_decay must be in (0,1]");
  }
  if (epsilon_floor < 0.0) throw InvalidArgument("EclipseConfig: epsilon_floor < 0");
  if (tau_step < 0.0) throw InvalidArgument("EclipseConfig: tau_step < 0");
  if (tau_cap < 0.0 || tau_cap > 1.0) {
    throw InvalidArgument("EclipseConfig: tau_cap must be in [0,1]");
  }
  if (sampled_fraction_cap <= 0.0 || sampled_fraction_cap > 1.0) {
    throw InvalidArgument("EclipseConfig: sampled_fraction_cap must be in (0,1]");
  }
}

void estimate_gradients(const Oracle& oracle, const std::string& target_label,
                        const Image& current, double base_score,
                        std::span<const Coord> batch, double probe_magnitude,
                        Gradient& buffer) {
  if (!buffer.same_shape(current)) {
    throw InvalidArgument("estimate_gradients: buffer shape mismatch");
  }
  if (batch.empty()) return;
  Image probe = current;
  for (const Coord& coord : batch) {
    const double original_value = probe.at(coord.row, coord.col, coord.ch);
    probe.at(coord.row, coord.col, coord.ch) =
        std::clamp(original_value + probe_magnitude, 0.0, 1.0);
    buffer.at(coord.row, coord.col, coord.ch) =
        query_target(oracle, probe, target_label) - base_score;
    probe.at(coord.row, coord.col, coord.ch) = original_value;
  }
}

namespace {

// Coordinates inside the mask that were not probed since the last reset.
std::vector<Coord> unsampled_in_mask(const SpatialMask& mask,
                                     const std::vector<std::uint8_t>& sampled) {
  std::vector<Coord> pool;
  std::size_t flat = 0;
  for (int r = 0; r < mask.rows; ++r) {
    for (int c = 0; c < mask.cols; ++c) {
      const bool in_mask = mask.at(r, c);
      for (int ch = 0; ch < Tensor3::kChannels; ++ch, ++flat) {
        if (in_mask && !sampled[flat]) pool.push_back({r, c, ch});
      }
    }
  }
  return pool;
}

std::vector<Coord> draw_batch(std::vector<Coord>& pool, int count,
                              std::mt19937_64& rng) {
  const int n = static_cast<int>(pool.size());
  const int take = std::min(count, n);
  for (int i = 0; i < take; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  return {pool.begin(), pool.begin() + take};
}

}  // namespace

AttackOutcome eclipse_attack(const Oracle& oracle, const Heatmap& heatmap,
                             const Image& original, const std::string& target_label,
                             const EclipseConfig& config,
                             const EclipseObserver& observer) {
  config.validate();
  if (!in_unit_range(original)) {
    throw InvalidArgument("eclipse_attack: original image outside [0,1]");
  }
  const int h = original.height();
  const int w = original.width();
  if (config.use_heatmap_mask && (heatmap.rows != h || heatmap.cols != w)) {
    throw InvalidArgument("eclipse_attack: heatmap shape does not match image");
  }
  const std::int64_t min_area =
      config.min_area > 0
          ? config.min_area
          : std::max<std::int64_t>(1, std::llround(0.01 * h * w));
  const Kernel2D kernel = gaussian_kernel(config.kernel_size, config.sigma);

  CountingOracle counter(oracle);
  CachingOracle cached(counter);
  std::mt19937_64 rng(config.seed);

  EclipseState state;
  state.current = original;
  state.gradient = Gradient(h, w, 0.0);
  state.mask = SpatialMask(h, w, true);
  state.tau = 0.0;
  state.epsilon = config.epsilon0;
  state.sampled.assign(static_cast<std::size_t>(h) * w * Tensor3::kChannels, 0);

  counter.set_phase(QueryPhase::kInitial);
  state.fitness = query_target(cached, original, target_label);

  AttackOutcome outcome;
  outcome.adversarial = original;

  auto snapshot = [&](bool accepted) {
    TracePoint p;
    p.t = state.iteration;
    p.fitness = state.fitness;
    p.epsilon = state.epsilon;
    p.tau = state.tau;
    p.mask_area = state.mask.area();
    const QueryLedger ledger = counter.ledger();
    p.queries = ledger.total;
    p.queries_uncached = ledger.total + cached.cache_hits();
    p.accepted = accepted;
    return p;
  };

  auto finish = [&](bool success, int iterations) {
    outcome.success = success;
    outcome.adversarial = state.current;
    outcome.iterations_used = iterations;
    outcome.final_fitness = state.fitness;
    outcome.queries = counter.ledger();
    outcome.queries.cache_hits = cached.cache_hits();
    return outcome;
  };

  if (state.fitness > config.success_threshold) {
    return finish(true, 0);
  }

  for (int t = 1; t <= config.max_iterations; ++t) {
    state.iteration = t;

    std::vector<Coord> pool = unsampled_in_mask(state.mask, state.sampled);
    if (pool.empty()) {
      // mask exhausted between reset checks; fall back to all-ones now
      state.mask.fill(true);
      std::fill(state.sampled.begin(), state.sampled.end(), 0);
      state.sampled_count = 0;
      pool = unsampled_in_mask(state.mask, state.sampled);
    }
    const std::vector<Coord> batch = draw_batch(pool, config.sample_size, rng);
    for (const Coord& coord : batch) {
      state.sampled[state.current.flat_index(coord.row, coord.col, coord.ch)] = 1;
    }
    state.sampled_count += static_cast<std::int64_t>(batch.size());

    counter.set_phase(QueryPhase::kGradientProbe);
    estimate_gradients(cached, target_label, state.current, state.fitness,
                       batch, config.probe_magnitude, state.gradient);

    Gradient delta = state.gradient;
    if (config.blur_gradients) delta = gaussian_blur(delta, kernel);

    double max_abs = 0.0;
    for (double v : delta.values()) max_abs = std::max(max_abs, std::fabs(v));

    bool accepted = false;
    bool skipped = false;
    Image candidate = state.current;
    if (max_abs == 0.0) {
      // degenerate delta: no candidate this iteration, schedules still advance
      skipped = true;
    } else {
      candidate = state.current;
      auto& cv = candidate.values();
      const auto& dv = delta.values();
      const double scale = state.epsilon / max_abs;
      for (std::size_t i = 0; i < cv.size(); ++i) cv[i] += scale * dv[i];
      candidate = clip_to_budget(candidate, original, config.beta);

      counter.set_phase(QueryPhase::kFitnessCheck);
      const double candidate_fitness = query_target(cached, candidate, target_label);
      if (candidate_fitness > state.fitness) {
        accepted = true;
        state.fitness = candidate_fitness;
        state.current = candidate;
        state.epsilon = std::max(config.epsilon_floor,
                                 config.epsilon_decay * state.epsilon);
      }
    }

    state.tau = std::min(config.tau_cap, state.tau + config.tau_step);
    bool mask_reset = false;
    if (config.use_heatmap_mask) {
      state.mask = threshold_mask(heatmap, state.tau);
    }
    if (mask_reset_check(state.mask, state.sampled_count, min_area,
                         config.sampled_fraction_cap)) {
      state.mask.fill(true);
      std::fill(state.sampled.begin(), state.sampled.end(), 0);
      state.sampled_count = 0;
      mask_reset = true;
    }

    outcome.trace.push_back(snapshot(accepted));
    if (observer) {
      observer(EclipseIterationView{state, batch, candidate, skipped, accepted,
                                    mask_reset});
    }

    if (accepted && state.fitness > config.success_threshold) {
      return finish(true, t);
    }
  }
  return finish(false, config.max_iterations);
}

}  // namespace eclipse
