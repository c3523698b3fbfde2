#include <algorithm>
#include <cmath>
#include <random>

#include "eclipse/attacks.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

void SquareConfig::validate() const {
  if (beta < 0.0 || beta > 1.0) throw InvalidArgument("SquareConfig: beta must be in [0,1]");
  if (!(p_init > 0.0) || p_init > 1.0) {
    throw InvalidArgument("SquareConfig: p_init must be in (0,1]");
  }
  if (max_iterations < 0) throw InvalidArgument("SquareConfig: max_iterations < 0");
}

// Fraction of pixels covered by the square at iteration t. The halving
// points follow the usual {10,50,...,8000}-of-10000 schedule, rescaled to
// the configured iteration budget.
double square_p_schedule(std::int64_t t, std::int64_t max_iterations, double p_init) {
  if (max_iterations <= 0) return p_init;
  const double scaled = static_cast<double>(t) * 10000.0 /
                        static_cast<double>(max_iterations);
  static constexpr double kKnots[] = {10, 50, 200, 1000, 2000, 4000, 6000, 8000};
  int halvings = 0;
  for (double knot : kKnots) {
    if (scaled > knot) ++halvings;
  }
  return p_init / static_cast<double>(1 << halvings);
}

AttackOutcome square_attack_linf(const Oracle& oracle, const Image& original,
                                 const std::string& target_label,
                                 const SquareConfig& config) {
  config.validate();
  if (!in_unit_range(original)) {
    throw InvalidArgument("square_attack: original image outside [0,1]");
  }

  CountingOracle counter(oracle);
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> coin(0, 1);

  const int h = original.height();
  const int w = original.width();
  AttackOutcome outcome;
  Image current = original;

  counter.set_phase(QueryPhase::kInitial);
  double fitness = query_target(counter, original, target_label);
  counter.set_phase(QueryPhase::kFitnessCheck);

  auto snapshot = [&](std::int64_t t, bool accepted, int area) {
    TracePoint p;
    p.t = static_cast<int>(t);
    p.fitness = fitness;
    p.epsilon = config.beta;
    p.tau = 0.0;
    p.mask_area = area;
    p.queries = counter.ledger().total;
    p.queries_uncached = p.queries;
    p.accepted = accepted;
    return p;
  };

  auto finish = [&](bool success, std::int64_t iterations) {
    outcome.success = success;
    outcome.adversarial = current;
    outcome.iterations_used = static_cast<int>(iterations);
    outcome.final_fitness = fitness;
    outcome.queries = counter.ledger();
    return outcome;
  };

  if (fitness > config.success_threshold) return finish(true, 0);
  if (config.max_iterations == 0) return finish(false, 0);

  // Initialisation: vertical one-pixel stripes of +-beta, kept only if they
  // already improve the target confidence.
  {
    Image candidate = original;
    for (int c = 0; c < w; ++c) {
      for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
        const double sign = coin(rng) == 0 ? -1.0 : 1.0;
        for (int r = 0; r < h; ++r) {
          candidate.at(r, c, ch) =
              std::clamp(original.at(r, c, ch) + sign * config.beta, 0.0, 1.0);
        }
      }
    }
    if (!(candidate == current)) {
      const double score = query_target(counter, candidate, target_label);
      if (score > fitness) {
        fitness = score;
        current = std::move(candidate);
      }
    }
    outcome.trace.push_back(snapshot(0, fitness > config.success_threshold ||
                                            !(current == original),
                                     h * w));
    if (fitness > config.success_threshold) return finish(true, 0);
  }

  for (std::int64_t t = 1; t <= config.max_iterations; ++t) {
    const double p = square_p_schedule(t, config.max_iterations, config.p_init);
    int side = static_cast<int>(
        std::lround(std::sqrt(p * static_cast<double>(h) * static_cast<double>(w))));
    side = std::clamp(side, 1, std::min(h, w));

    std::uniform_int_distribution<int> row_dist(0, h - side);
    std::uniform_int_distribution<int> col_dist(0, w - side);
    const int r0 = row_dist(rng);
    const int c0 = col_dist(rng);

    Image candidate = current;
    for (int ch = 0; ch < Tensor3::kChannels; ++ch) {
      const double sign = coin(rng) == 0 ? -1.0 : 1.0;
      for (int r = r0; r < r0 + side; ++r) {
        for (int c = c0; c < c0 + side; ++c) {
          candidate.at(r, c, ch) =
              std::clamp(original.at(r, c, ch) + sign * config.beta, 0.0, 1.0);
        }
      }
    }

    bool accepted = false;
    if (!(candidate == current)) {
      const double score = query_target(counter, candidate, target_label);
      if (score > fitness) {
        fitness = score;
        current = std::move(candidate);
        accepted = true;
      }
    }
    outcome.trace.push_back(snapshot(t, accepted, side * side));
    if (accepted && fitness > config.success_threshold) return finish(true, t);
  }
  return finish(false, config.max_iterations);
}

}  // namespace eclipse
