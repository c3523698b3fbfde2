#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "eclipse/attacks.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

void SimbaConfig::validate() const {
  if (beta < 0.0 || beta > 1.0) throw InvalidArgument("SimbaConfig: beta must be in [0,1]");
  if (!(step > 0.0)) throw InvalidArgument("SimbaConfig: step must be > 0");
  if (step > beta) throw InvalidArgument("SimbaConfig: step must be <= beta");
  if (max_iterations < 0) throw InvalidArgument("SimbaConfig: max_iterations < 0");
}

void SimbaDctConfig::validate() const {
  if (beta < 0.0 || beta > 1.0) {
    throw InvalidArgument("SimbaDctConfig: beta must be in [0,1]");
  }
  if (!(step > 0.0)) throw InvalidArgument("SimbaDctConfig: step must be > 0");
  if (step > beta) throw InvalidArgument("SimbaDctConfig: step must be <= beta");
  if (!(freq_fraction > 0.0) || freq_fraction > 1.0) {
    throw InvalidArgument("SimbaDctConfig: freq_fraction must be in (0,1]");
  }
  if (max_iterations < 0) throw InvalidArgument("SimbaDctConfig: max_iterations < 0");
}

namespace {

// Shared accept-if-improved loop over a prebuilt direction list. The
// candidate builder returns C +- step along direction d, before budget
// clipping.
struct BasisSearch {
  const Oracle& oracle;
  const Image& original;
  const std::string& target_label;
  double step;
  double beta;
  double success_threshold;
  std::int64_t max_iterations;

  template <typename MakeCandidate>
  AttackOutcome run(std::int64_t direction_count, std::uint64_t seed,
                    MakeCandidate&& make_candidate) {
    CountingOracle counter(oracle);
    std::mt19937_64 rng(seed);

    std::vector<std::int64_t> order(direction_count);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    AttackOutcome outcome;
    Image current = original;
    counter.set_phase(QueryPhase::kInitial);
    double fitness = query_target(counter, original, target_label);
    counter.set_phase(QueryPhase::kFitnessCheck);

    const int hw = original.height() * original.width();
    auto snapshot = [&](std::int64_t t, bool accepted) {
      TracePoint p;
      p.t = static_cast<int>(t);
      p.fitness = fitness;
      p.epsilon = step;
      p.tau = 0.0;
      p.mask_area = hw;
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

    if (fitness > success_threshold) return finish(true, 0);

    const std::int64_t trials = std::min<std::int64_t>(max_iterations, direction_count);
    for (std::int64_t t = 1; t <= trials; ++t) {
      const std::int64_t dir = order[t - 1];
      bool accepted = false;
      for (double sign : {+1.0, -1.0}) {
        Image candidate = clip_to_budget(make_candidate(current, dir, sign),
                                         original, beta);
        if (candidate == current) continue;  // clipped to a no-op, not worth a query
        const double score = query_target(counter, candidate, target_label);
        if (score > fitness) {
          fitness = score;
          current = std::move(candidate);
          accepted = true;
          break;
        }
      }
      outcome.trace.push_back(snapshot(t, accepted));
      if (fitness > success_threshold) return finish(true, t);
    }
    return finish(false, trials);
  }
};

}  // namespace

AttackOutcome simba_attack(const Oracle& oracle, const Image& original,
                           const std::string& target_label, const SimbaConfig& config) {
  config.validate();
  if (!in_unit_range(original)) {
    throw InvalidArgument("simba_attack: original image outside [0,1]");
  }
  const std::int64_t directions =
      static_cast<std::int64_t>(original.size());  // one per (i,j,c)
  BasisSearch search{oracle,      original,
                     target_label, config.step,
                     config.beta, config.success_threshold,
                     config.max_iterations};
  return search.run(directions, config.seed,
                    [&](const Image& current, std::int64_t dir, double sign) {
                      Image candidate = current;
                      candidate.values()[static_cast<std::size_t>(dir)] +=
                          sign * config.step;
                      return candidate;
                    });
}

AttackOutcome simba_dct_attack(const Oracle& oracle, const Image& original,
                               const std::string& target_label,
                               const SimbaDctConfig& config) {
  config.validate();
  if (!in_unit_range(original)) {
    throw InvalidArgument("simba_dct_attack: original image outside [0,1]");
  }
  const int h = original.height();
  const int w = original.width();
  const int freq_h = std::max(1, static_cast<int>(std::ceil(config.freq_fraction * h)));
  const int freq_w = std::max(1, static_cast<int>(std::ceil(config.freq_fraction * w)));
  const std::int64_t directions =
      static_cast<std::int64_t>(freq_h) * freq_w * Tensor3::kChannels;

  BasisSearch search{oracle,      original,
                     target_label, config.step,
                     config.beta, config.success_threshold,
                     config.max_iterations};
  return search.run(
      directions, config.seed,
      [&](const Image& current, std::int64_t dir, double sign) {
        const int ch = static_cast<int>(dir % Tensor3::kChannels);
        const std::int64_t uv = dir / Tensor3::kChannels;
        const int u = static_cast<int>(uv / freq_w);
        const int v = static_cast<int>(uv % freq_w);
        const Mat2 basis = dct_basis_image(u, v, h, w);
        Image candidate = current;
        for (int r = 0; r < h; ++r) {
          for (int c = 0; c < w; ++c) {
            candidate.at(r, c, ch) += sign * config.step * basis.at(r, c);
          }
        }
        return candidate;
      });
}

}  // namespace eclipse
