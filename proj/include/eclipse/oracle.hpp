#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "eclipse/tensor.hpp"

namespace eclipse {

// Per-label confidence scores, each in [0,1]. May be a top-k subset, in
// which case they do not sum to 1.
struct ConfidenceResult {
  std::map<std::string, double> scores;

  // Absent labels score 0: a target outside the oracle's top-k is simply
  // not confident yet, not an error.
  double score_or_zero(const std::string& label) const {
    auto it = scores.find(label);
    return it == scores.end() ? 0.0 : it->second;
  }
};

enum class QueryPhase { kInitial = 0, kGradientProbe = 1, kFitnessCheck = 2 };
inline constexpr int kNumQueryPhases = 3;
const char* query_phase_name(QueryPhase phase);

// Exact accounting of victim-model calls. cache_hits tracks queries that a
// caching layer answered without touching the model, so traces can report
// the cost both with and without caching.
struct QueryLedger {
  std::uint64_t total = 0;
  std::uint64_t per_phase[kNumQueryPhases] = {0, 0, 0};
  std::uint64_t cache_hits = 0;

  std::uint64_t phase(QueryPhase p) const {
    return per_phase[static_cast<int>(p)];
  }
  std::uint64_t uncached_equivalent() const { return total + cache_hits; }
};

// Black-box classifier: one query in, per-label confidences out.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual ConfidenceResult classify(const Image& image) const = 0;
};

double query_target(const Oracle& oracle, const Image& image,
                    const std::string& target_label);

// Deterministic in-process oracle: softmax over per-label template
// correlations, score_k = softmax_k(<template_k, image> / temperature).
struct SyntheticOracleSpec {
  std::map<std::string, Tensor3> templates;
  double temperature = 1.0;
  int top_k = 0;  // 0 = return the full distribution

  void validate() const;
};

class SyntheticOracle : public Oracle {
 public:
  explicit SyntheticOracle(SyntheticOracleSpec spec);

  ConfidenceResult classify(const Image& image) const override;
  const SyntheticOracleSpec& spec() const { return spec_; }
  int height() const { return height_; }
  int width() const { return width_; }

 private:
  SyntheticOracleSpec spec_;
  int height_ = 0;
  int width_ = 0;
};

std::string synthetic_spec_to_json(const SyntheticOracleSpec& spec);
SyntheticOracleSpec synthetic_spec_from_json(const std::string& json_text);
SyntheticOracleSpec load_synthetic_spec(const std::string& path);
void save_synthetic_spec(const SyntheticOracleSpec& spec, const std::string& path);

// Increments the ledger once per underlying call. Each attack run owns its
// own counting wrapper; counters are atomic so independent runs may share
// the wrapped oracle.
class CountingOracle : public Oracle {
 public:
  explicit CountingOracle(const Oracle& inner) : inner_(inner) {}

  ConfidenceResult classify(const Image& image) const override;

  // Phase applies to subsequent queries of this wrapper. A single attack
  // run issues queries sequentially, so this is not synchronized.
  void set_phase(QueryPhase phase) { phase_ = phase; }

  QueryLedger ledger() const;

 private:
  const Oracle& inner_;
  QueryPhase phase_ = QueryPhase::kInitial;
  mutable std::atomic<std::uint64_t> counts_[kNumQueryPhases] = {};
};

// Memoizes results keyed by the quantized (0..255) byte content of the
// image, so re-querying the current best solution costs nothing.
class CachingOracle : public Oracle {
 public:
  explicit CachingOracle(const Oracle& inner) : inner_(inner) {}

  ConfidenceResult classify(const Image& image) const override;

  std::uint64_t cache_hits() const { return hits_.load(); }
  std::size_t cache_size() const;

 private:
  const Oracle& inner_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, ConfidenceResult> cache_;
  mutable std::atomic<std::uint64_t> hits_ = 0;
};

}  // namespace eclipse
