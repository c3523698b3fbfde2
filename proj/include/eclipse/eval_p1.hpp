#pragma once

#include <string>
#include <vector>

#include "eclipse/oracle.hpp"
#include "eclipse/tensor.hpp"

namespace eclipse {

// One JPEG round-trip measurement for a single adversarial image: how much
// target confidence the example loses when re-encoded at the given quality.
struct CompressionRecord {
  std::string image_id;
  int quality = 75;
  double pre_score = 0.0;   // f(adv)
  double post_score = 0.0;  // f(jpeg_roundtrip(adv, quality))
  double loss = 0.0;        // pre_score - post_score
};

// Aggregate over a batch of records at one quality setting.
struct P1Report {
  int quality = 75;
  int n = 0;
  double median_loss = 0.0;
  double low_loss_pct = 0.0;   // share of records with loss < kLowLossThreshold
  double surviving_pct = 0.0;  // share of records with loss < kSurvivingThreshold
};

inline constexpr double kLowLossThreshold = 0.3;
inline constexpr double kSurvivingThreshold = 0.05;

// Issues exactly two oracle queries: the adversarial image as-is and its
// JPEG round-trip at `quality`.
CompressionRecord compression_loss(const Oracle& oracle, const Image& adversarial,
                                   const std::string& target_label, int quality,
                                   std::string image_id = {});

// Aggregates records taken at a single quality; mixed qualities are rejected.
P1Report p1_metrics(const std::vector<CompressionRecord>& records);

// Groups mixed-quality records and aggregates each group, ascending by quality.
std::vector<P1Report> p1_metrics_by_quality(const std::vector<CompressionRecord>& records);

// Midpoint convention for even-length input.
double median(std::vector<double> values);

}  // namespace eclipse
