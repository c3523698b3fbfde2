#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eclipse/attacks.hpp"

namespace eclipse {

using FeatureRow = std::vector<double>;
using FeatureMatrix = std::vector<FeatureRow>;

// Per-feature affine map to zero mean / unit variance, fitted on training
// data only. Constant features keep stddev 1 so they map to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  void fit(const FeatureMatrix& rows);
  FeatureRow transform(const FeatureRow& row) const;
  FeatureMatrix transform(const FeatureMatrix& rows) const;
};

// Polynomial kernel K(u, v) = (gamma * <u, v> + coef0)^degree with
// box-constraint C. gamma == 0 selects 1 / feature_count at fit time.
struct PolyKernelParams {
  int degree = 3;
  double c = 1.0;
  double gamma = 0.0;
  double coef0 = 1.0;
  double kkt_tolerance = 1e-3;
  int stall_passes = 8;        // consecutive sweeps without an alpha update
  int max_sweeps = 500;        // hard cap on full passes over the data

  void validate(std::size_t feature_count) const;
  double effective_gamma(std::size_t feature_count) const;
};

// Kernel expansion over the retained support vectors, in standardized
// feature space. dual_coef[i] is alpha_i * y_i.
struct SvmModel {
  PolyKernelParams params;
  double gamma = 0.0;
  FeatureMatrix support_vectors;
  std::vector<double> dual_coef;
  double bias = 0.0;

  double decision_value(const FeatureRow& standardized) const;
};

// Sequential minimal optimization on (rows, labels in {-1, +1}); the second
// working-set index is drawn from `seed`, which fixes tie-breaking.
SvmModel smo_train(const FeatureMatrix& rows, const std::vector<int>& labels,
                   const PolyKernelParams& params, std::uint64_t seed);

struct FoldMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population convention
};

struct CVReport {
  std::vector<FoldMetrics> folds;
  MetricSummary accuracy;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  MetricSummary roc_auc;
};

// Detector = standardizer + SVM + the feature recipe the inputs must match.
struct DetectorModel {
  std::string recipe;
  int bands = 0;
  Standardizer standardizer;
  SvmModel svm;

  // Raw (unstandardized) features in, margin out; > 0 flags adversarial.
  double score(const FeatureRow& features) const;
};

struct DetectorTrainConfig {
  int folds = 5;
  PolyKernelParams kernel;
  std::uint64_t seed = 0;
};

struct DetectorTrainResult {
  DetectorModel model;
  CVReport report;
};

// Stratified k-fold cross-validation, positive class = adversarial, then a
// final fit on all rows. Both classes need at least `folds` samples.
DetectorTrainResult train_detector(const FeatureMatrix& benign,
                                   const FeatureMatrix& adversarial,
                                   const DetectorTrainConfig& config);

std::string detector_to_json(const DetectorModel& model);
DetectorModel detector_from_json(const std::string& text);
void save_detector(const DetectorModel& model, const std::string& path);
DetectorModel load_detector(const std::string& path);

// Mann-Whitney AUC: probability a positive outranks a negative, ties as 1/2.
double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct QueryStats {
  int successes = 0;
  int failures = 0;
  // Absent when no run succeeded. Quartiles interpolate linearly between
  // order statistics.
  std::optional<double> median;
  std::optional<double> q1;
  std::optional<double> q3;
  std::optional<double> iqr;
};

QueryStats query_stats(const std::vector<AttackOutcome>& outcomes);
QueryStats query_stats_from_counts(const std::vector<std::int64_t>& success_queries,
                                   int failures);

}  // namespace eclipse
