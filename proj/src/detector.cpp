#include "eclipse/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eclipse/errors.hpp"
#include "eclipse/spectral.hpp"

namespace eclipse {

namespace {

double dot(const FeatureRow& a, const FeatureRow& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double poly_kernel(double dot_value, double gamma, double coef0, int degree) {
  const double base = gamma * dot_value + coef0;
  double out = 1.0;
  for (int d = 0; d < degree; ++d) out *= base;
  return out;
}

void check_rectangular(const FeatureMatrix& rows, const char* who) {
  if (rows.empty()) return;
  const std::size_t width = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != width) {
      throw InvalidArgument(std::string(who) + ": ragged feature matrix");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw InvalidArgument(std::string(who) + ": non-finite feature value");
      }
    }
  }
}

}  // namespace

void Standardizer::fit(const FeatureMatrix& rows) {
  if (rows.empty()) throw InvalidArgument("Standardizer::fit: no rows");
  check_rectangular(rows, "Standardizer::fit");
  const std::size_t width = rows.front().size();
  mean.assign(width, 0.0);
  stddev.assign(width, 0.0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) mean[j] += row[j];
  }
  for (std::size_t j = 0; j < width; ++j) mean[j] /= static_cast<double>(rows.size());
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) {
      const double d = row[j] - mean[j];
      stddev[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < width; ++j) {
    stddev[j] = std::sqrt(stddev[j] / static_cast<double>(rows.size()));
    if (stddev[j] < 1e-12) stddev[j] = 1.0;
  }
}

FeatureRow Standardizer::transform(const FeatureRow& row) const {
  if (row.size() != mean.size()) {
    throw InvalidArgument("Standardizer::transform: width mismatch");
  }
  FeatureRow out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    out[j] = (row[j] - mean[j]) / stddev[j];
  }
  return out;
}

FeatureMatrix Standardizer::transform(const FeatureMatrix& rows) const {
  FeatureMatrix out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(transform(row));
  return out;
}

void PolyKernelParams::validate(std::size_t feature_count) const {
  if (degree < 1) throw InvalidArgument("PolyKernelParams: degree must be >= 1");
  if (!(c > 0.0)) throw InvalidArgument("PolyKernelParams: C must be > 0");
  if (gamma < 0.0) throw InvalidArgument("PolyKernelParams: gamma must be >= 0");
  if (!(kkt_tolerance > 0.0)) {
    throw InvalidArgument("PolyKernelParams: kkt_tolerance must be > 0");
  }
  if (feature_count == 0) throw InvalidArgument("PolyKernelParams: empty features");
}

double PolyKernelParams::effective_gamma(std::size_t feature_count) const {
  return gamma > 0.0 ? gamma : 1.0 / static_cast<double>(feature_count);
}

double SvmModel::decision_value(const FeatureRow& standardized) const {
  double acc = bias;
  for (std::size_t i = 0; i < support_vectors.size(); ++i) {
    acc += dual_coef[i] * poly_kernel(dot(support_vectors[i], standardized), gamma,
                                      params.coef0, params.degree);
  }
  return acc;
}

SvmModel smo_train(const FeatureMatrix& rows, const std::vector<int>& labels,
                   const PolyKernelParams& params, std::uint64_t seed) {
  if (rows.size() != labels.size() || rows.empty()) {
    throw InvalidArgument("smo_train: rows/labels size mismatch or empty");
  }
  check_rectangular(rows, "smo_train");
  for (int y : labels) {
    if (y != 1 && y != -1) throw InvalidArgument("smo_train: labels must be +-1");
  }
  params.validate(rows.front().size());

  const std::size_t n = rows.size();
  const double gamma = params.effective_gamma(rows.front().size());
  const double c_box = params.c;
  const double tol = params.kkt_tolerance;

  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double k = poly_kernel(dot(rows[i], rows[j]), gamma, params.coef0,
                                   params.degree);
      kernel[i * n + j] = k;
      kernel[j * n + i] = k;
    }
  }
  auto k_at = [&](std::size_t i, std::size_t j) { return kernel[i * n + j]; };

  std::vector<double> alpha(n, 0.0);
  double bias = 0.0;
  auto decision = [&](std::size_t i) {
    double acc = bias;
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha[j] != 0.0) acc += alpha[j] * labels[j] * k_at(j, i);
    }
    return acc;
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  int stalled = 0;
  for (int sweep = 0; sweep < params.max_sweeps && stalled < params.stall_passes;
       ++sweep) {
    int changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double err_i = decision(i) - labels[i];
      const bool violates = (labels[i] * err_i < -tol && alpha[i] < c_box) ||
                            (labels[i] * err_i > tol && alpha[i] > 0.0);
      if (!violates) continue;

      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      const double err_j = decision(j) - labels[j];

      const double alpha_i_old = alpha[i];
      const double alpha_j_old = alpha[j];
      double low;
      double high;
      if (labels[i] != labels[j]) {
        low = std::max(0.0, alpha[j] - alpha[i]);
        high = std::min(c_box, c_box + alpha[j] - alpha[i]);
      } else {
        low = std::max(0.0, alpha[i] + alpha[j] - c_box);
        high = std::min(c_box, alpha[i] + alpha[j]);
      }
      if (low >= high) continue;

      const double eta = 2.0 * k_at(i, j) - k_at(i, i) - k_at(j, j);
      if (eta >= 0.0) continue;

      double alpha_j_new = alpha_j_old - labels[j] * (err_i - err_j) / eta;
      alpha_j_new = std::clamp(alpha_j_new, low, high);
      if (std::abs(alpha_j_new - alpha_j_old) < 1e-7) continue;

      alpha[j] = alpha_j_new;
      alpha[i] = alpha_i_old +
                 labels[i] * labels[j] * (alpha_j_old - alpha_j_new);

      const double b1 = bias - err_i -
                        labels[i] * (alpha[i] - alpha_i_old) * k_at(i, i) -
                        labels[j] * (alpha[j] - alpha_j_old) * k_at(i, j);
      const double b2 = bias - err_j -
                        labels[i] * (alpha[i] - alpha_i_old) * k_at(i, j) -
                        labels[j] * (alpha[j] - alpha_j_old) * k_at(j, j);
      if (alpha[i] > 0.0 && alpha[i] < c_box) {
        bias = b1;
      } else if (alpha[j] > 0.0 && alpha[j] < c_box) {
        bias = b2;
      } else {
        bias = 0.5 * (b1 + b2);
      }
      ++changed;
    }
    stalled = changed == 0 ? stalled + 1 : 0;
  }

  SvmModel model;
  model.params = params;
  model.gamma = gamma;
  model.bias = bias;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] > 1e-8) {
      model.support_vectors.push_back(rows[i]);
      model.dual_coef.push_back(alpha[i] * labels[i]);
    }
  }
  return model;
}

double DetectorModel::score(const FeatureRow& features) const {
  return svm.decision_value(standardizer.transform(features));
}

namespace {

FoldMetrics evaluate_fold(const std::vector<double>& decisions,
                          const std::vector<bool>& is_adversarial) {
  FoldMetrics m;
  int tp = 0;
  int tn = 0;
  int fp = 0;
  int fn = 0;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const bool predicted = decisions[i] > 0.0;
    if (predicted && is_adversarial[i]) ++tp;
    if (predicted && !is_adversarial[i]) ++fp;
    if (!predicted && is_adversarial[i]) ++fn;
    if (!predicted && !is_adversarial[i]) ++tn;
  }
  const double n = static_cast<double>(decisions.size());
  m.accuracy = (tp + tn) / n;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  m.roc_auc = roc_auc(decisions, is_adversarial);
  return m;
}

MetricSummary summarize(const std::vector<FoldMetrics>& folds,
                        double FoldMetrics::* field) {
  MetricSummary s;
  for (const auto& f : folds) s.mean += f.*field;
  s.mean /= static_cast<double>(folds.size());
  for (const auto& f : folds) {
    const double d = f.*field - s.mean;
    s.stddev += d * d;
  }
  s.stddev = std::sqrt(s.stddev / static_cast<double>(folds.size()));
  return s;
}

}  // namespace

DetectorTrainResult train_detector(const FeatureMatrix& benign,
                                   const FeatureMatrix& adversarial,
                                   const DetectorTrainConfig& config) {
  if (config.folds < 2) throw InvalidArgument("train_detector: folds must be >= 2");
  if (benign.size() < static_cast<std::size_t>(config.folds) ||
      adversarial.size() < static_cast<std::size_t>(config.folds)) {
    throw InvalidArgument("train_detector: need at least `folds` samples per class");
  }
  check_rectangular(benign, "train_detector");
  check_rectangular(adversarial, "train_detector");
  if (benign.front().size() != adversarial.front().size()) {
    throw InvalidArgument("train_detector: class feature widths differ");
  }

  FeatureMatrix rows;
  std::vector<int> labels;
  rows.reserve(benign.size() + adversarial.size());
  for (const auto& r : benign) {
    rows.push_back(r);
    labels.push_back(-1);
  }
  for (const auto& r : adversarial) {
    rows.push_back(r);
    labels.push_back(1);
  }

  // Stratified assignment: shuffle within each class, then deal round-robin
  // so every fold sees both classes.
  std::vector<int> fold_of(rows.size(), -1);
  std::mt19937_64 rng(config.seed);
  for (int cls : {-1, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t k = 0; k < members.size(); ++k) {
      fold_of[members[k]] = static_cast<int>(k % static_cast<std::size_t>(config.folds));
    }
  }

  CVReport report;
  for (int fold = 0; fold < config.folds; ++fold) {
    FeatureMatrix train_rows;
    std::vector<int> train_labels;
    FeatureMatrix test_rows;
    std::vector<bool> test_labels;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (fold_of[i] == fold) {
        test_rows.push_back(rows[i]);
        test_labels.push_back(labels[i] == 1);
      } else {
        train_rows.push_back(rows[i]);
        train_labels.push_back(labels[i]);
      }
    }
    const bool train_has_both =
        std::find(train_labels.begin(), train_labels.end(), 1) != train_labels.end() &&
        std::find(train_labels.begin(), train_labels.end(), -1) != train_labels.end();
    const bool test_has_both =
        std::find(test_labels.begin(), test_labels.end(), true) != test_labels.end() &&
        std::find(test_labels.begin(), test_labels.end(), false) != test_labels.end();
    if (!train_has_both || !test_has_both) {
      throw InvalidArgument("train_detector: degenerate single-class fold");
    }

    Standardizer scaler;
    scaler.fit(train_rows);
    const SvmModel svm =
        smo_train(scaler.transform(train_rows), train_labels, config.kernel,
                  config.seed + 1000003ULL * static_cast<std::uint64_t>(fold + 1));
    std::vector<double> decisions;
    decisions.reserve(test_rows.size());
    for (const auto& r : test_rows) {
      decisions.push_back(svm.decision_value(scaler.transform(r)));
    }
    report.folds.push_back(evaluate_fold(decisions, test_labels));
  }
  report.accuracy = summarize(report.folds, &FoldMetrics::accuracy);
  report.precision = summarize(report.folds, &FoldMetrics::precision);
  report.recall = summarize(report.folds, &FoldMetrics::recall);
  report.f1 = summarize(report.folds, &FoldMetrics::f1);
  report.roc_auc = summarize(report.folds, &FoldMetrics::roc_auc);

  DetectorTrainResult result;
  result.report = std::move(report);
  result.model.recipe = kSpectralRecipe;
  result.model.bands = static_cast<int>(rows.front().size());
  result.model.standardizer.fit(rows);
  result.model.svm = smo_train(result.model.standardizer.transform(rows), labels,
                               config.kernel, config.seed);
  return result;
}

std::string detector_to_json(const DetectorModel& model) {
  nlohmann::json doc;
  doc["format"] = "eclipse-detector/1";
  doc["recipe"] = model.recipe;
  doc["bands"] = model.bands;
  doc["kernel"] = {{"degree", model.svm.params.degree},
                   {"c", model.svm.params.c},
                   {"gamma", model.svm.gamma},
                   {"coef0", model.svm.params.coef0}};
  doc["standardizer"] = {{"mean", model.standardizer.mean},
                         {"stddev", model.standardizer.stddev}};
  doc["svm"] = {{"bias", model.svm.bias},
                {"dual_coef", model.svm.dual_coef},
                {"support_vectors", model.svm.support_vectors}};
  return doc.dump(2);
}

DetectorModel detector_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("detector: invalid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "eclipse-detector/1") {
      throw SchemaError("detector: unsupported format tag");
    }
    DetectorModel model;
    model.recipe = doc.at("recipe").get<std::string>();
    model.bands = doc.at("bands").get<int>();
    const auto& kernel = doc.at("kernel");
    model.svm.params.degree = kernel.at("degree").get<int>();
    model.svm.params.c = kernel.at("c").get<double>();
    model.svm.params.coef0 = kernel.at("coef0").get<double>();
    model.svm.gamma = kernel.at("gamma").get<double>();
    model.svm.params.gamma = model.svm.gamma;
    const auto& scaler = doc.at("standardizer");
    model.standardizer.mean = scaler.at("mean").get<std::vector<double>>();
    model.standardizer.stddev = scaler.at("stddev").get<std::vector<double>>();
    const auto& svm = doc.at("svm");
    model.svm.bias = svm.at("bias").get<double>();
    model.svm.dual_coef = svm.at("dual_coef").get<std::vector<double>>();
    model.svm.support_vectors = svm.at("support_vectors").get<FeatureMatrix>();
    if (model.svm.dual_coef.size() != model.svm.support_vectors.size()) {
      throw SchemaError("detector: dual_coef/support_vectors length mismatch");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("detector: missing or mistyped field: ") + e.what());
  }
}

void save_detector(const DetectorModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_detector: cannot open " + path);
  out << detector_to_json(model) << '\n';
  if (!out) throw IoError("save_detector: write failed for " + path);
}

DetectorModel load_detector(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_detector: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return detector_from_json(buffer.str());
}

double roc_auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw InvalidArgument("roc_auc: scores/labels size mismatch or empty");
  }
  std::size_t positives = 0;
  for (bool b : labels) positives += b ? 1 : 0;
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw InvalidArgument("roc_auc: both classes must be present");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks across tied scores, then apply the Mann-Whitney identity.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]]) positive_rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

double quantile_linear(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

QueryStats query_stats_from_counts(const std::vector<std::int64_t>& success_queries,
                                   int failures) {
  if (success_queries.empty() && failures == 0) {
    throw InvalidArgument("query_stats: empty input");
  }
  QueryStats stats;
  stats.successes = static_cast<int>(success_queries.size());
  stats.failures = failures;
  if (success_queries.empty()) return stats;

  std::vector<double> sorted(success_queries.begin(), success_queries.end());
  std::sort(sorted.begin(), sorted.end());
  stats.median = quantile_linear(sorted, 0.5);
  stats.q1 = quantile_linear(sorted, 0.25);
  stats.q3 = quantile_linear(sorted, 0.75);
  stats.iqr = *stats.q3 - *stats.q1;
  return stats;
}

QueryStats query_stats(const std::vector<AttackOutcome>& outcomes) {
  std::vector<std::int64_t> success_queries;
  int failures = 0;
  for (const auto& outcome : outcomes) {
    if (outcome.success) {
      success_queries.push_back(outcome.queries.total);
    } else {
      ++failures;
    }
  }
  return query_stats_from_counts(success_queries, failures);
}

}  // namespace eclipse
