#include "eclipse/eclipse_c.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "eclipse/attacks.hpp"
#include "eclipse/codec.hpp"
#include "eclipse/detector.hpp"
#include "eclipse/errors.hpp"
#include "eclipse/eval_p1.hpp"
#include "eclipse/fixtures.hpp"
#include "eclipse/oracle.hpp"
#include "eclipse/remote_oracle.hpp"
#include "eclipse/saliency.hpp"
#include "eclipse/spectral.hpp"

struct ecl_image {
  eclipse::Image image;
};

struct ecl_oracle {
  std::unique_ptr<eclipse::Oracle> oracle;
};

struct ecl_heatmap {
  eclipse::Heatmap heat;
};

struct ecl_attack_config {
  ecl_attack_kind kind = ECL_ATTACK_ECLIPSE;
  eclipse::EclipseConfig eclipse;
  eclipse::SimbaConfig simba;
  eclipse::SimbaDctConfig simba_dct;
  eclipse::SquareConfig square;
};

struct ecl_outcome {
  eclipse::AttackOutcome outcome;
};

struct ecl_detector {
  eclipse::DetectorModel model;
};

struct ecl_cv_report {
  eclipse::CVReport report;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& message) { t_last_error = message; }

template <typename Fn>
ecl_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return ECL_OK;
  } catch (const eclipse::InvalidArgument& e) {
    set_error(e.what());
    return ECL_ERR_INVALID_ARGUMENT;
  } catch (const eclipse::IoError& e) {
    set_error(e.what());
    return ECL_ERR_IO;
  } catch (const eclipse::CodecError& e) {
    set_error(e.what());
    return ECL_ERR_CODEC;
  } catch (const eclipse::HttpStatusError& e) {
    set_error(e.what());
    return ECL_ERR_HTTP_STATUS;
  } catch (const eclipse::TransportError& e) {
    set_error(e.what());
    return ECL_ERR_TRANSPORT;
  } catch (const eclipse::SchemaError& e) {
    set_error(e.what());
    return ECL_ERR_SCHEMA;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ECL_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return ECL_ERR_INTERNAL;
  }
}

ecl_status require(bool ok, const char* message) {
  if (ok) return ECL_OK;
  set_error(message);
  return ECL_ERR_INVALID_ARGUMENT;
}

template <typename IterCount>
bool set_shared_key(const char* key, double value, double* beta,
                    IterCount* max_iterations, double* success_threshold,
                    std::uint64_t* seed) {
  const std::string k = key;
  if (k == "beta") {
    *beta = value;
  } else if (k == "max_iterations") {
    *max_iterations = static_cast<IterCount>(std::llround(value));
  } else if (k == "success_threshold") {
    *success_threshold = value;
  } else if (k == "seed") {
    *seed = static_cast<std::uint64_t>(std::llround(value));
  } else {
    return false;
  }
  return true;
}

}  // namespace

extern "C" {

const char* ecl_last_error(void) { return t_last_error.c_str(); }

/* ---------------------------------------------------------------- images */

ecl_status ecl_image_create(int height, int width, const double* values,
                            ecl_image** out) {
  if (auto rc = require(out != nullptr, "ecl_image_create: out is NULL")) return rc;
  return guarded([&] {
    if (height <= 0 || width <= 0) {
      throw eclipse::InvalidArgument("ecl_image_create: non-positive dimensions");
    }
    auto handle = std::make_unique<ecl_image>();
    handle->image = eclipse::Image(height, width);
    if (values != nullptr) {
      std::copy_n(values, handle->image.size(), handle->image.values().begin());
      if (!eclipse::in_unit_range(handle->image)) {
        throw eclipse::InvalidArgument("ecl_image_create: values outside [0,1]");
      }
    }
    *out = handle.release();
  });
}

ecl_status ecl_image_read_png(const char* path, ecl_image** out) {
  if (auto rc = require(path != nullptr && out != nullptr,
                        "ecl_image_read_png: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_image>();
    handle->image = eclipse::read_png(path);
    *out = handle.release();
  });
}

ecl_status ecl_image_write_png(const ecl_image* image, const char* path) {
  if (auto rc = require(image != nullptr && path != nullptr,
                        "ecl_image_write_png: NULL argument")) {
    return rc;
  }
  return guarded([&] { eclipse::write_png(image->image, path); });
}

ecl_status ecl_image_jpeg_roundtrip(const ecl_image* image, int quality,
                                    ecl_image** out) {
  if (auto rc = require(image != nullptr && out != nullptr,
                        "ecl_image_jpeg_roundtrip: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_image>();
    handle->image = eclipse::jpeg_roundtrip(image->image, quality);
    *out = handle.release();
  });
}

int ecl_image_height(const ecl_image* image) {
  return image == nullptr ? 0 : image->image.height();
}

int ecl_image_width(const ecl_image* image) {
  return image == nullptr ? 0 : image->image.width();
}

const double* ecl_image_values(const ecl_image* image) {
  return image == nullptr ? nullptr : image->image.values().data();
}

void ecl_image_free(ecl_image* image) { delete image; }

/* --------------------------------------------------------------- oracles */

ecl_status ecl_oracle_open_synthetic(const char* spec_path, ecl_oracle** out) {
  if (auto rc = require(spec_path != nullptr && out != nullptr,
                        "ecl_oracle_open_synthetic: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_oracle>();
    handle->oracle = std::make_unique<eclipse::SyntheticOracle>(
        eclipse::load_synthetic_spec(spec_path));
    *out = handle.release();
  });
}

ecl_status ecl_oracle_open_http(const char* url, const char* auth_header,
                                const char* auth_value, int timeout_ms, int top_k,
                                ecl_oracle** out) {
  if (auto rc = require(url != nullptr && out != nullptr,
                        "ecl_oracle_open_http: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    eclipse::OracleEndpointConfig config;
    config.url = url;
    if (timeout_ms > 0) config.timeout_ms = timeout_ms;
    if (auth_header != nullptr) config.auth_header = auth_header;
    if (auth_value != nullptr) config.auth_value = auth_value;
    config.top_k = top_k;
    auto handle = std::make_unique<ecl_oracle>();
    handle->oracle = std::make_unique<eclipse::RemoteOracle>(config);
    *out = handle.release();
  });
}

ecl_status ecl_oracle_score(const ecl_oracle* oracle, const ecl_image* image,
                            const char* label, double* out_score) {
  if (auto rc = require(oracle != nullptr && image != nullptr && label != nullptr &&
                            out_score != nullptr,
                        "ecl_oracle_score: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    *out_score = eclipse::query_target(*oracle->oracle, image->image, label);
  });
}

void ecl_oracle_free(ecl_oracle* oracle) { delete oracle; }

/* -------------------------------------------------------------- heatmaps */

ecl_status ecl_heatmap_load(const char* path, int expected_height,
                            int expected_width, ecl_heatmap** out) {
  if (auto rc = require(path != nullptr && out != nullptr,
                        "ecl_heatmap_load: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_heatmap>();
    handle->heat = eclipse::load_heatmap(path, expected_height, expected_width);
    *out = handle.release();
  });
}

ecl_status ecl_heatmap_occlusion(const ecl_oracle* oracle, const ecl_image* image,
                                 const char* target_label, int patch, int stride,
                                 ecl_heatmap** out) {
  if (auto rc = require(oracle != nullptr && image != nullptr &&
                            target_label != nullptr && out != nullptr,
                        "ecl_heatmap_occlusion: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_heatmap>();
    handle->heat = eclipse::occlusion_saliency(*oracle->oracle, image->image,
                                               target_label, patch, stride);
    *out = handle.release();
  });
}

void ecl_heatmap_free(ecl_heatmap* heatmap) { delete heatmap; }

/* --------------------------------------------------------------- attacks */

ecl_status ecl_attack_config_create(ecl_attack_kind kind, ecl_attack_config** out) {
  if (auto rc = require(out != nullptr, "ecl_attack_config_create: out is NULL")) {
    return rc;
  }
  if (auto rc = require(kind >= ECL_ATTACK_ECLIPSE && kind <= ECL_ATTACK_SQUARE,
                        "ecl_attack_config_create: unknown attack kind")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_attack_config>();
    handle->kind = kind;
    *out = handle.release();
  });
}

ecl_status ecl_attack_config_set(ecl_attack_config* config, const char* key,
                                 double value) {
  if (auto rc = require(config != nullptr && key != nullptr,
                        "ecl_attack_config_set: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    const std::string k = key;
    auto as_int = [&] { return static_cast<int>(std::llround(value)); };
    auto unknown = [&] {
      throw eclipse::InvalidArgument("ecl_attack_config_set: unknown key '" + k +
                                     "' for this attack");
    };
    switch (config->kind) {
      case ECL_ATTACK_ECLIPSE: {
        auto& c = config->eclipse;
        if (set_shared_key(key, value, &c.beta, &c.max_iterations,
                           &c.success_threshold, &c.seed)) {
          return;
        }
        if (k == "epsilon0") {
          c.epsilon0 = value;
        } else if (k == "sample_size") {
          c.sample_size = as_int();
        } else if (k == "kernel_size") {
          c.kernel_size = as_int();
        } else if (k == "sigma") {
          c.sigma = value;
        } else if (k == "probe_magnitude") {
          c.probe_magnitude = value;
        } else if (k == "min_area") {
          c.min_area = static_cast<std::int64_t>(std::llround(value));
        } else if (k == "epsilon_decay") {
          c.epsilon_decay = value;
        } else if (k == "epsilon_floor") {
          c.epsilon_floor = value;
        } else if (k == "tau_step") {
          c.tau_step = value;
        } else if (k == "tau_cap") {
          c.tau_cap = value;
        } else if (k == "sampled_fraction_cap") {
          c.sampled_fraction_cap = value;
        } else if (k == "blur_gradients") {
          c.blur_gradients = value != 0.0;
        } else if (k == "use_heatmap_mask") {
          c.use_heatmap_mask = value != 0.0;
        } else {
          unknown();
        }
        return;
      }
      case ECL_ATTACK_SIMBA: {
        auto& c = config->simba;
        if (set_shared_key(key, value, &c.beta, &c.max_iterations,
                           &c.success_threshold, &c.seed)) {
          return;
        }
        if (k == "step") {
          c.step = value;
        } else {
          unknown();
        }
        return;
      }
      case ECL_ATTACK_SIMBA_DCT: {
        auto& c = config->simba_dct;
        if (set_shared_key(key, value, &c.beta, &c.max_iterations,
                           &c.success_threshold, &c.seed)) {
          return;
        }
        if (k == "step") {
          c.step = value;
        } else if (k == "freq_fraction") {
          c.freq_fraction = value;
        } else {
          unknown();
        }
        return;
      }
      case ECL_ATTACK_SQUARE: {
        auto& c = config->square;
        if (set_shared_key(key, value, &c.beta, &c.max_iterations,
                           &c.success_threshold, &c.seed)) {
          return;
        }
        if (k == "p_init") {
          c.p_init = value;
        } else {
          unknown();
        }
        return;
      }
    }
    unknown();
  });
}

void ecl_attack_config_free(ecl_attack_config* config) { delete config; }

ecl_status ecl_attack_run(const ecl_oracle* oracle, const ecl_heatmap* heatmap,
                          const ecl_image* original, const char* target_label,
                          const ecl_attack_config* config, ecl_outcome** out) {
  if (auto rc = require(oracle != nullptr && original != nullptr &&
                            target_label != nullptr && config != nullptr &&
                            out != nullptr,
                        "ecl_attack_run: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_outcome>();
    switch (config->kind) {
      case ECL_ATTACK_ECLIPSE: {
        if (config->eclipse.use_heatmap_mask && heatmap == nullptr) {
          throw eclipse::InvalidArgument(
              "ecl_attack_run: this attack needs a heatmap unless "
              "use_heatmap_mask is 0");
        }
        const eclipse::Heatmap dummy;
        const eclipse::Heatmap& heat = heatmap != nullptr ? heatmap->heat : dummy;
        handle->outcome = eclipse::eclipse_attack(*oracle->oracle, heat,
                                                  original->image, target_label,
                                                  config->eclipse);
        break;
      }
      case ECL_ATTACK_SIMBA:
        handle->outcome = eclipse::simba_attack(*oracle->oracle, original->image,
                                                target_label, config->simba);
        break;
      case ECL_ATTACK_SIMBA_DCT:
        handle->outcome = eclipse::simba_dct_attack(
            *oracle->oracle, original->image, target_label, config->simba_dct);
        break;
      case ECL_ATTACK_SQUARE:
        handle->outcome = eclipse::square_attack_linf(
            *oracle->oracle, original->image, target_label, config->square);
        break;
      default:
        throw eclipse::InvalidArgument("ecl_attack_run: unknown attack kind");
    }
    *out = handle.release();
  });
}

int ecl_outcome_success(const ecl_outcome* outcome) {
  return outcome != nullptr && outcome->outcome.success ? 1 : 0;
}

int ecl_outcome_iterations(const ecl_outcome* outcome) {
  return outcome == nullptr ? 0 : outcome->outcome.iterations_used;
}

double ecl_outcome_final_fitness(const ecl_outcome* outcome) {
  return outcome == nullptr ? 0.0 : outcome->outcome.final_fitness;
}

uint64_t ecl_outcome_queries(const ecl_outcome* outcome) {
  return outcome == nullptr ? 0 : outcome->outcome.queries.total;
}

uint64_t ecl_outcome_queries_uncached(const ecl_outcome* outcome) {
  return outcome == nullptr ? 0 : outcome->outcome.queries.uncached_equivalent();
}

uint64_t ecl_outcome_queries_phase(const ecl_outcome* outcome, int phase) {
  if (outcome == nullptr || phase < 0 || phase >= eclipse::kNumQueryPhases) return 0;
  return outcome->outcome.queries.per_phase[phase];
}

ecl_status ecl_outcome_adversarial(const ecl_outcome* outcome, ecl_image** out) {
  if (auto rc = require(outcome != nullptr && out != nullptr,
                        "ecl_outcome_adversarial: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_image>();
    handle->image = outcome->outcome.adversarial;
    *out = handle.release();
  });
}

size_t ecl_outcome_trace_len(const ecl_outcome* outcome) {
  return outcome == nullptr ? 0 : outcome->outcome.trace.size();
}

ecl_status ecl_outcome_trace_get(const ecl_outcome* outcome, size_t index,
                                 ecl_trace_point* out) {
  if (auto rc = require(outcome != nullptr && out != nullptr,
                        "ecl_outcome_trace_get: NULL argument")) {
    return rc;
  }
  if (auto rc = require(index < outcome->outcome.trace.size(),
                        "ecl_outcome_trace_get: index out of range")) {
    return rc;
  }
  const eclipse::TracePoint& p = outcome->outcome.trace[index];
  out->t = p.t;
  out->fitness = p.fitness;
  out->epsilon = p.epsilon;
  out->tau = p.tau;
  out->mask_area = static_cast<int32_t>(p.mask_area);
  out->queries = p.queries;
  out->queries_uncached = p.queries_uncached;
  out->accepted = p.accepted ? 1 : 0;
  return ECL_OK;
}

void ecl_outcome_free(ecl_outcome* outcome) { delete outcome; }

/* ------------------------------------------- compression robustness (P1) */

ecl_status ecl_compression_loss(const ecl_oracle* oracle, const ecl_image* adversarial,
                                const char* target_label, int quality,
                                double* out_pre, double* out_post, double* out_loss) {
  if (auto rc = require(oracle != nullptr && adversarial != nullptr &&
                            target_label != nullptr,
                        "ecl_compression_loss: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    const eclipse::CompressionRecord rec = eclipse::compression_loss(
        *oracle->oracle, adversarial->image, target_label, quality);
    if (out_pre != nullptr) *out_pre = rec.pre_score;
    if (out_post != nullptr) *out_post = rec.post_score;
    if (out_loss != nullptr) *out_loss = rec.loss;
  });
}

ecl_status ecl_p1_aggregate(const double* losses, size_t n, int quality,
                            ecl_p1_report* out) {
  if (auto rc = require(losses != nullptr && out != nullptr,
                        "ecl_p1_aggregate: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    std::vector<eclipse::CompressionRecord> records(n);
    for (size_t i = 0; i < n; ++i) {
      records[i].quality = quality;
      records[i].loss = losses[i];
    }
    const eclipse::P1Report report = eclipse::p1_metrics(records);
    out->quality = report.quality;
    out->n = report.n;
    out->median_loss = report.median_loss;
    out->low_loss_pct = report.low_loss_pct;
    out->surviving_pct = report.surviving_pct;
  });
}

/* --------------------------------------------- detection stealthness (P2) */

ecl_status ecl_spectral_features(const ecl_image* image, int bands,
                                 double* out_features) {
  if (auto rc = require(image != nullptr && out_features != nullptr,
                        "ecl_spectral_features: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    const std::vector<double> features =
        eclipse::spectral_features(image->image, bands);
    std::copy(features.begin(), features.end(), out_features);
  });
}

const char* ecl_spectral_recipe(void) { return eclipse::kSpectralRecipe; }

ecl_status ecl_detector_train(const double* benign, size_t n_benign,
                              const double* adversarial, size_t n_adversarial,
                              int bands, int degree, double c, int folds,
                              uint64_t seed, ecl_detector** out_model,
                              ecl_cv_report** out_report) {
  if (auto rc = require(benign != nullptr && adversarial != nullptr,
                        "ecl_detector_train: NULL feature matrix")) {
    return rc;
  }
  if (auto rc = require(bands > 0, "ecl_detector_train: bands must be > 0")) {
    return rc;
  }
  return guarded([&] {
    auto to_matrix = [bands](const double* data, size_t rows) {
      eclipse::FeatureMatrix m(rows);
      for (size_t i = 0; i < rows; ++i) {
        m[i].assign(data + i * static_cast<size_t>(bands),
                    data + (i + 1) * static_cast<size_t>(bands));
      }
      return m;
    };
    eclipse::DetectorTrainConfig config;
    config.folds = folds;
    config.seed = seed;
    config.kernel.degree = degree;
    config.kernel.c = c;
    eclipse::DetectorTrainResult result = eclipse::train_detector(
        to_matrix(benign, n_benign), to_matrix(adversarial, n_adversarial), config);
    if (out_model != nullptr) {
      auto handle = std::make_unique<ecl_detector>();
      handle->model = std::move(result.model);
      *out_model = handle.release();
    }
    if (out_report != nullptr) {
      auto handle = std::make_unique<ecl_cv_report>();
      handle->report = std::move(result.report);
      *out_report = handle.release();
    }
  });
}

ecl_status ecl_detector_score(const ecl_detector* detector, const double* features,
                              int bands, double* out_margin) {
  if (auto rc = require(detector != nullptr && features != nullptr &&
                            out_margin != nullptr,
                        "ecl_detector_score: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    *out_margin = detector->model.score(
        eclipse::FeatureRow(features, features + bands));
  });
}

ecl_status ecl_detector_save(const ecl_detector* detector, const char* path) {
  if (auto rc = require(detector != nullptr && path != nullptr,
                        "ecl_detector_save: NULL argument")) {
    return rc;
  }
  return guarded([&] { eclipse::save_detector(detector->model, path); });
}

ecl_status ecl_detector_load(const char* path, ecl_detector** out) {
  if (auto rc = require(path != nullptr && out != nullptr,
                        "ecl_detector_load: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    auto handle = std::make_unique<ecl_detector>();
    handle->model = eclipse::load_detector(path);
    *out = handle.release();
  });
}

void ecl_detector_free(ecl_detector* detector) { delete detector; }

int ecl_cv_report_folds(const ecl_cv_report* report) {
  return report == nullptr ? 0 : static_cast<int>(report->report.folds.size());
}

ecl_status ecl_cv_report_fold(const ecl_cv_report* report, int fold,
                              ecl_fold_metrics* out) {
  if (auto rc = require(report != nullptr && out != nullptr,
                        "ecl_cv_report_fold: NULL argument")) {
    return rc;
  }
  if (auto rc = require(fold >= 0 &&
                            fold < static_cast<int>(report->report.folds.size()),
                        "ecl_cv_report_fold: fold out of range")) {
    return rc;
  }
  const eclipse::FoldMetrics& m = report->report.folds[static_cast<size_t>(fold)];
  out->accuracy = m.accuracy;
  out->precision = m.precision;
  out->recall = m.recall;
  out->f1 = m.f1;
  out->roc_auc = m.roc_auc;
  return ECL_OK;
}

ecl_status ecl_cv_report_summary(const ecl_cv_report* report,
                                 ecl_fold_metrics* out_mean,
                                 ecl_fold_metrics* out_stddev) {
  if (auto rc = require(report != nullptr, "ecl_cv_report_summary: NULL report")) {
    return rc;
  }
  const eclipse::CVReport& r = report->report;
  if (out_mean != nullptr) {
    out_mean->accuracy = r.accuracy.mean;
    out_mean->precision = r.precision.mean;
    out_mean->recall = r.recall.mean;
    out_mean->f1 = r.f1.mean;
    out_mean->roc_auc = r.roc_auc.mean;
  }
  if (out_stddev != nullptr) {
    out_stddev->accuracy = r.accuracy.stddev;
    out_stddev->precision = r.precision.stddev;
    out_stddev->recall = r.recall.stddev;
    out_stddev->f1 = r.f1.stddev;
    out_stddev->roc_auc = r.roc_auc.stddev;
  }
  return ECL_OK;
}

void ecl_cv_report_free(ecl_cv_report* report) { delete report; }

ecl_status ecl_roc_auc(const double* scores, const int* labels, size_t n,
                       double* out) {
  if (auto rc = require(scores != nullptr && labels != nullptr && out != nullptr,
                        "ecl_roc_auc: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    std::vector<double> s(scores, scores + n);
    std::vector<bool> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = labels[i] != 0;
    *out = eclipse::roc_auc(s, y);
  });
}

ecl_status ecl_query_stats_from_counts(const int64_t* success_queries, size_t n,
                                       int failures, ecl_query_stats* out) {
  if (auto rc = require(out != nullptr && (success_queries != nullptr || n == 0),
                        "ecl_query_stats_from_counts: NULL argument")) {
    return rc;
  }
  return guarded([&] {
    const std::vector<std::int64_t> counts(success_queries, success_queries + n);
    const eclipse::QueryStats stats =
        eclipse::query_stats_from_counts(counts, failures);
    out->successes = stats.successes;
    out->failures = stats.failures;
    out->has_quartiles = stats.median.has_value() ? 1 : 0;
    out->median = stats.median.value_or(0.0);
    out->q1 = stats.q1.value_or(0.0);
    out->q3 = stats.q3.value_or(0.0);
    out->iqr = stats.iqr.value_or(0.0);
  });
}

/* -------------------------------------------------------------- fixtures */

ecl_status ecl_write_desk_corpus(const char* dir, int height, int width, int count,
                                 uint64_t seed) {
  if (auto rc = require(dir != nullptr, "ecl_write_desk_corpus: dir is NULL")) {
    return rc;
  }
  return guarded([&] {
    if (count <= 0) {
      throw eclipse::InvalidArgument("ecl_write_desk_corpus: count must be > 0");
    }
    const eclipse::fixtures::DeskOracle oracle =
        eclipse::fixtures::make_desk_oracle(height, width, seed);
    const std::vector<eclipse::Image> corpus =
        eclipse::fixtures::make_corpus(oracle, count, seed + 1);
    eclipse::fixtures::write_corpus(dir, oracle, corpus);
  });
}

}  /* extern "C" */
