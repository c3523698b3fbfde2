// Command-line front end for the black-box evasion toolkit. Talks to the
// core exclusively through the shared C API, so it exercises the same
// surface any other binding would.
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eclipse/eclipse_c.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ------------------------------------------------------------ C API RAII

struct ImageDeleter {
  void operator()(ecl_image* p) const { ecl_image_free(p); }
};
struct OracleDeleter {
  void operator()(ecl_oracle* p) const { ecl_oracle_free(p); }
};
struct HeatmapDeleter {
  void operator()(ecl_heatmap* p) const { ecl_heatmap_free(p); }
};
struct ConfigDeleter {
  void operator()(ecl_attack_config* p) const { ecl_attack_config_free(p); }
};
struct OutcomeDeleter {
  void operator()(ecl_outcome* p) const { ecl_outcome_free(p); }
};
struct DetectorDeleter {
  void operator()(ecl_detector* p) const { ecl_detector_free(p); }
};
struct CvReportDeleter {
  void operator()(ecl_cv_report* p) const { ecl_cv_report_free(p); }
};

using ImagePtr = std::unique_ptr<ecl_image, ImageDeleter>;
using OraclePtr = std::unique_ptr<ecl_oracle, OracleDeleter>;
using HeatmapPtr = std::unique_ptr<ecl_heatmap, HeatmapDeleter>;
using ConfigPtr = std::unique_ptr<ecl_attack_config, ConfigDeleter>;
using OutcomePtr = std::unique_ptr<ecl_outcome, OutcomeDeleter>;
using DetectorPtr = std::unique_ptr<ecl_detector, DetectorDeleter>;
using CvReportPtr = std::unique_ptr<ecl_cv_report, CvReportDeleter>;

void check(ecl_status rc, const std::string& context) {
  if (rc != ECL_OK) {
    throw std::runtime_error(context + ": " + ecl_last_error());
  }
}

// ---------------------------------------------------------- formatting

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_mean_std(double mean, double stddev) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (± %.2f)", mean, stddev);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// ------------------------------------------------------------- manifest

struct ManifestRow {
  std::string filename;
  std::string ground_truth;
  std::string target;
};

std::vector<ManifestRow> load_manifest(const fs::path& dir) {
  const fs::path path = dir / "manifest.csv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find("filename") != std::string::npos) continue;  // header
    }
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 3) {
      throw std::runtime_error("malformed manifest row in " + path.string() +
                               ": " + line);
    }
    rows.push_back({trim(cells[0]), trim(cells[1]), trim(cells[2])});
  }
  return rows;
}

// Image list for feature extraction: manifest order when present, else
// sorted *.png. Returned paths are absolute.
std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> paths;
  if (fs::exists(dir / "manifest.csv")) {
    for (const ManifestRow& row : load_manifest(dir)) {
      paths.push_back(dir / row.filename);
    }
    return paths;
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".png") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

// ------------------------------------------------------------ config file

// Minimal TOML subset: [section] headers, key = value with quoted strings,
// numbers, booleans and flat arrays. Flags given on the command line win
// over file values.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> values;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = trim(value.substr(1, value.size() - 2));  // arrays -> csv
    }
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    }
    values[section.empty() ? key : section + "." + key] = value;
  }
  return values;
}

class ConfigOverlay {
 public:
  ConfigOverlay() = default;
  explicit ConfigOverlay(const std::string& path) {
    if (!path.empty()) values_ = read_config_file(path);
  }

  std::optional<std::string> get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  // Fill `var` from the file when the flag was not given explicitly.
  void fill_string(const CLI::Option* opt, const std::string& key,
                   std::string& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (const auto v = get(key)) var = *v;
  }
  void fill_double(const CLI::Option* opt, const std::string& key, double& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (const auto v = get(key)) var = parse_double(key, *v);
  }
  void fill_int(const CLI::Option* opt, const std::string& key, int& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (const auto v = get(key)) var = static_cast<int>(parse_double(key, *v));
  }
  void fill_uint64(const CLI::Option* opt, const std::string& key,
                   std::uint64_t& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (const auto v = get(key)) {
      var = static_cast<std::uint64_t>(parse_double(key, *v));
    }
  }
  void fill_int_list(const CLI::Option* opt, const std::string& key,
                     std::vector<int>& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    const auto v = get(key);
    if (!v) return;
    var.clear();
    for (const std::string& cell : split(*v, ',')) {
      var.push_back(static_cast<int>(parse_double(key, trim(cell))));
    }
  }

 private:
  static double parse_double(const std::string& key, const std::string& text) {
    if (text == "true") return 1.0;
    if (text == "false") return 0.0;
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("config value for " + key + " is not a number: " +
                               text);
    }
  }

  std::map<std::string, std::string> values_;
};

// --------------------------------------------------------------- oracles

// "synthetic:<spec.json>" or an http(s) URL. A bearer token for remote
// oracles is taken from ECLIPSE_ORACLE_TOKEN.
OraclePtr open_oracle(const std::string& source, int timeout_ms, int top_k) {
  if (source.empty()) {
    throw std::runtime_error("no oracle configured; pass --oracle");
  }
  ecl_oracle* raw = nullptr;
  if (source.rfind("synthetic:", 0) == 0) {
    check(ecl_oracle_open_synthetic(source.substr(10).c_str(), &raw),
          "open oracle");
    return OraclePtr(raw);
  }
  if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0) {
    const char* token = std::getenv("ECLIPSE_ORACLE_TOKEN");
    std::string value;
    if (token != nullptr && token[0] != '\0') value = std::string("Bearer ") + token;
    check(ecl_oracle_open_http(source.c_str(),
                               value.empty() ? nullptr : "Authorization",
                               value.empty() ? nullptr : value.c_str(), timeout_ms,
                               top_k, &raw),
          "open oracle");
    return OraclePtr(raw);
  }
  throw std::runtime_error("unrecognized oracle source '" + source +
                           "' (expected synthetic:<path> or http(s)://...)");
}

// ---------------------------------------------------------------- attacks

ecl_attack_kind attack_kind_from_name(const std::string& name) {
  if (name == "eclipse") return ECL_ATTACK_ECLIPSE;
  if (name == "simba") return ECL_ATTACK_SIMBA;
  if (name == "simba-dct") return ECL_ATTACK_SIMBA_DCT;
  if (name == "square") return ECL_ATTACK_SQUARE;
  throw std::runtime_error("unknown attack '" + name +
                           "' (expected eclipse|simba|simba-dct|square)");
}

enum class HeatmapMode { kNone, kFile, kOcclusion };

struct HeatmapSource {
  HeatmapMode mode = HeatmapMode::kNone;
  std::string path;  // kFile
  int patch = 4;     // kOcclusion
  int stride = 2;
};

struct AttackPlan {
  ecl_attack_kind kind = ECL_ATTACK_ECLIPSE;
  std::vector<std::pair<std::string, double>> knobs;  // explicit settings only
  std::uint64_t seed = 0;
  int workers = 1;
  HeatmapSource heatmap;
  bool needs_heatmap = false;  // gradient attack with the mask enabled
};

struct RunRow {
  std::string id;
  std::string filename;
  std::string target;
  bool ok = false;
  std::string error;
  int success = 0;
  int iterations = 0;
  std::uint64_t queries = 0;
  std::uint64_t queries_uncached = 0;
  double final_fitness = 0.0;
  std::vector<ecl_trace_point> trace;
  ImagePtr adversarial;
};

RunRow run_one(const ecl_oracle* oracle, const fs::path& corpus_dir,
               const ManifestRow& row, const AttackPlan& plan,
               std::uint64_t image_seed) {
  RunRow result;
  result.filename = fs::path(row.filename).filename().string();
  result.id = fs::path(row.filename).stem().string();
  result.target = row.target;
  try {
    ecl_image* raw_image = nullptr;
    check(ecl_image_read_png((corpus_dir / row.filename).string().c_str(),
                             &raw_image),
          "read " + row.filename);
    ImagePtr image(raw_image);

    HeatmapPtr heatmap;
    if (plan.needs_heatmap) {
      ecl_heatmap* raw_heat = nullptr;
      if (plan.heatmap.mode == HeatmapMode::kFile) {
        check(ecl_heatmap_load(plan.heatmap.path.c_str(),
                               ecl_image_height(image.get()),
                               ecl_image_width(image.get()), &raw_heat),
              "load heatmap");
      } else {
        check(ecl_heatmap_occlusion(oracle, image.get(), row.target.c_str(),
                                    plan.heatmap.patch, plan.heatmap.stride,
                                    &raw_heat),
              "occlusion heatmap for " + row.filename);
      }
      heatmap.reset(raw_heat);
    }

    ecl_attack_config* raw_config = nullptr;
    check(ecl_attack_config_create(plan.kind, &raw_config), "attack config");
    ConfigPtr config(raw_config);
    for (const auto& [key, value] : plan.knobs) {
      check(ecl_attack_config_set(config.get(), key.c_str(), value),
            "set " + key);
    }
    check(ecl_attack_config_set(config.get(), "seed",
                                static_cast<double>(image_seed)),
          "set seed");

    ecl_outcome* raw_outcome = nullptr;
    check(ecl_attack_run(oracle, heatmap.get(), image.get(), row.target.c_str(),
                         config.get(), &raw_outcome),
          "attack " + row.filename);
    OutcomePtr outcome(raw_outcome);

    result.success = ecl_outcome_success(outcome.get());
    result.iterations = ecl_outcome_iterations(outcome.get());
    result.queries = ecl_outcome_queries(outcome.get());
    result.queries_uncached = ecl_outcome_queries_uncached(outcome.get());
    result.final_fitness = ecl_outcome_final_fitness(outcome.get());

    const size_t trace_len = ecl_outcome_trace_len(outcome.get());
    result.trace.resize(trace_len);
    for (size_t i = 0; i < trace_len; ++i) {
      check(ecl_outcome_trace_get(outcome.get(), i, &result.trace[i]), "trace");
    }

    ecl_image* raw_adv = nullptr;
    check(ecl_outcome_adversarial(outcome.get(), &raw_adv), "adversarial image");
    result.adversarial.reset(raw_adv);
    result.ok = true;
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  return result;
}

std::vector<RunRow> run_corpus(const ecl_oracle* oracle, const fs::path& corpus_dir,
                               const std::vector<ManifestRow>& rows,
                               const AttackPlan& plan) {
  std::vector<RunRow> results(rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) break;
      results[i] = run_one(oracle, corpus_dir, rows[i], plan,
                           plan.seed + static_cast<std::uint64_t>(i));
    }
  };
  const int width = std::max(1, std::min<int>(plan.workers,
                                              static_cast<int>(rows.size())));
  std::vector<std::thread> threads;
  threads.reserve(width);
  for (int i = 0; i < width; ++i) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();

  for (const RunRow& row : results) {
    if (!row.ok) throw std::runtime_error(row.id + ": " + row.error);
  }
  return results;
}

// ------------------------------------------------------------- artifacts

void write_outcomes_csv(const fs::path& path, const std::vector<RunRow>& rows) {
  std::ofstream out = open_out(path);
  out << "image_id,success,iterations,queries,queries_uncached,final_fitness\n";
  for (const RunRow& row : rows) {
    out << row.id << ',' << row.success << ',' << row.iterations << ','
        << row.queries << ',' << row.queries_uncached << ','
        << fmt_double(row.final_fitness) << '\n';
  }
}

void write_summary_csv(const fs::path& path, const std::vector<RunRow>& rows) {
  std::vector<std::int64_t> success_queries;
  for (const RunRow& row : rows) {
    if (row.success != 0) {
      success_queries.push_back(static_cast<std::int64_t>(row.queries));
    }
  }
  const int failures = static_cast<int>(rows.size() - success_queries.size());

  std::ofstream out = open_out(path);
  out << "images,successes,failures,success_rate,median_queries,q1_queries,"
         "q3_queries,iqr_queries\n";
  out << rows.size() << ',' << success_queries.size() << ',' << failures << ','
      << fmt_double(rows.empty() ? 0.0
                                 : static_cast<double>(success_queries.size()) /
                                       static_cast<double>(rows.size()));
  if (success_queries.empty()) {
    out << ",,,,\n";
    return;
  }
  ecl_query_stats stats;
  check(ecl_query_stats_from_counts(success_queries.data(), success_queries.size(),
                                    failures, &stats),
        "query stats");
  out << ',' << fmt_double(stats.median) << ',' << fmt_double(stats.q1) << ','
      << fmt_double(stats.q3) << ',' << fmt_double(stats.iqr) << '\n';
}

void write_traces(const fs::path& dir, const std::vector<RunRow>& rows) {
  fs::create_directories(dir);
  for (const RunRow& row : rows) {
    std::ofstream out = open_out(dir / (row.id + ".jsonl"));
    for (const ecl_trace_point& p : row.trace) {
      const json line = {{"t", p.t},
                         {"fitness", p.fitness},
                         {"epsilon", p.epsilon},
                         {"tau", p.tau},
                         {"mask_area", p.mask_area},
                         {"queries", p.queries},
                         {"queries_uncached", p.queries_uncached},
                         {"accepted", p.accepted != 0}};
      out << line.dump() << '\n';
    }
  }
}

// Adversarial PNGs plus a manifest so the directory is itself a corpus the
// evaluation commands can consume.
void write_adversarial(const fs::path& out_dir, const std::vector<RunRow>& rows,
                       const std::vector<ManifestRow>& manifest) {
  fs::create_directories(out_dir / "adversarial");
  for (const RunRow& row : rows) {
    check(ecl_image_write_png(row.adversarial.get(),
                              (out_dir / "adversarial" / row.filename)
                                  .string()
                                  .c_str()),
          "write adversarial " + row.filename);
  }
  std::ofstream out = open_out(out_dir / "manifest.csv");
  out << "filename,ground_truth_label,target_label\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "adversarial/" << rows[i].filename << ',' << manifest[i].ground_truth
        << ',' << manifest[i].target << '\n';
  }
}

void write_run_meta(const fs::path& path, json meta) {
  meta["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
  std::ofstream out = open_out(path);
  out << meta.dump(2) << '\n';
}

// ---------------------------------------------------------- eval helpers

struct CompressionRow {
  std::string id;
  int quality = 0;
  double pre = 0.0;
  double post = 0.0;
  double loss = 0.0;
};

std::vector<CompressionRow> compression_rows(const ecl_oracle* oracle,
                                             const fs::path& dir,
                                             const std::vector<ManifestRow>& rows,
                                             const std::vector<int>& qualities) {
  std::vector<CompressionRow> records;
  for (const ManifestRow& row : rows) {
    ecl_image* raw = nullptr;
    check(ecl_image_read_png((dir / row.filename).string().c_str(), &raw),
          "read " + row.filename);
    ImagePtr image(raw);
    for (int quality : qualities) {
      CompressionRow rec;
      rec.id = fs::path(row.filename).stem().string();
      rec.quality = quality;
      check(ecl_compression_loss(oracle, image.get(), row.target.c_str(), quality,
                                 &rec.pre, &rec.post, &rec.loss),
            "compression loss for " + row.filename);
      records.push_back(rec);
    }
  }
  return records;
}

struct QualityReport {
  ecl_p1_report report;
};

std::vector<QualityReport> aggregate_by_quality(
    const std::vector<CompressionRow>& records, const std::vector<int>& qualities) {
  std::vector<QualityReport> reports;
  for (int quality : qualities) {
    std::vector<double> losses;
    for (const CompressionRow& rec : records) {
      if (rec.quality == quality) losses.push_back(rec.loss);
    }
    QualityReport qr;
    check(ecl_p1_aggregate(losses.data(), losses.size(), quality, &qr.report),
          "aggregate quality " + std::to_string(quality));
    reports.push_back(qr);
  }
  return reports;
}

std::vector<std::vector<double>> feature_rows_from_paths(
    const std::vector<fs::path>& paths, int bands) {
  std::vector<std::vector<double>> rows;
  for (const fs::path& path : paths) {
    ecl_image* raw = nullptr;
    check(ecl_image_read_png(path.string().c_str(), &raw), "read " + path.string());
    ImagePtr image(raw);
    std::vector<double> features(static_cast<std::size_t>(bands), 0.0);
    check(ecl_spectral_features(image.get(), bands, features.data()),
          "features for " + path.string());
    rows.push_back(std::move(features));
  }
  return rows;
}

std::vector<std::vector<double>> feature_rows(const fs::path& dir, int bands) {
  return feature_rows_from_paths(list_images(dir), bands);
}

void write_features_csv(const fs::path& path,
                        const std::vector<fs::path>& benign_ids,
                        const std::vector<std::vector<double>>& benign,
                        const std::vector<fs::path>& adv_ids,
                        const std::vector<std::vector<double>>& adversarial,
                        int bands) {
  std::ofstream out = open_out(path);
  out << "# recipe=" << ecl_spectral_recipe() << '\n';
  out << "class,image_id";
  for (int b = 0; b < bands; ++b) out << ",band_" << b;
  out << '\n';
  auto dump = [&](const char* cls, const std::vector<fs::path>& ids,
                  const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << cls << ',' << ids[i].stem().string();
      for (double v : rows[i]) out << ',' << fmt_double(v);
      out << '\n';
    }
  };
  dump("benign", benign_ids, benign);
  dump("adversarial", adv_ids, adversarial);
}

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

void write_cv_report_csv(const fs::path& path, const ecl_cv_report* report) {
  std::ofstream out = open_out(path);
  out << "set,accuracy,precision,recall,f1,roc_auc\n";
  const int folds = ecl_cv_report_folds(report);
  for (int i = 0; i < folds; ++i) {
    ecl_fold_metrics fold;
    check(ecl_cv_report_fold(report, i, &fold), "cv fold");
    out << "fold_" << (i + 1) << ',' << fmt_double(fold.accuracy) << ','
        << fmt_double(fold.precision) << ',' << fmt_double(fold.recall) << ','
        << fmt_double(fold.f1) << ',' << fmt_double(fold.roc_auc) << '\n';
  }
  ecl_fold_metrics mean, stddev;
  check(ecl_cv_report_summary(report, &mean, &stddev), "cv summary");
  out << "mean," << fmt_mean_std(mean.accuracy, stddev.accuracy) << ','
      << fmt_mean_std(mean.precision, stddev.precision) << ','
      << fmt_mean_std(mean.recall, stddev.recall) << ','
      << fmt_mean_std(mean.f1, stddev.f1) << ','
      << fmt_mean_std(mean.roc_auc, stddev.roc_auc) << '\n';
}

// outcomes.csv written by the attack command; returns per-run (success,
// queries) pairs.
std::vector<std::pair<bool, std::int64_t>> read_outcomes_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::pair<bool, std::int64_t>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;  // header
    }
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() < 4) {
      throw std::runtime_error("malformed outcomes row: " + line);
    }
    rows.emplace_back(cells[1] == "1", std::stoll(cells[3]));
  }
  return rows;
}

void write_query_stats_csv(const fs::path& path,
                           const std::vector<std::pair<bool, std::int64_t>>& runs) {
  std::vector<std::int64_t> success_queries;
  int failures = 0;
  for (const auto& [success, queries] : runs) {
    if (success) {
      success_queries.push_back(queries);
    } else {
      ++failures;
    }
  }
  ecl_query_stats stats;
  check(ecl_query_stats_from_counts(success_queries.data(), success_queries.size(),
                                    failures, &stats),
        "query stats");
  std::ofstream out = open_out(path);
  out << "successes,failures,median_queries,q1_queries,q3_queries,iqr_queries\n";
  out << stats.successes << ',' << stats.failures;
  if (stats.has_quartiles != 0) {
    out << ',' << fmt_double(stats.median) << ',' << fmt_double(stats.q1) << ','
        << fmt_double(stats.q3) << ',' << fmt_double(stats.iqr) << '\n';
  } else {
    out << ",,,,\n";
  }
}

// ----------------------------------------------------------- CLI plumbing

struct KnobCli {
  std::string flag;
  std::string key;
  double value = 0.0;
  CLI::Option* opt = nullptr;
};

std::vector<KnobCli> make_knobs(CLI::App* cmd, bool include_ablation_toggles) {
  std::vector<std::pair<const char*, const char*>> defs = {
      {"--beta", "beta"},
      {"--step", "step"},
      {"--max-iterations", "max_iterations"},
      {"--sample-size", "sample_size"},
      {"--success-threshold", "success_threshold"},
      {"--p-init", "p_init"},
      {"--freq-fraction", "freq_fraction"},
      {"--epsilon0", "epsilon0"},
      {"--kernel-size", "kernel_size"},
      {"--sigma", "sigma"},
      {"--probe-magnitude", "probe_magnitude"},
      {"--min-area", "min_area"},
      {"--epsilon-decay", "epsilon_decay"},
      {"--epsilon-floor", "epsilon_floor"},
      {"--tau-step", "tau_step"},
      {"--tau-cap", "tau_cap"},
      {"--sampled-fraction-cap", "sampled_fraction_cap"},
  };
  if (include_ablation_toggles) {
    defs.push_back({"--blur-gradients", "blur_gradients"});
    defs.push_back({"--use-heatmap-mask", "use_heatmap_mask"});
  }
  std::vector<KnobCli> knobs;
  knobs.reserve(defs.size());
  for (const auto& [flag, key] : defs) {
    knobs.push_back({flag, key, 0.0, nullptr});
  }
  for (KnobCli& knob : knobs) {
    knob.opt = cmd->add_option(knob.flag, knob.value,
                               "attack parameter (library default when omitted)");
  }
  return knobs;
}

std::vector<std::pair<std::string, double>> resolve_knobs(
    std::vector<KnobCli>& knobs, const ConfigOverlay& overlay) {
  std::vector<std::pair<std::string, double>> resolved;
  for (KnobCli& knob : knobs) {
    overlay.fill_double(knob.opt, "attack." + knob.key, knob.value);
    const bool from_file = overlay.get("attack." + knob.key).has_value();
    if (knob.opt->count() > 0 || from_file) {
      resolved.emplace_back(knob.key, knob.value);
    }
  }
  return resolved;
}

HeatmapSource resolve_heatmap(const std::string& spec, const fs::path& corpus_dir,
                              int patch, int stride, bool needed) {
  HeatmapSource source;
  source.patch = patch;
  source.stride = stride;
  if (spec == "occlusion") {
    source.mode = HeatmapMode::kOcclusion;
    return source;
  }
  if (!spec.empty()) {
    source.mode = HeatmapMode::kFile;
    source.path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
    return source;
  }
  if (!needed) return source;
  const fs::path fallback = corpus_dir / "heatmap.png";
  if (!fs::exists(fallback)) {
    throw std::runtime_error(
        "the gradient attack needs a saliency heatmap: pass --heatmap "
        "file:<path> or --heatmap occlusion (no heatmap.png in the corpus)");
  }
  source.mode = HeatmapMode::kFile;
  source.path = fallback.string();
  return source;
}

// ------------------------------------------------------------- commands

struct OracleCli {
  std::string source;
  int timeout_ms = 10000;
  int top_k = 0;
  CLI::Option* source_opt = nullptr;
  CLI::Option* timeout_opt = nullptr;
  CLI::Option* top_k_opt = nullptr;

  void add_to(CLI::App* cmd) {
    source_opt = cmd->add_option(
        "--oracle", source, "victim oracle: synthetic:<spec.json> or http(s)://url");
    timeout_opt =
        cmd->add_option("--oracle-timeout-ms", timeout_ms, "remote timeout");
    top_k_opt = cmd->add_option("--oracle-top-k", top_k,
                                "restrict remote responses to the top k labels");
  }
  OraclePtr open(const ConfigOverlay& overlay) {
    overlay.fill_string(source_opt, "oracle.source", source);
    overlay.fill_int(timeout_opt, "oracle.timeout_ms", timeout_ms);
    overlay.fill_int(top_k_opt, "oracle.top_k", top_k);
    return open_oracle(source, timeout_ms, top_k);
  }
};

void cmd_synth(const std::string& out_dir, int height, int width, int count,
               std::uint64_t seed) {
  check(ecl_write_desk_corpus(out_dir.c_str(), height, width, count, seed),
        "write corpus");
  std::printf("wrote %d images to %s\n", count, out_dir.c_str());
}

struct AttackArgs {
  std::string corpus, out, attack = "eclipse", heatmap, config_path;
  std::uint64_t seed = 0;
  int workers = 1;
  int occlusion_patch = 4;
  int occlusion_stride = 2;
  OracleCli oracle;
  std::vector<KnobCli> knobs;
  CLI::Option* attack_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* heatmap_opt = nullptr;
};

void cmd_attack(AttackArgs& args) {
  const ConfigOverlay overlay(args.config_path);
  overlay.fill_string(args.attack_opt, "attack.kind", args.attack);
  overlay.fill_uint64(args.seed_opt, "attack.seed", args.seed);
  overlay.fill_string(args.heatmap_opt, "attack.heatmap", args.heatmap);

  const fs::path corpus_dir(args.corpus);
  const std::vector<ManifestRow> manifest = load_manifest(corpus_dir);
  if (manifest.empty()) {
    throw std::runtime_error("corpus manifest lists no images: " + args.corpus);
  }

  AttackPlan plan;
  plan.kind = attack_kind_from_name(args.attack);
  plan.knobs = resolve_knobs(args.knobs, overlay);
  plan.seed = args.seed;
  plan.workers = args.workers;

  bool mask_enabled = true;
  for (const auto& [key, value] : plan.knobs) {
    if (key == "use_heatmap_mask") mask_enabled = value != 0.0;
  }
  plan.needs_heatmap = plan.kind == ECL_ATTACK_ECLIPSE && mask_enabled;
  plan.heatmap = resolve_heatmap(args.heatmap, corpus_dir, args.occlusion_patch,
                                 args.occlusion_stride, plan.needs_heatmap);

  OraclePtr oracle = args.oracle.open(overlay);
  const std::vector<RunRow> rows = run_corpus(oracle.get(), corpus_dir, manifest, plan);

  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);
  write_outcomes_csv(out_dir / "outcomes.csv", rows);
  write_summary_csv(out_dir / "summary.csv", rows);
  write_traces(out_dir / "traces", rows);
  write_adversarial(out_dir, rows, manifest);
  write_run_meta(out_dir / "run_meta.json",
                 {{"command", "attack"},
                  {"attack", args.attack},
                  {"corpus", args.corpus},
                  {"oracle", args.oracle.source},
                  {"seed", args.seed},
                  {"workers", args.workers},
                  {"images", manifest.size()}});

  int successes = 0;
  for (const RunRow& row : rows) successes += row.success;
  std::printf("attack=%s images=%zu successes=%d out=%s\n", args.attack.c_str(),
              rows.size(), successes, args.out.c_str());
}

struct EvalP1Args {
  std::string corpus, out, config_path;
  std::vector<int> qualities = {75};
  OracleCli oracle;
  CLI::Option* quality_opt = nullptr;
};

void cmd_eval_p1(EvalP1Args& args) {
  const ConfigOverlay overlay(args.config_path);
  overlay.fill_int_list(args.quality_opt, "eval.quality", args.qualities);
  if (args.qualities.empty()) throw std::runtime_error("no qualities requested");

  const fs::path dir(args.corpus);
  const std::vector<ManifestRow> manifest = load_manifest(dir);
  if (manifest.empty()) {
    throw std::runtime_error("corpus manifest lists no images: " + args.corpus);
  }
  OraclePtr oracle = args.oracle.open(overlay);

  const std::vector<CompressionRow> records =
      compression_rows(oracle.get(), dir, manifest, args.qualities);
  const std::vector<QualityReport> reports =
      aggregate_by_quality(records, args.qualities);

  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);
  {
    std::ofstream out = open_out(out_dir / "records.csv");
    out << "image_id,quality,pre_score,post_score,loss\n";
    for (const CompressionRow& rec : records) {
      out << rec.id << ',' << rec.quality << ',' << fmt_double(rec.pre) << ','
          << fmt_double(rec.post) << ',' << fmt_double(rec.loss) << '\n';
    }
  }
  {
    std::ofstream out = open_out(out_dir / "p1_report.csv");
    out << "quality,n,median_loss,low_loss_pct,surviving_pct\n";
    for (const QualityReport& qr : reports) {
      out << qr.report.quality << ',' << qr.report.n << ','
          << fmt_double(qr.report.median_loss) << ','
          << fmt_double(qr.report.low_loss_pct) << ','
          << fmt_double(qr.report.surviving_pct) << '\n';
    }
  }
  {
    json doc = json::array();
    for (const QualityReport& qr : reports) {
      doc.push_back({{"quality", qr.report.quality},
                     {"n", qr.report.n},
                     {"median_loss", qr.report.median_loss},
                     {"low_loss_pct", qr.report.low_loss_pct},
                     {"surviving_pct", qr.report.surviving_pct}});
    }
    std::ofstream out = open_out(out_dir / "p1_report.json");
    out << doc.dump(2) << '\n';
  }
  write_run_meta(out_dir / "run_meta.json",
                 {{"command", "eval-p1"},
                  {"corpus", args.corpus},
                  {"oracle", args.oracle.source},
                  {"qualities", args.qualities}});
  std::printf("eval-p1 images=%zu qualities=%zu out=%s\n", manifest.size(),
              args.qualities.size(), args.out.c_str());
}

struct EvalP2Args {
  std::string benign, adversarial, out, outcomes, config_path;
  int bands = 64;
  int folds = 5;
  int degree = 3;
  double c = 1.0;
  std::uint64_t seed = 0;
  CLI::Option* bands_opt = nullptr;
  CLI::Option* folds_opt = nullptr;
  CLI::Option* degree_opt = nullptr;
  CLI::Option* c_opt = nullptr;
};

void cmd_eval_p2(EvalP2Args& args) {
  const ConfigOverlay overlay(args.config_path);
  overlay.fill_int(args.bands_opt, "eval.bands", args.bands);
  overlay.fill_int(args.folds_opt, "eval.folds", args.folds);
  overlay.fill_int(args.degree_opt, "eval.degree", args.degree);
  overlay.fill_double(args.c_opt, "eval.c", args.c);

  const std::vector<fs::path> benign_ids = list_images(args.benign);
  const std::vector<fs::path> adv_ids = list_images(args.adversarial);
  if (benign_ids.empty() || adv_ids.empty()) {
    throw std::runtime_error("both classes need at least one image");
  }
  const auto benign_rows = feature_rows(args.benign, args.bands);
  const auto adv_rows = feature_rows(args.adversarial, args.bands);

  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);
  write_features_csv(out_dir / "features.csv", benign_ids, benign_rows, adv_ids,
                     adv_rows, args.bands);

  const std::vector<double> benign_flat = flatten(benign_rows);
  const std::vector<double> adv_flat = flatten(adv_rows);
  ecl_detector* raw_detector = nullptr;
  ecl_cv_report* raw_report = nullptr;
  check(ecl_detector_train(benign_flat.data(), benign_rows.size(), adv_flat.data(),
                           adv_rows.size(), args.bands, args.degree, args.c,
                           args.folds, args.seed, &raw_detector, &raw_report),
        "train detector");
  DetectorPtr detector(raw_detector);
  CvReportPtr report(raw_report);

  check(ecl_detector_save(detector.get(), (out_dir / "detector.json").string().c_str()),
        "save detector");
  write_cv_report_csv(out_dir / "cv_report.csv", report.get());

  fs::path outcomes_path(args.outcomes);
  if (args.outcomes.empty()) {
    const fs::path candidate = fs::path(args.adversarial) / "outcomes.csv";
    if (fs::exists(candidate)) outcomes_path = candidate;
  }
  if (!outcomes_path.empty()) {
    write_query_stats_csv(out_dir / "query_stats.csv",
                          read_outcomes_csv(outcomes_path));
  }

  write_run_meta(out_dir / "run_meta.json",
                 {{"command", "eval-p2"},
                  {"benign", args.benign},
                  {"adversarial", args.adversarial},
                  {"bands", args.bands},
                  {"folds", args.folds},
                  {"seed", args.seed}});
  std::printf("eval-p2 benign=%zu adversarial=%zu out=%s\n", benign_rows.size(),
              adv_rows.size(), args.out.c_str());
}

struct AblationArgs {
  std::string corpus, out, heatmap, config_path;
  std::uint64_t seed = 0;
  int workers = 1;
  int quality = 75;
  int bands = 64;
  int folds = 5;
  int occlusion_patch = 4;
  int occlusion_stride = 2;
  OracleCli oracle;
  std::vector<KnobCli> knobs;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* heatmap_opt = nullptr;
  CLI::Option* quality_opt = nullptr;
};

struct VariantMetrics {
  std::string label;
  std::size_t images = 0;
  int successes = 0;
  ecl_query_stats stats{};
  bool has_compression = false;
  ecl_p1_report compression{};
  std::optional<double> detection_auc;
};

void cmd_ablation(AblationArgs& args) {
  const ConfigOverlay overlay(args.config_path);
  overlay.fill_uint64(args.seed_opt, "attack.seed", args.seed);
  overlay.fill_string(args.heatmap_opt, "attack.heatmap", args.heatmap);
  overlay.fill_int(args.quality_opt, "eval.quality", args.quality);

  const fs::path corpus_dir(args.corpus);
  const std::vector<ManifestRow> manifest = load_manifest(corpus_dir);
  if (manifest.empty()) {
    throw std::runtime_error("corpus manifest lists no images: " + args.corpus);
  }
  OraclePtr oracle = args.oracle.open(overlay);

  const std::vector<std::pair<std::string, double>> base_knobs =
      resolve_knobs(args.knobs, overlay);

  struct VariantDef {
    const char* label;
    const char* slug;
    bool blur;
    bool mask;
  };
  const VariantDef variants[] = {
      {"ECLIPSE", "eclipse", true, true},
      {"No Gaussian blur", "no-blur", false, true},
      {"No Local Surrogate", "no-surrogate", true, false},
  };

  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);

  // Benign features for the detection column come from the source images the
  // attacks start from.
  const auto benign_rows = feature_rows(args.corpus, args.bands);
  const std::vector<double> benign_flat = flatten(benign_rows);

  std::vector<VariantMetrics> metrics;
  for (const VariantDef& variant : variants) {
    AttackPlan plan;
    plan.kind = ECL_ATTACK_ECLIPSE;
    plan.knobs = base_knobs;
    plan.knobs.emplace_back("blur_gradients", variant.blur ? 1.0 : 0.0);
    plan.knobs.emplace_back("use_heatmap_mask", variant.mask ? 1.0 : 0.0);
    plan.seed = args.seed;
    plan.workers = args.workers;
    plan.needs_heatmap = variant.mask;
    plan.heatmap = resolve_heatmap(args.heatmap, corpus_dir, args.occlusion_patch,
                                   args.occlusion_stride, plan.needs_heatmap);

    const std::vector<RunRow> rows =
        run_corpus(oracle.get(), corpus_dir, manifest, plan);

    const fs::path variant_dir = out_dir / variant.slug;
    fs::create_directories(variant_dir);
    write_outcomes_csv(variant_dir / "outcomes.csv", rows);
    write_summary_csv(variant_dir / "summary.csv", rows);
    write_adversarial(variant_dir, rows, manifest);

    VariantMetrics m;
    m.label = variant.label;
    m.images = rows.size();

    std::vector<std::int64_t> success_queries;
    std::vector<ManifestRow> surviving;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].success != 0) {
        success_queries.push_back(static_cast<std::int64_t>(rows[i].queries));
        surviving.push_back({"adversarial/" + rows[i].filename,
                             manifest[i].ground_truth, manifest[i].target});
      }
    }
    m.successes = static_cast<int>(success_queries.size());
    check(ecl_query_stats_from_counts(success_queries.data(),
                                      success_queries.size(),
                                      static_cast<int>(rows.size()) - m.successes,
                                      &m.stats),
          "query stats");

    if (!surviving.empty()) {
      const std::vector<CompressionRow> records =
          compression_rows(oracle.get(), variant_dir, surviving, {args.quality});
      std::vector<double> losses;
      for (const CompressionRow& rec : records) losses.push_back(rec.loss);
      check(ecl_p1_aggregate(losses.data(), losses.size(), args.quality,
                             &m.compression),
            "aggregate compression");
      m.has_compression = true;
    }

    if (m.successes >= args.folds &&
        static_cast<int>(benign_rows.size()) >= args.folds) {
      // Detection is scored on the images that actually fooled the oracle.
      std::vector<fs::path> success_paths;
      for (const ManifestRow& row : surviving) {
        success_paths.push_back(variant_dir / row.filename);
      }
      const auto adv_rows = feature_rows_from_paths(success_paths, args.bands);
      const std::vector<double> adv_flat = flatten(adv_rows);
      ecl_cv_report* raw_report = nullptr;
      check(ecl_detector_train(benign_flat.data(), benign_rows.size(),
                               adv_flat.data(), adv_rows.size(), args.bands, 3,
                               1.0, args.folds, args.seed, nullptr, &raw_report),
            "train detector");
      CvReportPtr report(raw_report);
      ecl_fold_metrics mean, stddev;
      check(ecl_cv_report_summary(report.get(), &mean, &stddev), "cv summary");
      m.detection_auc = mean.roc_auc;
    }
    metrics.push_back(std::move(m));
  }

  {
    std::ofstream out = open_out(out_dir / "ablation_report.csv");
    out << "variant,images,successes,success_rate,median_queries,iqr_queries,"
           "median_loss,low_loss_pct,surviving_pct,detection_auc\n";
    for (const VariantMetrics& m : metrics) {
      out << m.label << ',' << m.images << ',' << m.successes << ','
          << fmt_double(static_cast<double>(m.successes) /
                        static_cast<double>(m.images));
      if (m.stats.has_quartiles != 0) {
        out << ',' << fmt_double(m.stats.median) << ',' << fmt_double(m.stats.iqr);
      } else {
        out << ",,";
      }
      if (m.has_compression) {
        out << ',' << fmt_double(m.compression.median_loss) << ','
            << fmt_double(m.compression.low_loss_pct) << ','
            << fmt_double(m.compression.surviving_pct);
      } else {
        out << ",,,";
      }
      if (m.detection_auc.has_value()) {
        out << ',' << fmt_double(*m.detection_auc) << '\n';
      } else {
        out << ",\n";
      }
    }
  }
  write_run_meta(out_dir / "run_meta.json",
                 {{"command", "ablation"},
                  {"corpus", args.corpus},
                  {"oracle", args.oracle.source},
                  {"seed", args.seed},
                  {"quality", args.quality}});
  std::printf("ablation variants=%zu out=%s\n", metrics.size(), args.out.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-efficient black-box evasion attacks and their evaluation"};
  app.require_subcommand(1);

  // synth ------------------------------------------------------------
  auto* synth = app.add_subcommand(
      "synth", "Write a self-contained synthetic corpus (images, manifest, "
               "oracle spec, heatmap)");
  std::string synth_out = "corpus";
  int synth_height = 16, synth_width = 16, synth_count = 20;
  std::uint64_t synth_seed = 42;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--height", synth_height, "image height");
  synth->add_option("--width", synth_width, "image width");
  synth->add_option("--count", synth_count, "number of images");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->callback([&] {
    cmd_synth(synth_out, synth_height, synth_width, synth_count, synth_seed);
  });

  // attack -----------------------------------------------------------
  auto* attack = app.add_subcommand("attack", "Run one attack over a corpus");
  AttackArgs attack_args;
  attack->add_option("--corpus", attack_args.corpus,
                     "directory with manifest.csv and PNGs")
      ->required();
  attack->add_option("--out", attack_args.out, "output directory")->required();
  attack_args.attack_opt = attack->add_option(
      "--attack", attack_args.attack, "eclipse|simba|simba-dct|square");
  attack_args.heatmap_opt = attack->add_option(
      "--heatmap", attack_args.heatmap,
      "file:<path> or occlusion (default: <corpus>/heatmap.png)");
  attack_args.seed_opt = attack->add_option("--seed", attack_args.seed, "base seed");
  attack->add_option("--workers", attack_args.workers, "worker threads");
  attack->add_option("--occlusion-patch", attack_args.occlusion_patch,
                     "occlusion patch size");
  attack->add_option("--occlusion-stride", attack_args.occlusion_stride,
                     "occlusion stride");
  attack->add_option("--config", attack_args.config_path, "TOML config file");
  attack_args.oracle.add_to(attack);
  attack_args.knobs = make_knobs(attack, true);
  attack->callback([&] { cmd_attack(attack_args); });

  // eval-p1 ----------------------------------------------------------
  auto* eval_p1 = app.add_subcommand(
      "eval-p1", "JPEG-compression robustness of adversarial images");
  EvalP1Args p1_args;
  eval_p1->add_option("--corpus", p1_args.corpus,
                      "directory with manifest.csv and PNGs (attack output)")
      ->required();
  eval_p1->add_option("--out", p1_args.out, "output directory")->required();
  p1_args.quality_opt =
      eval_p1->add_option("--quality", p1_args.qualities, "JPEG qualities");
  eval_p1->add_option("--config", p1_args.config_path, "TOML config file");
  p1_args.oracle.add_to(eval_p1);
  eval_p1->callback([&] { cmd_eval_p1(p1_args); });

  // eval-p2 ----------------------------------------------------------
  auto* eval_p2 = app.add_subcommand(
      "eval-p2", "Train and evaluate the spectral detector; summarize queries");
  EvalP2Args p2_args;
  eval_p2->add_option("--benign", p2_args.benign, "benign image directory")
      ->required();
  eval_p2
      ->add_option("--adversarial", p2_args.adversarial,
                   "adversarial image directory (attack output)")
      ->required();
  eval_p2->add_option("--out", p2_args.out, "output directory")->required();
  eval_p2->add_option("--outcomes", p2_args.outcomes,
                      "outcomes.csv for query statistics (default: "
                      "<adversarial>/outcomes.csv)");
  p2_args.bands_opt =
      eval_p2->add_option("--bands", p2_args.bands, "spectral bands");
  p2_args.folds_opt =
      eval_p2->add_option("--folds", p2_args.folds, "cross-validation folds");
  p2_args.degree_opt =
      eval_p2->add_option("--degree", p2_args.degree, "polynomial kernel degree");
  p2_args.c_opt = eval_p2->add_option("--c", p2_args.c, "SVM box constraint");
  eval_p2->add_option("--seed", p2_args.seed, "training seed");
  eval_p2->add_option("--config", p2_args.config_path, "TOML config file");
  eval_p2->callback([&] { cmd_eval_p2(p2_args); });

  // ablation ---------------------------------------------------------
  auto* ablation = app.add_subcommand(
      "ablation",
      "Run the gradient attack with each component removed and compare");
  AblationArgs ablation_args;
  ablation->add_option("--corpus", ablation_args.corpus,
                       "directory with manifest.csv and PNGs")
      ->required();
  ablation->add_option("--out", ablation_args.out, "output directory")->required();
  ablation_args.heatmap_opt = ablation->add_option(
      "--heatmap", ablation_args.heatmap,
      "file:<path> or occlusion (default: <corpus>/heatmap.png)");
  ablation_args.seed_opt =
      ablation->add_option("--seed", ablation_args.seed, "base seed");
  ablation->add_option("--workers", ablation_args.workers, "worker threads");
  ablation_args.quality_opt = ablation->add_option(
      "--quality", ablation_args.quality, "JPEG quality for the robustness column");
  ablation->add_option("--bands", ablation_args.bands, "spectral bands");
  ablation->add_option("--folds", ablation_args.folds, "cross-validation folds");
  ablation->add_option("--occlusion-patch", ablation_args.occlusion_patch,
                       "occlusion patch size");
  ablation->add_option("--occlusion-stride", ablation_args.occlusion_stride,
                       "occlusion stride");
  ablation->add_option("--config", ablation_args.config_path, "TOML config file");
  ablation_args.oracle.add_to(ablation);
  ablation_args.knobs = make_knobs(ablation, false);
  ablation->callback([&] { cmd_ablation(ablation_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
