#include "eclipse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eclipse/codec.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

const char* query_phase_name(QueryPhase phase) {
  switch (phase) {
    case QueryPhase::kInitial: return "initial";
    case QueryPhase::kGradientProbe: return "gradient-probe";
    case QueryPhase::kFitnessCheck: return "fitness-check";
  }
  return "unknown";
}

double query_target(const Oracle& oracle, const Image& image,
                    const std::string& target_label) {
  return oracle.classify(image).score_or_zero(target_label);
}

void SyntheticOracleSpec::validate() const {
  if (templates.size() < 2) {
    throw InvalidArgument("SyntheticOracleSpec: need at least 2 labels");
  }
  if (!(temperature > 0.0)) {
    throw InvalidArgument("SyntheticOracleSpec: temperature must be positive");
  }
  const Tensor3& first = templates.begin()->second;
  for (const auto& [label, tmpl] : templates) {
    if (!tmpl.same_shape(first) || tmpl.empty()) {
      throw InvalidArgument("SyntheticOracleSpec: templates must share one shape");
    }
  }
  if (top_k < 0) {
    throw InvalidArgument("SyntheticOracleSpec: top_k must be >= 0");
  }
}

SyntheticOracle::SyntheticOracle(SyntheticOracleSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  height_ = spec_.templates.begin()->second.height();
  width_ = spec_.templates.begin()->second.width();
}

ConfidenceResult SyntheticOracle::classify(const Image& image) const {
  if (image.height() != height_ || image.width() != width_) {
    throw InvalidArgument("SyntheticOracle: image shape does not match templates");
  }
  std::vector<std::pair<std::string, double>> logits;
  logits.reserve(spec_.templates.size());
  for (const auto& [label, tmpl] : spec_.templates) {
    double dot = 0.0;
    const auto& tv = tmpl.values();
    const auto& iv = image.values();
    for (std::size_t i = 0; i < tv.size(); ++i) dot += tv[i] * iv[i];
    logits.emplace_back(label, dot / spec_.temperature);
  }
  double max_logit = logits.front().second;
  for (const auto& [label, l] : logits) max_logit = std::max(max_logit, l);
  double denom = 0.0;
  for (auto& [label, l] : logits) {
    l = std::exp(l - max_logit);
    denom += l;
  }
  ConfidenceResult result;
  for (const auto& [label, e] : logits) result.scores[label] = e / denom;

  if (spec_.top_k > 0 && static_cast<std::size_t>(spec_.top_k) < result.scores.size()) {
    std::vector<std::pair<std::string, double>> ranked(result.scores.begin(),
                                                       result.scores.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    ranked.resize(spec_.top_k);
    result.scores.clear();
    for (const auto& [label, s] : ranked) result.scores[label] = s;
  }
  return result;
}

namespace {

nlohmann::json tensor_to_json(const Tensor3& t) {
  return nlohmann::json{{"height", t.height()},
                        {"width", t.width()},
                        {"values", t.values()}};
}

Tensor3 tensor_from_json(const nlohmann::json& j) {
  const int h = j.at("height").get<int>();
  const int w = j.at("width").get<int>();
  Tensor3 t(h, w);
  const auto vals = j.at("values").get<std::vector<double>>();
  if (vals.size() != t.size()) {
    throw SchemaError("synthetic spec: template value count does not match shape");
  }
  t.values() = vals;
  return t;
}

}  // namespace

std::string synthetic_spec_to_json(const SyntheticOracleSpec& spec) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [label, tmpl] : spec.templates) {
    labels[label] = tensor_to_json(tmpl);
  }
  nlohmann::json j{{"kind", "synthetic-oracle"},
                   {"temperature", spec.temperature},
                   {"top_k", spec.top_k},
                   {"labels", labels}};
  return j.dump(2);
}

SyntheticOracleSpec synthetic_spec_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("synthetic spec: invalid JSON: ") + e.what());
  }
  SyntheticOracleSpec spec;
  try {
    spec.temperature = j.at("temperature").get<double>();
    spec.top_k = j.value("top_k", 0);
    for (const auto& [label, tj] : j.at("labels").items()) {
      spec.templates[label] = tensor_from_json(tj);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("synthetic spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SyntheticOracleSpec load_synthetic_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_synthetic_spec: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return synthetic_spec_from_json(ss.str());
}

void save_synthetic_spec(const SyntheticOracleSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("save_synthetic_spec: cannot open " + path);
  out << synthetic_spec_to_json(spec) << '\n';
}

ConfidenceResult CountingOracle::classify(const Image& image) const {
  counts_[static_cast<int>(phase_)].fetch_add(1, std::memory_order_relaxed);
  return inner_.classify(image);
}

QueryLedger CountingOracle::ledger() const {
  QueryLedger ledger;
  for (int i = 0; i < kNumQueryPhases; ++i) {
    ledger.per_phase[i] = counts_[i].load(std::memory_order_relaxed);
    ledger.total += ledger.per_phase[i];
  }
  return ledger;
}

ConfidenceResult CachingOracle::classify(const Image& image) const {
  const auto bytes = quantize_rgb(image);
  std::string key(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  ConfidenceResult result = inner_.classify(image);
  {
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(key), result);
  }
  return result;
}

std::size_t CachingOracle::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

}  // namespace eclipse
