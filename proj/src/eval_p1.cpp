#include "eclipse/eval_p1.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "eclipse/codec.hpp"
#include "eclipse/errors.hpp"

namespace eclipse {

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CompressionRecord compression_loss(const Oracle& oracle, const Image& adversarial,
                                   const std::string& target_label, int quality,
                                   std::string image_id) {
  CompressionRecord rec;
  rec.image_id = std::move(image_id);
  rec.quality = quality;
  rec.pre_score = query_target(oracle, adversarial, target_label);
  rec.post_score =
      query_target(oracle, jpeg_roundtrip(adversarial, quality), target_label);
  rec.loss = rec.pre_score - rec.post_score;
  return rec;
}

P1Report p1_metrics(const std::vector<CompressionRecord>& records) {
  if (records.empty()) throw InvalidArgument("p1_metrics: empty input");
  P1Report report;
  report.quality = records.front().quality;
  report.n = static_cast<int>(records.size());

  std::vector<double> losses;
  losses.reserve(records.size());
  int low = 0;
  int surviving = 0;
  for (const auto& rec : records) {
    if (rec.quality != report.quality) {
      throw InvalidArgument("p1_metrics: records mix JPEG qualities");
    }
    losses.push_back(rec.loss);
    if (rec.loss < kLowLossThreshold) ++low;
    if (rec.loss < kSurvivingThreshold) ++surviving;
  }
  report.median_loss = median(std::move(losses));
  report.low_loss_pct = 100.0 * low / report.n;
  report.surviving_pct = 100.0 * surviving / report.n;
  return report;
}

std::vector<P1Report> p1_metrics_by_quality(const std::vector<CompressionRecord>& records) {
  std::map<int, std::vector<CompressionRecord>> groups;
  for (const auto& rec : records) groups[rec.quality].push_back(rec);
  std::vector<P1Report> reports;
  reports.reserve(groups.size());
  for (const auto& [quality, group] : groups) {
    (void)quality;
    reports.push_back(p1_metrics(group));
  }
  return reports;
}

}  // namespace eclipse
