#include "eclipse/synthetic_testkit.hpp"

#include "eclipse/errors.hpp"

namespace eclipse::testkit {

Gradient synthetic_score_gradient(const SyntheticOracleSpec& spec,
                                  const Image& image, const std::string& label) {
  SyntheticOracleSpec full = spec;
  full.top_k = 0;  // gradient is defined on the full distribution
  SyntheticOracle oracle(full);
  const ConfidenceResult result = oracle.classify(image);
  if (!result.scores.contains(label)) {
    throw InvalidArgument("synthetic_score_gradient: unknown label " + label);
  }
  const double score_k = result.scores.at(label);

  // expected template under the softmax distribution
  Gradient expected(image.height(), image.width());
  for (const auto& [l, tmpl] : full.templates) {
    const double s = result.scores.at(l);
    const auto& tv = tmpl.values();
    auto& ev = expected.values();
    for (std::size_t i = 0; i < ev.size(); ++i) ev[i] += s * tv[i];
  }

  Gradient grad(image.height(), image.width());
  const auto& tk = full.templates.at(label).values();
  const auto& ev = expected.values();
  auto& gv = grad.values();
  for (std::size_t i = 0; i < gv.size(); ++i) {
    gv[i] = score_k * (tk[i] - ev[i]) / full.temperature;
  }
  return grad;
}

}  // namespace eclipse::testkit
