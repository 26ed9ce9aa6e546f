#include "runo/metaphor.hpp"

#include <algorithm>

namespace runo {

double metaphoricity(double rel_tenor, double rel_vehicle) {
  const double shared = std::min(rel_tenor, rel_vehicle);
  const double bias = std::max(0.0, rel_vehicle - rel_tenor);
  if (shared > 0.0 && bias > 0.0) return 0.5 * (shared + bias);
  return 0.0;
}

double metaphoricity(std::string_view word, std::string_view tenor, std::string_view vehicle,
                     const RelatednessModel& model) {
  return metaphoricity(model.relatedness(word, tenor), model.relatedness(word, vehicle));
}

MetaphorAesthetics metaphor_aesthetics(const Poem& poem, const SemanticFields& fields,
                                       const RelatednessModel& model) {
  MetaphorAesthetics out;
  const auto k = fields.clusters.size();
  if (k < 2) return out;
  const auto lemmas = content_lemmas(poem);
  std::vector<std::size_t> membership;
  membership.reserve(lemmas.size());
  for (const auto& l : lemmas) membership.push_back(fields.cluster_of(l));

  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t v = 0; v < k; ++v) {
      if (t == v) continue;
      ++out.pairs_inspected;
      const auto& tenor = fields.topics[t];
      const auto& vehicle = fields.topics[v];
      Interpretation best{"", tenor, vehicle, 0.0};
      for (std::size_t w = 0; w < lemmas.size(); ++w) {
        if (membership[w] == t || membership[w] == v) continue;
        const double score = metaphoricity(lemmas[w], tenor, vehicle, model);
        if (score > best.score) {
          best.score = score;
          best.word = lemmas[w];
        }
      }
      if (best.score > 0.0) {
        ++out.n_metaphorical;
        out.max_metaphoricity = std::max(out.max_metaphoricity, best.score);
        out.interpretations.push_back(std::move(best));
      }
    }
  }
  return out;
}

}  // namespace runo
