#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "runo/corpus.hpp"
#include "runo/lexres.hpp"
#include "runo/semfields.hpp"

namespace runo {

/// Score from the two relatedness lookups of a word. Shared relatedness is
/// min(rel_tenor, rel_vehicle); vehicle bias is max(0, rel_vehicle -
/// rel_tenor). Their mean when both are positive, else 0.
double metaphoricity(double rel_tenor, double rel_vehicle);

double metaphoricity(std::string_view word, std::string_view tenor, std::string_view vehicle,
                     const RelatednessModel& model);

struct Interpretation {
  std::string word;
  std::string tenor;
  std::string vehicle;
  double score = 0.0;
};

struct MetaphorAesthetics {
  double max_metaphoricity = 0.0;
  /// Ordered tenor/vehicle topic combinations with a positive score.
  std::size_t n_metaphorical = 0;
  /// Best word per positive combination.
  std::vector<Interpretation> interpretations;
  std::size_t pairs_inspected = 0;
};

/// Every ordered (tenor, vehicle) pair of cluster topics, scored by the best
/// content lemma outside both clusters.
MetaphorAesthetics metaphor_aesthetics(const Poem& poem, const SemanticFields& fields,
                                       const RelatednessModel& model);

}  // namespace runo
