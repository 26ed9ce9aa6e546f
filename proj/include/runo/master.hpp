#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "runo/aesthetics.hpp"
#include "runo/corpus.hpp"
#include "runo/rng.hpp"

namespace runo {

struct RunConfig {
  std::size_t population_size = 100;
  std::size_t offspring_size = 100;
  std::size_t generations = 50;
  std::size_t theme_expansion = 30;
  std::size_t related_pool = 1000;
  std::size_t similar_pool = 300;
  double crossover_prob = 0.9;
  std::uint64_t rng_seed = 1;
  /// Scoring threads; 0 means hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::invalid_argument on zero sizes or a probability outside [0, 1].
  void validate() const;
  nlohmann::ordered_json to_json() const;
  /// Missing keys keep their defaults.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
};

struct Individual {
  Poem poem;
  std::string theme;
  std::string lineage;
  friend bool operator==(const Individual&, const Individual&) = default;
};

/// The n nearest embedding neighbours of the theme.
/// Throws std::invalid_argument when the theme has no embedding.
std::vector<std::string> expand_theme(std::string_view theme, const EmbeddingStore& store, std::size_t n);

struct MutationOutcome {
  Individual individual;
  bool applied = false;
  std::optional<TokenPos> position;
};

/// Replacement lemmas for the token at `pos`, paired with their realized
/// surface forms, in candidate-pool order.
std::vector<std::pair<std::string, std::string>> mutation_candidates(const Individual& ind, TokenPos pos,
                                                                     const Resources& res,
                                                                     const RunConfig& cfg);

MutationOutcome mutate(const Individual& ind, const Resources& res, const RunConfig& cfg, Rng& rng);

/// Swap the verse tails after `cut` (0 < cut <= min verse count).
std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b, std::size_t cut);
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, Rng& rng);

std::vector<Individual> init_population(const Poem& seed, std::string_view theme, const RunConfig& cfg,
                                        const Resources& res, Rng& rng);

struct ScoredIndividual {
  Individual individual;
  AestheticReport report;
  FitnessVector fitness;
  bool liked = false;
};

struct RunResult {
  std::vector<ScoredIndividual> population;
  std::size_t generations = 0;
  std::size_t mutations = 0;
  std::size_t noop_mutations = 0;
  std::size_t evaluations = 0;
};

/// Called for every individual scored during a run, in scoring order.
using ScoreObserver = std::function<void(const ScoredIndividual&)>;

RunResult run(const Poem& seed, std::string_view theme, const RunConfig& cfg, const AestheticProfile& profile,
              const Resources& res, Rng& rng, const ScoreObserver& observer = {});

/// A uniformly random liked individual, else the first with the largest fitness sum.
const ScoredIndividual& choose_output(const RunResult& result, Rng& rng);

struct PairRecord {
  std::string source;
  std::string target;
  std::string poem_id;
  std::size_t verse_index = 0;
  std::string era;

  nlohmann::ordered_json to_json() const;
  static PairRecord from_json(const nlohmann::json& j);
  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

struct PairExport {
  std::vector<PairRecord> records;
  /// Runs whose output verse count differs from the seed.
  std::size_t skipped = 0;
};

PairExport export_pairs(std::span<const std::pair<Poem, Poem>> runs, std::string_view era);

void write_pairs(std::ostream& out, std::span<const PairRecord> records);
std::vector<PairRecord> read_pairs(std::istream& in);

}  // namespace runo
