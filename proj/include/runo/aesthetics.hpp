#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "runo/corpus.hpp"
#include "runo/forest.hpp"
#include "runo/lexres.hpp"
#include "runo/metaphor.hpp"
#include "runo/semfields.hpp"
#include "runo/sonic.hpp"

namespace runo {

enum class Aesthetic : std::size_t {
  FullRhyme,
  Assonance,
  Consonance,
  Alliteration,
  SyllableCountMean,
  SyllableCountStdev,
  LongRatio,
  NClusters,
  AvgClusterDistance,
  MaxClusterDistance,
  ConcreteRatio,
  SentimentVariance,
  MaxMetaphoricity,
  NMetaphorical,
};
inline constexpr std::size_t kAestheticCount = 14;

enum class FitnessGroup : std::size_t { Sonic, Semantic, Imagerial, Metaphorical };
inline constexpr std::size_t kGroupCount = 4;

std::string_view name(Aesthetic a);
std::string_view name(FitnessGroup g);
std::optional<Aesthetic> aesthetic_from_name(std::string_view s);
FitnessGroup group_of(Aesthetic a);
std::vector<Aesthetic> members(FitnessGroup g);
constexpr std::array<Aesthetic, kAestheticCount> all_aesthetics() {
  std::array<Aesthetic, kAestheticCount> out{};
  for (std::size_t i = 0; i < kAestheticCount; ++i) out[i] = static_cast<Aesthetic>(i);
  return out;
}

struct AestheticReport {
  std::array<double, kAestheticCount> values{};

  double operator[](Aesthetic a) const { return values[static_cast<std::size_t>(a)]; }
  double& operator[](Aesthetic a) { return values[static_cast<std::size_t>(a)]; }
  nlohmann::ordered_json to_json() const;
};

/// Everything the aesthetic functions read. Immutable once loaded.
struct Resources {
  EmbeddingStore embeddings;
  RelatednessModel relatedness;
  ConcretenessLexicon concreteness;
  std::shared_ptr<const SentimentScorer> sentiment;
  std::shared_ptr<const MorphologyProvider> morphology;
  AffinityOptions clustering;
};

struct ResourcePaths {
  std::filesystem::path embeddings;
  std::filesystem::path ngrams;
  std::filesystem::path concreteness;
  std::filesystem::path sentiment;
  std::filesystem::path morphology;
  std::optional<std::filesystem::path> pos;

  /// Standard file names inside one directory.
  static ResourcePaths in_directory(const std::filesystem::path& dir);
};

Resources load_resources(const ResourcePaths& paths);

/// Intermediate results kept for framing.
struct PoemAnalysis {
  SonicReport sonic;
  SemanticFields fields;
  SemanticAesthetics semantic;
  MetaphorAesthetics metaphor;
  std::vector<double> verse_sentiment;
  std::vector<TokenPos> concrete_positions;
  AestheticReport report;
};

PoemAnalysis analyze(const Poem& poem, const Resources& res);
AestheticReport evaluate(const Poem& poem, const Resources& res);

/// weight * value inside [lo, hi] (inclusive), else 0.
double gate(double value, double lo, double hi, double weight);

struct AestheticSetting {
  double weight = 1.0;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

struct AestheticProfile {
  std::string era;
  std::array<AestheticSetting, kAestheticCount> settings{};
  std::uint64_t forest_seed = 0;
  std::size_t forest_trees = 0;

  const AestheticSetting& operator[](Aesthetic a) const { return settings[static_cast<std::size_t>(a)]; }
  AestheticSetting& operator[](Aesthetic a) { return settings[static_cast<std::size_t>(a)]; }

  /// Weight 1 and unbounded range everywhere.
  static AestheticProfile identity();

  nlohmann::ordered_json to_json() const;
  static AestheticProfile from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static AestheticProfile load(const std::filesystem::path& path);
};

struct FitnessVector {
  double sonic = 0.0;
  double semantic = 0.0;
  double imagerial = 0.0;
  double metaphorical = 0.0;

  std::array<double, kGroupCount> as_array() const { return {sonic, semantic, imagerial, metaphorical}; }
  double sum() const { return sonic + semantic + imagerial + metaphorical; }
  friend bool operator==(const FitnessVector&, const FitnessVector&) = default;
};

FitnessVector fitness(const AestheticReport& report, const AestheticProfile& profile);

/// The master likes a poem when every fitness component is positive.
bool likes(const FitnessVector& f);
bool likes(const Poem& poem, const AestheticProfile& profile, const Resources& res);

/// Linear interpolation between order statistics; q in [0, 1].
double percentile(std::vector<double> values, double q);

struct LabeledReport {
  AestheticReport report;
  bool target = false;
};

/// Per-group forest importances as weights, [P25, P75] of the target samples
/// as ranges. Throws std::invalid_argument unless both labels have >= 2 samples.
AestheticProfile learn_profile(std::span<const LabeledReport> samples, std::string era,
                               const ForestOptions& options = {});

}  // namespace runo
