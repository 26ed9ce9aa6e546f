#include "runo/aesthetics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace runo {

namespace {

constexpr std::array<std::string_view, kAestheticCount> kAestheticNames = {
    "full_rhyme",         "assonance",           "consonance",           "alliteration",
    "syllable_count_mean", "syllable_count_stdev", "long_ratio",          "n_clusters",
    "avg_cluster_distance", "max_cluster_distance", "concrete_ratio",     "sentiment_variance",
    "max_metaphoricity",  "n_metaphorical",
};

constexpr std::array<std::string_view, kGroupCount> kGroupNames = {"sonic", "semantic", "imagerial",
                                                                   "metaphorical"};

}  // namespace

std::string_view name(Aesthetic a) { return kAestheticNames[static_cast<std::size_t>(a)]; }
std::string_view name(FitnessGroup g) { return kGroupNames[static_cast<std::size_t>(g)]; }

std::optional<Aesthetic> aesthetic_from_name(std::string_view s) {
  for (std::size_t i = 0; i < kAestheticCount; ++i) {
    if (kAestheticNames[i] == s) return static_cast<Aesthetic>(i);
  }
  return std::nullopt;
}

FitnessGroup group_of(Aesthetic a) {
  switch (a) {
    case Aesthetic::FullRhyme:
    case Aesthetic::Assonance:
    case Aesthetic::Consonance:
    case Aesthetic::Alliteration:
    case Aesthetic::SyllableCountMean:
    case Aesthetic::SyllableCountStdev:
    case Aesthetic::LongRatio:
      return FitnessGroup::Sonic;
    case Aesthetic::NClusters:
    case Aesthetic::AvgClusterDistance:
    case Aesthetic::MaxClusterDistance:
      return FitnessGroup::Semantic;
    case Aesthetic::ConcreteRatio:
    case Aesthetic::SentimentVariance:
      return FitnessGroup::Imagerial;
    case Aesthetic::MaxMetaphoricity:
    case Aesthetic::NMetaphorical:
      return FitnessGroup::Metaphorical;
  }
  throw std::logic_error("unknown aesthetic");
}

std::vector<Aesthetic> members(FitnessGroup g) {
  std::vector<Aesthetic> out;
  for (auto a : all_aesthetics()) {
    if (group_of(a) == g) out.push_back(a);
  }
  return out;
}

nlohmann::ordered_json AestheticReport::to_json() const {
  nlohmann::ordered_json j;
  for (auto a : all_aesthetics()) j[std::string(name(a))] = (*this)[a];
  return j;
}

ResourcePaths ResourcePaths::in_directory(const std::filesystem::path& dir) {
  ResourcePaths p;
  p.embeddings = dir / "embeddings.txt";
  p.ngrams = dir / "ngrams.tsv";
  p.concreteness = dir / "concreteness.tsv";
  p.sentiment = dir / "sentiment.tsv";
  p.morphology = dir / "morphology.tsv";
  if (std::filesystem::exists(dir / "pos.tsv")) p.pos = dir / "pos.tsv";
  return p;
}

Resources load_resources(const ResourcePaths& paths) {
  Resources res;
  res.embeddings = EmbeddingStore::load(paths.embeddings);
  res.relatedness = RelatednessModel::build(load_ngrams(paths.ngrams));
  res.concreteness = ConcretenessLexicon::load(paths.concreteness);
  res.sentiment = std::make_shared<LexiconSentimentScorer>(LexiconSentimentScorer::load(paths.sentiment));
  res.morphology = std::make_shared<TableMorphology>(TableMorphology::load(paths.morphology, paths.pos));
  return res;
}

PoemAnalysis analyze(const Poem& poem, const Resources& res) {
  PoemAnalysis out;
  out.sonic = sonic_report(poem);
  out.fields = cluster_poem(poem, res.embeddings, res.clustering);
  if (!out.fields.empty()) {
    out.semantic = semantic_aesthetics(out.fields);
    out.metaphor = metaphor_aesthetics(poem, out.fields, res.relatedness);
  }

  for (const auto& verse : poem.verses) {
    out.verse_sentiment.push_back(res.sentiment ? res.sentiment->score_verse(verse) : 0.0);
  }
  double sentiment_variance = 0.0;
  if (!out.verse_sentiment.empty()) {
    const double n = static_cast<double>(out.verse_sentiment.size());
    double mean = 0.0;
    for (double s : out.verse_sentiment) mean += s;
    mean /= n;
    for (double s : out.verse_sentiment) sentiment_variance += (s - mean) * (s - mean);
    sentiment_variance /= n;
  }

  std::size_t concrete = 0, abstract = 0;
  for (auto pos : content_positions(poem)) {
    switch (res.concreteness.classify(token_at(poem, pos).lemma)) {
      case Concreteness::Concrete:
        ++concrete;
        out.concrete_positions.push_back(pos);
        break;
      case Concreteness::Abstract:
        ++abstract;
        break;
      case Concreteness::Unknown:
        break;
    }
  }

  auto& r = out.report;
  const auto& iv = out.sonic.interverse;
  r[Aesthetic::FullRhyme] = static_cast<double>(iv.full_rhyme);
  r[Aesthetic::Assonance] = static_cast<double>(iv.assonance);
  r[Aesthetic::Consonance] = static_cast<double>(iv.consonance);
  r[Aesthetic::Alliteration] = static_cast<double>(out.sonic.alliteration);
  r[Aesthetic::SyllableCountMean] = out.sonic.meter.count_mean;
  r[Aesthetic::SyllableCountStdev] = out.sonic.meter.count_stdev;
  r[Aesthetic::LongRatio] = out.sonic.meter.long_ratio;
  r[Aesthetic::NClusters] = static_cast<double>(out.semantic.n_clusters);
  r[Aesthetic::AvgClusterDistance] = out.semantic.avg_distance;
  r[Aesthetic::MaxClusterDistance] = out.semantic.max_distance;
  r[Aesthetic::ConcreteRatio] =
      concrete + abstract ? static_cast<double>(concrete) / static_cast<double>(concrete + abstract) : 0.0;
  r[Aesthetic::SentimentVariance] = sentiment_variance;
  r[Aesthetic::MaxMetaphoricity] = out.metaphor.max_metaphoricity;
  r[Aesthetic::NMetaphorical] = static_cast<double>(out.metaphor.n_metaphorical);
  return out;
}

AestheticReport evaluate(const Poem& poem, const Resources& res) { return analyze(poem, res).report; }

double gate(double value, double lo, double hi, double weight) {
  return value >= lo && value <= hi ? weight * value : 0.0;
}

AestheticProfile AestheticProfile::identity() {
  AestheticProfile p;
  p.era = "identity";
  return p;
}

namespace {

nlohmann::ordered_json bound_to_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

double bound_from_json(const nlohmann::json& j, double infinite) {
  if (j.is_null()) return infinite;
  return j.get<double>();
}

}  // namespace

nlohmann::ordered_json AestheticProfile::to_json() const {
  nlohmann::ordered_json j;
  j["era"] = era;
  j["forest"] = {{"seed", forest_seed}, {"trees", forest_trees}};
  nlohmann::ordered_json groups;
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    auto list = nlohmann::ordered_json::array();
    for (auto a : members(static_cast<FitnessGroup>(g))) list.push_back(std::string(name(a)));
    groups[std::string(kGroupNames[g])] = list;
  }
  j["groups"] = groups;
  nlohmann::ordered_json aesthetics;
  for (auto a : all_aesthetics()) {
    const auto& s = (*this)[a];
    aesthetics[std::string(name(a))] = {{"group", std::string(name(group_of(a)))},
                                        {"weight", s.weight},
                                        {"lo", bound_to_json(s.lo)},
                                        {"hi", bound_to_json(s.hi)}};
  }
  j["aesthetics"] = aesthetics;
  return j;
}

AestheticProfile AestheticProfile::from_json(const nlohmann::json& j) {
  AestheticProfile p;
  p.era = j.at("era").get<std::string>();
  if (j.contains("forest")) {
    p.forest_seed = j["forest"].value("seed", std::uint64_t{0});
    p.forest_trees = j["forest"].value("trees", std::size_t{0});
  }
  if (j.contains("groups")) {
    for (const auto& [group, list] : j["groups"].items()) {
      for (const auto& item : list) {
        auto a = aesthetic_from_name(item.get<std::string>());
        if (!a || name(group_of(*a)) != group) {
          throw std::runtime_error("profile groups do not match the fixed aesthetic grouping");
        }
      }
    }
  }
  const auto& aes = j.at("aesthetics");
  for (auto a : all_aesthetics()) {
    const auto key = std::string(name(a));
    if (!aes.contains(key)) throw std::runtime_error("profile is missing aesthetic '" + key + "'");
    const auto& e = aes[key];
    auto& s = p[a];
    s.weight = e.at("weight").get<double>();
    s.lo = bound_from_json(e.at("lo"), -std::numeric_limits<double>::infinity());
    s.hi = bound_from_json(e.at("hi"), std::numeric_limits<double>::infinity());
    if (s.weight < 0.0) throw std::runtime_error("negative weight for '" + key + "'");
    if (s.lo > s.hi) throw std::runtime_error("empty range for '" + key + "'");
  }
  return p;
}

void AestheticProfile::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

AestheticProfile AestheticProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile " + path.string());
  return from_json(nlohmann::json::parse(in));
}

FitnessVector fitness(const AestheticReport& report, const AestheticProfile& profile) {
  std::array<double, kGroupCount> sums{};
  for (auto a : all_aesthetics()) {
    const auto& s = profile[a];
    sums[static_cast<std::size_t>(group_of(a))] += gate(report[a], s.lo, s.hi, s.weight);
  }
  return {sums[0], sums[1], sums[2], sums[3]};
}

bool likes(const FitnessVector& f) {
  return f.sonic > 0.0 && f.semantic > 0.0 && f.imagerial > 0.0 && f.metaphorical > 0.0;
}

bool likes(const Poem& poem, const AestheticProfile& profile, const Resources& res) {
  return likes(fitness(evaluate(poem, res), profile));
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

AestheticProfile learn_profile(std::span<const LabeledReport> samples, std::string era,
                               const ForestOptions& options) {
  std::size_t positives = 0;
  for (const auto& s : samples) positives += s.target;
  const auto negatives = samples.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("profile learning needs both target-era and other-era poems");
  }
  if (positives < 2 || negatives < 2) {
    throw std::invalid_argument("profile learning needs at least 2 poems of each label");
  }

  AestheticProfile profile;
  profile.era = std::move(era);
  profile.forest_seed = options.seed;
  profile.forest_trees = options.n_trees;

  std::vector<int> labels;
  for (const auto& s : samples) labels.push_back(s.target ? 1 : 0);

  for (std::size_t g = 0; g < kGroupCount; ++g) {
    const auto group = members(static_cast<FitnessGroup>(g));
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples) {
      std::vector<double> row;
      for (auto a : group) row.push_back(s.report[a]);
      rows.push_back(std::move(row));
    }
    ForestOptions group_options = options;
    group_options.seed = options.seed + g;
    const auto forest = RandomForest::fit(rows, labels, group_options);
    auto weights = forest.feature_importances();
    double total = 0.0;
    for (double w : weights) total += w;
    // No split anywhere in the group: nothing to prefer, weigh evenly.
    if (total <= 0.0) weights.assign(group.size(), 1.0 / static_cast<double>(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) profile[group[i]].weight = weights[i];
  }

  for (auto a : all_aesthetics()) {
    std::vector<double> target_values;
    for (const auto& s : samples) {
      if (s.target) target_values.push_back(s.report[a]);
    }
    profile[a].lo = percentile(target_values, 0.25);
    profile[a].hi = percentile(target_values, 0.75);
  }
  return profile;
}

}  // namespace runo
