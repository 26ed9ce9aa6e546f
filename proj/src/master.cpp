#include "runo/master.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "runo/moo.hpp"
#include "runo/text.hpp"

namespace runo {

void RunConfig::validate() const {
  if (population_size == 0 || offspring_size == 0 || theme_expansion == 0) {
    throw std::invalid_argument("population, offspring and theme expansion sizes must be positive");
  }
  if (related_pool == 0 && similar_pool == 0) {
    throw std::invalid_argument("at least one candidate pool must be non-empty");
  }
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
    throw std::invalid_argument("crossover_prob must lie in [0, 1]");
  }
}

nlohmann::ordered_json RunConfig::to_json() const {
  return {{"population_size", population_size}, {"offspring_size", offspring_size},
          {"generations", generations},         {"theme_expansion", theme_expansion},
          {"related_pool", related_pool},       {"similar_pool", similar_pool},
          {"crossover_prob", crossover_prob},   {"rng_seed", rng_seed},
          {"threads", threads}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  static const std::unordered_set<std::string> known = {
      "population_size", "offspring_size", "generations", "theme_expansion", "related_pool",
      "similar_pool",    "crossover_prob", "rng_seed",    "threads"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown run config key '" + key + "'");
  }
  RunConfig c;
  c.population_size = j.value("population_size", c.population_size);
  c.offspring_size = j.value("offspring_size", c.offspring_size);
  c.generations = j.value("generations", c.generations);
  c.theme_expansion = j.value("theme_expansion", c.theme_expansion);
  c.related_pool = j.value("related_pool", c.related_pool);
  c.similar_pool = j.value("similar_pool", c.similar_pool);
  c.crossover_prob = j.value("crossover_prob", c.crossover_prob);
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  c.threads = j.value("threads", c.threads);
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return from_json(nlohmann::json::parse(in));
}

std::vector<std::string> expand_theme(std::string_view theme, const EmbeddingStore& store, std::size_t n) {
  auto similar = store.top_similar(theme, n);
  if (!similar) {
    std::string msg = "theme '" + std::string(theme) + "' is not in the embedding vocabulary";
    if (store.size() > 0) msg += "; choose an in-vocabulary lemma such as '" + store.words().front() + "'";
    throw std::invalid_argument(msg);
  }
  std::vector<std::string> out;
  out.reserve(similar->size());
  for (auto& s : *similar) out.push_back(std::move(s.word));
  return out;
}

namespace {

const Token* governor_of(const Verse& verse, const Token& t) {
  if (t.head == "_" || t.head == "0") return nullptr;
  for (const auto& other : verse.tokens) {
    if (other.id == t.head) return &other;
  }
  return nullptr;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> mutation_candidates(const Individual& ind, TokenPos pos,
                                                                     const Resources& res,
                                                                     const RunConfig& cfg) {
  const Verse& verse = ind.poem.verses.at(pos.verse);
  const Token& original = verse.tokens.at(pos.token);

  std::vector<std::string> pool;
  std::unordered_set<std::string> seen{original.lemma};
  const auto related = res.relatedness.related(ind.theme);
  for (std::size_t i = 0; i < related.size() && i < cfg.related_pool; ++i) {
    if (seen.insert(related[i].word).second) pool.push_back(related[i].word);
  }
  if (auto similar = res.embeddings.top_similar(original.lemma, cfg.similar_pool)) {
    for (const auto& s : *similar) {
      if (seen.insert(s.word).second) pool.push_back(s.word);
    }
  }

  const Token* governor = original.deprel == "obj" ? governor_of(verse, original) : nullptr;
  const bool upper = text::starts_upper(original.surface);
  std::vector<std::pair<std::string, std::string>> out;
  for (auto& lemma : pool) {
    if (!res.embeddings.contains(lemma)) continue;
    const auto pos_list = res.morphology->parts_of_speech(lemma);
    if (std::find(pos_list.begin(), pos_list.end(), original.pos) == pos_list.end()) continue;
    auto form = governor ? res.morphology->realize_object(lemma, original.morph, governor->lemma)
                         : res.morphology->realize(lemma, original.morph);
    if (!form) continue;
    out.emplace_back(std::move(lemma), upper ? text::capitalize(*form) : std::move(*form));
  }
  return out;
}

MutationOutcome mutate(const Individual& ind, const Resources& res, const RunConfig& cfg, Rng& rng) {
  MutationOutcome out{ind, false, std::nullopt};
  const auto positions = content_positions(ind.poem);
  if (positions.empty()) return out;
  const TokenPos pos = positions[rng.index(positions.size())];
  out.position = pos;
  const auto candidates = mutation_candidates(ind, pos, res, cfg);
  if (candidates.empty()) return out;
  const auto& [lemma, surface] = candidates[rng.index(candidates.size())];
  Token& t = out.individual.poem.verses[pos.verse].tokens[pos.token];
  t.lemma = lemma;
  t.surface = surface;
  out.applied = true;
  return out;
}

std::pair<Individual, Individual> crossover_at(const Individual& a, const Individual& b, std::size_t cut) {
  const std::size_t limit = std::min(a.poem.verses.size(), b.poem.verses.size());
  if (cut == 0 || cut > limit) throw std::out_of_range("crossover cut outside the shared verse range");
  Individual c1 = a;
  Individual c2 = b;
  c1.poem.verses.resize(cut);
  c2.poem.verses.resize(cut);
  c1.poem.verses.insert(c1.poem.verses.end(), b.poem.verses.begin() + static_cast<std::ptrdiff_t>(cut),
                        b.poem.verses.end());
  c2.poem.verses.insert(c2.poem.verses.end(), a.poem.verses.begin() + static_cast<std::ptrdiff_t>(cut),
                        a.poem.verses.end());
  auto fix_stanzas = [](Poem& p) {
    std::erase_if(p.stanza_starts, [&](std::size_t s) { return s == 0 || s >= p.verses.size(); });
  };
  fix_stanzas(c1.poem);
  fix_stanzas(c2.poem);
  return {std::move(c1), std::move(c2)};
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b, Rng& rng) {
  const std::size_t limit = std::min(a.poem.verses.size(), b.poem.verses.size());
  if (limit == 0) throw std::invalid_argument("crossover needs poems with at least one verse");
  return crossover_at(a, b, 1 + rng.index(limit));
}

std::vector<Individual> init_population(const Poem& seed, std::string_view theme, const RunConfig& cfg,
                                        const Resources& res, Rng& rng) {
  const auto themes = expand_theme(theme, res.embeddings, cfg.theme_expansion);
  if (themes.empty()) throw std::invalid_argument("theme expansion is empty; the vocabulary is too small");
  std::vector<Individual> population;
  population.reserve(cfg.population_size);
  for (std::size_t i = 0; i < cfg.population_size; ++i) {
    Individual ind{seed, themes[rng.index(themes.size())], seed.id};
    population.push_back(mutate(ind, res, cfg, rng).individual);
  }
  return population;
}

namespace {

std::string poem_key(const Poem& poem) {
  std::string key;
  for (const auto& verse : poem.verses) {
    for (const auto& t : verse.tokens) {
      key += t.surface;
      key += '\x1f';
      key += t.lemma;
      key += '\x1f';
      key += t.pos;
      key += '\x1e';
    }
    key += '\x1d';
  }
  return key;
}

/// Memoized, optionally threaded evaluation. Reports depend only on the poem text.
class Scorer {
 public:
  Scorer(const AestheticProfile& profile, const Resources& res, std::size_t threads)
      : profile_(profile), res_(res), threads_(threads ? threads : std::max(1u, std::thread::hardware_concurrency())) {}

  std::vector<ScoredIndividual> score(std::span<const Individual> inds) {
    std::vector<std::string> keys;
    keys.reserve(inds.size());
    std::vector<std::size_t> pending;
    std::unordered_set<std::string> queued;
    for (std::size_t i = 0; i < inds.size(); ++i) {
      keys.push_back(poem_key(inds[i].poem));
      if (!cache_.contains(keys.back()) && queued.insert(keys.back()).second) pending.push_back(i);
    }

    std::vector<AestheticReport> fresh(pending.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
      for (std::size_t j = begin; j < pending.size(); j += stride) fresh[j] = evaluate(inds[pending[j]].poem, res_);
    };
    const std::size_t n_threads = std::min(threads_, pending.size());
    if (n_threads <= 1) {
      work(0, 1);
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work, t, n_threads);
    }
    for (std::size_t j = 0; j < pending.size(); ++j) cache_.emplace(keys[pending[j]], fresh[j]);
    evaluations_ += pending.size();

    std::vector<ScoredIndividual> out;
    out.reserve(inds.size());
    for (std::size_t i = 0; i < inds.size(); ++i) {
      const auto& report = cache_.at(keys[i]);
      const auto f = fitness(report, profile_);
      out.push_back({inds[i], report, f, likes(f)});
    }
    return out;
  }

  std::size_t evaluations() const { return evaluations_; }

 private:
  const AestheticProfile& profile_;
  const Resources& res_;
  std::size_t threads_;
  std::unordered_map<std::string, AestheticReport> cache_;
  std::size_t evaluations_ = 0;
};

std::vector<moo::ObjectivePoint> objective_points(std::span<const ScoredIndividual> scored) {
  std::vector<moo::ObjectivePoint> points;
  points.reserve(scored.size());
  for (std::size_t i = 0; i < scored.size(); ++i) {
    const auto a = scored[i].fitness.as_array();
    points.push_back({i, {a.begin(), a.end()}});
  }
  return points;
}

}  // namespace

RunResult run(const Poem& seed, std::string_view theme, const RunConfig& cfg, const AestheticProfile& profile,
              const Resources& res, Rng& rng, const ScoreObserver& observer) {
  cfg.validate();
  if (!res.morphology) throw std::invalid_argument("resources have no morphology provider");
  RunResult result;
  Scorer scorer(profile, res, cfg.threads);
  auto notify = [&](const std::vector<ScoredIndividual>& scored) {
    if (observer) {
      for (const auto& s : scored) observer(s);
    }
  };

  auto initial = init_population(seed, theme, cfg, res, rng);
  result.mutations += initial.size();
  result.population = scorer.score(initial);
  notify(result.population);

  for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
    const auto points = objective_points(result.population);
    const auto rc = moo::rank_and_crowd(points);
    auto tournament = [&]() -> const Individual& {
      const std::size_t i = rng.index(points.size());
      const std::size_t j = rng.index(points.size());
      return result.population[moo::crowded_less(rc, j, i) ? j : i].individual;
    };

    std::vector<Individual> offspring;
    offspring.reserve(cfg.offspring_size + 1);
    while (offspring.size() < cfg.offspring_size) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      auto children = rng.bernoulli(cfg.crossover_prob) ? crossover(p1, p2, rng) : std::pair{p1, p2};
      for (Individual* child : {&children.first, &children.second}) {
        if (offspring.size() == cfg.offspring_size) break;
        auto m = mutate(*child, res, cfg, rng);
        ++result.mutations;
        if (!m.applied) ++result.noop_mutations;
        offspring.push_back(std::move(m.individual));
      }
    }

    auto scored_offspring = scorer.score(offspring);
    notify(scored_offspring);
    std::vector<ScoredIndividual> combined = std::move(result.population);
    combined.insert(combined.end(), std::make_move_iterator(scored_offspring.begin()),
                    std::make_move_iterator(scored_offspring.end()));
    const auto survivors = moo::select_survivors(objective_points(combined), cfg.population_size);
    std::vector<ScoredIndividual> next;
    next.reserve(survivors.size());
    for (auto id : survivors) next.push_back(std::move(combined[id]));
    result.population = std::move(next);
    ++result.generations;
  }
  result.evaluations = scorer.evaluations();
  return result;
}

const ScoredIndividual& choose_output(const RunResult& result, Rng& rng) {
  if (result.population.empty()) throw std::invalid_argument("empty population");
  std::vector<std::size_t> liked;
  for (std::size_t i = 0; i < result.population.size(); ++i) {
    if (result.population[i].liked) liked.push_back(i);
  }
  if (!liked.empty()) return result.population[liked[rng.index(liked.size())]];
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.population.size(); ++i) {
    if (result.population[i].fitness.sum() > result.population[best].fitness.sum()) best = i;
  }
  return result.population[best];
}

nlohmann::ordered_json PairRecord::to_json() const {
  return {{"source", source}, {"target", target}, {"poem_id", poem_id}, {"verse_index", verse_index}, {"era", era}};
}

PairRecord PairRecord::from_json(const nlohmann::json& j) {
  PairRecord r;
  r.source = j.at("source").get<std::string>();
  r.target = j.at("target").get<std::string>();
  r.poem_id = j.at("poem_id").get<std::string>();
  r.verse_index = j.at("verse_index").get<std::size_t>();
  r.era = j.value("era", std::string{});
  if (r.source.empty() || r.target.empty()) throw std::invalid_argument("pair record with empty verse");
  return r;
}

PairExport export_pairs(std::span<const std::pair<Poem, Poem>> runs, std::string_view era) {
  PairExport out;
  for (const auto& [seed, output] : runs) {
    if (seed.verses.size() != output.verses.size()) {
      ++out.skipped;
      continue;
    }
    for (std::size_t v = 0; v < seed.verses.size(); ++v) {
      out.records.push_back(
          {verse_text(seed.verses[v]), verse_text(output.verses[v]), seed.id, v, std::string(era)});
    }
  }
  return out;
}

void write_pairs(std::ostream& out, std::span<const PairRecord> records) {
  for (const auto& r : records) out << r.to_json().dump() << '\n';
}

std::vector<PairRecord> read_pairs(std::istream& in) {
  std::vector<PairRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(PairRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError(n, e.what());
    }
  }
  return out;
}

}  // namespace runo
