#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>

#include "runo/aesthetics.hpp"
#include "runo/rng.hpp"
#include "support.hpp"

using namespace runo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AestheticReport report_of(std::initializer_list<double> values) {
  AestheticReport r;
  std::size_t i = 0;
  for (double v : values) r.values[i++] = v;
  return r;
}

}  // namespace

TEST_CASE("registry") {
  CHECK(kAestheticCount == 14);
  std::size_t total = 0;
  for (std::size_t g = 0; g < kGroupCount; ++g) total += members(static_cast<FitnessGroup>(g)).size();
  CHECK(total == kAestheticCount);
  for (auto a : all_aesthetics()) CHECK(aesthetic_from_name(name(a)) == a);
  CHECK_FALSE(aesthetic_from_name("beauty").has_value());
  CHECK(group_of(Aesthetic::ConcreteRatio) == FitnessGroup::Imagerial);
  CHECK(group_of(Aesthetic::LongRatio) == FitnessGroup::Sonic);
}

TEST_CASE("gate") {
  CHECK(gate(1.0, 1.0, 3.0, 2.0) == 2.0);
  CHECK(gate(3.0, 1.0, 3.0, 2.0) == 6.0);
  CHECK(gate(std::nextafter(3.0, 4.0), 1.0, 3.0, 2.0) == 0.0);
  CHECK(gate(0.5, 1.0, 3.0, 2.0) == 0.0);
  CHECK(gate(2.0, 1.0, 3.0, 0.0) == 0.0);
}

TEST_CASE("gated values vanish outside the range for every weight") {
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const double lo = rng.uniform() * 10, hi = lo + rng.uniform() * 5;
    const double w = rng.uniform() * 3;
    CHECK(gate(lo - 1e-9 - rng.uniform(), lo, hi, w) == 0.0);
    CHECK(gate(hi + 1e-9 + rng.uniform(), lo, hi, w) == 0.0);
  }
}

TEST_CASE("fitness sums gated members per group") {
  const auto r = report_of({1, 2, 3, 4, 5, 6, 0.5, 2, 0.3, 0.6, 0.75, 0.1, 0.2, 3});
  const auto id = fitness(r, AestheticProfile::identity());
  CHECK(id.sonic == doctest::Approx(1 + 2 + 3 + 4 + 5 + 6 + 0.5));
  CHECK(id.semantic == doctest::Approx(2 + 0.3 + 0.6));
  CHECK(id.imagerial == doctest::Approx(0.75 + 0.1));
  CHECK(id.metaphorical == doctest::Approx(0.2 + 3));

  AestheticProfile none;
  for (auto& s : none.settings) s = {1.0, 100.0, 200.0};
  CHECK(fitness(r, none) == FitnessVector{});

  // Hand-summed fixture profile.
  AestheticProfile p = AestheticProfile::identity();
  p[Aesthetic::FullRhyme] = {0.5, 0.0, 2.0};      // 0.5 * 1
  p[Aesthetic::Assonance] = {0.25, 3.0, 4.0};     // out of range
  p[Aesthetic::Consonance] = {0.0, -kInf, kInf};  // weight 0
  p[Aesthetic::NClusters] = {2.0, 2.0, 2.0};      // 2 * 2
  p[Aesthetic::SentimentVariance] = {4.0, 0.0, 0.1};  // 4 * 0.1
  p[Aesthetic::NMetaphorical] = {0.1, 0.0, 2.0};  // out of range
  const auto f = fitness(r, p);
  CHECK(f.sonic == doctest::Approx(0.5 + 4 + 5 + 6 + 0.5));
  CHECK(f.semantic == doctest::Approx(4 + 0.3 + 0.6));
  CHECK(f.imagerial == doctest::Approx(0.75 + 0.4));
  CHECK(f.metaphorical == doctest::Approx(0.2));
}

TEST_CASE("fitness is monotone inside the range") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    AestheticProfile p;
    AestheticReport r;
    for (std::size_t i = 0; i < kAestheticCount; ++i) {
      const double lo = rng.uniform(), hi = lo + rng.uniform();
      p.settings[i] = {rng.uniform(), lo, hi};
      r.values[i] = rng.uniform() * 2;
    }
    const auto a = static_cast<Aesthetic>(rng.index(kAestheticCount));
    const auto& s = p[a];
    r[a] = s.lo + (s.hi - s.lo) * rng.uniform();
    const auto before = fitness(r, p).as_array();
    r[a] = r[a] + (s.hi - r[a]) * rng.uniform();
    const auto after = fitness(r, p).as_array();
    const auto g = static_cast<std::size_t>(group_of(a));
    CHECK(after[g] >= before[g]);
  }
}

TEST_CASE("liking") {
  CHECK(likes(FitnessVector{0.1, 0.2, 0.3, 0.4}));
  CHECK_FALSE(likes(FitnessVector{0.1, 0.0, 0.3, 0.4}));
  CHECK_FALSE(likes(FitnessVector{}));
}

TEST_CASE("percentile uses linear interpolation") {
  const std::vector<double> v{8, 1, 7, 2, 6, 3, 5, 4};
  CHECK(percentile(v, 0.25) == doctest::Approx(2.75).epsilon(1e-15));
  CHECK(percentile(v, 0.75) == doctest::Approx(6.25).epsilon(1e-15));
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 1.0) == 8.0);
  CHECK(percentile({3.0}, 0.25) == 3.0);
  CHECK_THROWS(percentile({}, 0.5));
}

TEST_CASE("evaluate composes the module results") {
  const auto& res = testing::toy_resources();
  for (const auto& p : testing::toy_stanzas()) {
    const auto r = evaluate(p, res);
    const auto sonic = sonic_report(p);
    CHECK(r[Aesthetic::FullRhyme] == sonic.interverse.full_rhyme);
    CHECK(r[Aesthetic::Assonance] == sonic.interverse.assonance);
    CHECK(r[Aesthetic::Consonance] == sonic.interverse.consonance);
    std::size_t allit = 0;
    for (const auto& v : p.verses) allit += alliteration_count(v);
    CHECK(r[Aesthetic::Alliteration] == allit);
    CHECK(r[Aesthetic::SyllableCountMean] == sonic.meter.count_mean);
    CHECK(r[Aesthetic::LongRatio] == sonic.meter.long_ratio);

    const auto fields = cluster_poem(p, res.embeddings);
    const auto sem = semantic_aesthetics(fields);
    CHECK(r[Aesthetic::NClusters] == sem.n_clusters);
    CHECK(r[Aesthetic::AvgClusterDistance] == sem.avg_distance);
    const auto meta = metaphor_aesthetics(p, fields, res.relatedness);
    CHECK(r[Aesthetic::MaxMetaphoricity] == meta.max_metaphoricity);
    CHECK(r[Aesthetic::NMetaphorical] == meta.n_metaphorical);

    double concrete = 0, known = 0;
    for (const auto& t : content_words(p)) {
      const auto c = res.concreteness.classify(t.lemma);
      if (c == Concreteness::Unknown) continue;
      ++known;
      concrete += c == Concreteness::Concrete;
    }
    CHECK(r[Aesthetic::ConcreteRatio] == doctest::Approx(known ? concrete / known : 0.0));

    std::vector<double> s;
    for (const auto& v : p.verses) s.push_back(res.sentiment->score_verse(v));
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    double var = 0;
    for (double x : s) var += (x - mean) * (x - mean);
    CHECK(r[Aesthetic::SentimentVariance] == doctest::Approx(var / static_cast<double>(s.size())));

    for (double v : r.values) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
    CHECK(r[Aesthetic::ConcreteRatio] <= 1.0);
    CHECK(r[Aesthetic::LongRatio] <= 1.0);
  }
}

TEST_CASE("evaluate edge cases") {
  const auto& res = testing::toy_resources();
  const auto single = evaluate(testing::poem({"vanha/ADJ meri/NOUN"}), res);
  CHECK(single[Aesthetic::SentimentVariance] == 0.0);
  const auto unknown = evaluate(testing::poem({"xq/NOUN zv/NOUN", "qq/VERB"}), res);
  CHECK(unknown[Aesthetic::ConcreteRatio] == 0.0);
  CHECK(unknown[Aesthetic::NClusters] == 0.0);
  CHECK(unknown[Aesthetic::MaxMetaphoricity] == 0.0);
}

TEST_CASE("identity profile likes a poem with every kind of evidence") {
  const auto& res = testing::toy_resources();
  std::size_t checked = 0;
  for (const auto& p : testing::toy_stanzas()) {
    const auto a = analyze(p, res);
    const bool rhymes = a.sonic.interverse.full_rhyme + a.sonic.interverse.assonance + a.sonic.interverse.consonance > 0;
    if (!rhymes || a.fields.clusters.size() < 2 || a.concrete_positions.empty() ||
        a.metaphor.max_metaphoricity <= 0.0) {
      continue;
    }
    ++checked;
    CHECK(likes(p, AestheticProfile::identity(), res));
  }
  CHECK(checked > 0);
}

TEST_CASE("profile JSON round trip and validation") {
  AestheticProfile p = AestheticProfile::identity();
  p.era = "1900";
  p.forest_seed = 5;
  p.forest_trees = 100;
  p[Aesthetic::Alliteration] = {0.25, 1.0, 3.5};
  const auto j = p.to_json();
  CHECK(j["aesthetics"]["full_rhyme"]["lo"].is_null());
  const auto back = AestheticProfile::from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.era == "1900");
  CHECK(back[Aesthetic::Alliteration].weight == 0.25);
  CHECK(back[Aesthetic::Alliteration].hi == 3.5);
  CHECK(std::isinf(back[Aesthetic::FullRhyme].lo));
  CHECK(back.to_json().dump() == j.dump());

  auto bad = nlohmann::json::parse(j.dump());
  bad["aesthetics"]["assonance"]["lo"] = 5.0;
  bad["aesthetics"]["assonance"]["hi"] = 1.0;
  CHECK_THROWS(AestheticProfile::from_json(bad));
  auto missing = nlohmann::json::parse(j.dump());
  missing["aesthetics"].erase("long_ratio");
  CHECK_THROWS(AestheticProfile::from_json(missing));
  auto regrouped = nlohmann::json::parse(j.dump());
  regrouped["groups"]["sonic"].push_back("n_clusters");
  CHECK_THROWS(AestheticProfile::from_json(regrouped));

  const auto path = std::filesystem::temp_directory_path() / "runo_profile_test.json";
  p.save(path);
  CHECK(AestheticProfile::load(path).to_json() == j);
  std::filesystem::remove(path);
}

TEST_CASE("learn_profile") {
  Rng rng(12);
  std::vector<LabeledReport> samples;
  for (int i = 0; i < 40; ++i) {
    LabeledReport s;
    s.target = i % 2 == 0;
    for (auto& v : s.report.values) v = rng.uniform();
    s.report[Aesthetic::FullRhyme] = s.target ? 3.0 + rng.uniform() : rng.uniform();
    s.report[Aesthetic::Assonance] = 7.0;
    samples.push_back(s);
  }
  const auto p = learn_profile(samples, "1800");
  CHECK(p.era == "1800");
  for (std::size_t g = 0; g < kGroupCount; ++g) {
    double sum = 0;
    for (auto a : members(static_cast<FitnessGroup>(g))) {
      CHECK(p[a].weight >= 0.0);
      CHECK(p[a].lo <= p[a].hi);
      sum += p[a].weight;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
  for (auto a : members(FitnessGroup::Sonic)) {
    if (a != Aesthetic::FullRhyme) CHECK(p[Aesthetic::FullRhyme].weight > p[a].weight);
  }
  CHECK(p[Aesthetic::Assonance].weight == 0.0);
  CHECK(p[Aesthetic::Assonance].lo == 7.0);
  CHECK(p[Aesthetic::Assonance].hi == 7.0);
  CHECK(learn_profile(samples, "1800").to_json() == p.to_json());

  std::vector<LabeledReport> one_label(4);
  for (auto& s : one_label) s.target = true;
  CHECK_THROWS_AS(learn_profile(one_label, "1800"), std::invalid_argument);
  std::vector<LabeledReport> thin(3);
  thin[0].target = true;
  CHECK_THROWS_AS(learn_profile(thin, "1800"), std::invalid_argument);
}
