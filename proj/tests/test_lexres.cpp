#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "runo/lexres.hpp"
#include "support.hpp"

using namespace runo;

namespace {

EmbeddingStore store_from(const std::string& s) {
  std::istringstream in(s);
  return EmbeddingStore::read(in);
}

const char* kFive =
    "5 3\n"
    "meri 1 0 0\n"
    "aalto 0.9 0.1 0\n"
    "ranta 0.7 0.7 0\n"
    "metsä 0 1 0.2\n"
    "puu 0 0.8 0.6\n";

std::vector<NgramCount> ngrams_from(const std::string& s) {
  std::istringstream in(s);
  return read_ngrams(in);
}

// Independent PPMI table: counts over all position pairs of each 5-gram.
std::map<std::pair<std::string, std::string>, double> ppmi_oracle(const std::vector<NgramCount>& grams) {
  std::map<std::pair<std::string, std::string>, double> m;
  std::map<std::string, double> row;
  double total = 0;
  for (const auto& g : grams) {
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        if (g.words[i] == g.words[j]) continue;
        const double c = static_cast<double>(g.count);
        m[{g.words[i], g.words[j]}] += c;
        m[{g.words[j], g.words[i]}] += c;
        row[g.words[i]] += c;
        row[g.words[j]] += c;
        total += 2 * c;
      }
    }
  }
  std::map<std::pair<std::string, std::string>, double> out;
  double best = 0;
  for (const auto& [k, v] : m) {
    const double pmi = std::log(v * total / (row[k.first] * row[k.second]));
    if (pmi > 0) {
      out[k] = pmi;
      best = std::max(best, pmi);
    }
  }
  for (auto& [k, v] : out) v /= best;
  return out;
}

}  // namespace

TEST_CASE("embedding loading") {
  const auto s = store_from("3 4\na 1 0 0 0\nb 0 1 0 0\nc 1 1 0 0\n");
  CHECK(s.size() == 3);
  CHECK(s.dimension() == 4);
  CHECK_THROWS_WITH_AS(store_from("a 1 0 0 0\nbad 1 0 0\n"), doctest::Contains("bad"), std::runtime_error);
  const auto dup = store_from("a 1 0\nb 0 1\na 0 2\n");
  CHECK(dup.size() == 2);
  CHECK(dup.duplicate_count() == 1);
  CHECK((*dup.vector("a"))[1] == 2.0);
}

TEST_CASE("cosine") {
  const auto s = store_from("a 1 2 2\nb 2 0 1\nc -2 1 0\n");
  CHECK(*s.cosine("a", "a") == doctest::Approx(1.0).epsilon(1e-12));
  // a.b = 4, |a| = 3, |b| = sqrt(5)
  CHECK(*s.cosine("a", "b") == doctest::Approx(4.0 / (3.0 * std::sqrt(5.0))).epsilon(1e-12));
  CHECK(*s.cosine("b", "c") == doctest::Approx(-4.0 / 5.0).epsilon(1e-12));
  CHECK(*s.cosine("a", "b") == *s.cosine("b", "a"));
  CHECK_FALSE(s.cosine("a", "zz").has_value());
  const auto o = store_from("x 1 0\ny 0 1\n");
  CHECK(*o.cosine("x", "y") == 0.0);
}

TEST_CASE("top_similar matches an exhaustive ranking") {
  const auto s = store_from(kFive);
  for (const auto& w : s.words()) {
    std::vector<std::pair<double, std::string>> all;
    for (const auto& o : s.words()) {
      if (o != w) all.emplace_back(-*s.cosine(w, o), o);
    }
    std::sort(all.begin(), all.end());
    const auto top2 = *s.top_similar(w, 2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].word == all[0].second);
    CHECK(top2[1].word == all[1].second);
    const auto every = *s.top_similar(w, 50);
    CHECK(every.size() == 4);
    for (std::size_t k = 1; k < 4; ++k) {
      const auto a = *s.top_similar(w, k);
      const auto b = *s.top_similar(w, k + 1);
      CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
  CHECK_FALSE(s.top_similar("nope", 3).has_value());
}

TEST_CASE("top_similar breaks ties lexicographically") {
  const auto s = store_from("q 1 0\nb 0 1\na 0 1\nc 0 1\n");
  const auto top = *s.top_similar("q", 3);
  CHECK(top[0].word == "a");
  CHECK(top[1].word == "b");
  CHECK(top[2].word == "c");
}

TEST_CASE("relatedness matches a hand PPMI table") {
  const auto grams = ngrams_from(
      "meri aalto ranta hiekka meri\t3\n"
      "meri aalto tuuli pilvi taivas\t2\n"
      "metsä puu lehti tuuli kuusi\t4\n"
      "metsä puu kuusi kuusi sammal\t1\n"
      "taivas pilvi tähti kuu yö\t5\n"
      "yö kuu tähti unta uni\t2\n"
      "ranta hiekka aalto vesi meri\t1\n"
      "vesi järvi ranta kala vene\t3\n"
      "kala vene järvi verkko vesi\t2\n"
      "tuuli aalto meri myrsky vene\t1\n");
  const auto model = RelatednessModel::build(grams);
  const auto oracle = ppmi_oracle(grams);
  std::set<std::string> vocab;
  for (const auto& g : grams) vocab.insert(g.words.begin(), g.words.end());
  for (const auto& a : vocab) {
    for (const auto& b : vocab) {
      if (a == b) continue;
      const auto it = oracle.find({a, b});
      const double expected = it == oracle.end() ? 0.0 : it->second;
      CHECK_MESSAGE(model.relatedness(a, b) == doctest::Approx(expected).epsilon(1e-12), a << " " << b);
      CHECK(model.relatedness(a, b) == model.relatedness(b, a));
    }
  }
  CHECK(model.max_score() == doctest::Approx(1.0));
  for (const auto& w : vocab) {
    const auto list = model.related(w);
    for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1].score >= list[i].score);
    for (const auto& s : list) {
      CHECK(s.score > 0.0);
      CHECK(s.score <= 1.0);
    }
  }
}

TEST_CASE("relatedness edge cases") {
  const auto pair_only = RelatednessModel::build(ngrams_from("a b a b a\t4\n"));
  CHECK(pair_only.relatedness("a", "b") == doctest::Approx(1.0));
  CHECK(pair_only.relatedness("a", "zz") == 0.0);
  CHECK(RelatednessModel::build({}).empty());

  const auto truncated = RelatednessModel::build(ngrams_from("a b c d e\t1\nf g h i j\t1\n"), 2);
  CHECK(truncated.related("a").size() == 2);
}

TEST_CASE("concreteness threshold") {
  std::istringstream in("kivi\t3.0\nhaave\t2.99\n");
  const auto lex = ConcretenessLexicon::read(in);
  CHECK(lex.classify("kivi") == Concreteness::Concrete);
  CHECK(lex.classify("haave") == Concreteness::Abstract);
  CHECK(lex.classify("tuntematon") == Concreteness::Unknown);
  std::istringstream bad("x\t5.5\n");
  CHECK_THROWS(ConcretenessLexicon::read(bad));
}

TEST_CASE("lexicon sentiment is the mean polarity of hits") {
  std::istringstream in("ilo\t1\nsuru\t-1\nvalo\t1\n");
  const auto scorer = LexiconSentimentScorer::read(in);
  CHECK(scorer.score_verse(testing::verse("kivi/NOUN")) == 0.0);
  CHECK(scorer.score_verse(testing::verse("ilo/NOUN")) == 1.0);
  CHECK(scorer.score_verse(testing::verse("ilo/NOUN suru/NOUN valo/NOUN")) == doctest::Approx(1.0 / 3.0));
  std::istringstream bad("x\t1.5\n");
  CHECK_THROWS(LexiconSentimentScorer::read(bad));
}

TEST_CASE("table morphology") {
  const auto& res = testing::toy_resources();
  const auto& m = *res.morphology;
  CHECK(m.realize("vesi", MorphTags{}) == "vesi");
  CHECK(m.realize("vesi", MorphTags::parse("Number=Sing|Case=Gen")) == "veden");
  CHECK_FALSE(m.realize("vesi", MorphTags::parse("Case=Ess|Number=Sing")).has_value());
  CHECK_FALSE(m.realize("eiole", MorphTags::parse("Case=Gen|Number=Sing")).has_value());
  const auto pos = m.parts_of_speech("vesi");
  CHECK(std::find(pos.begin(), pos.end(), "NOUN") != pos.end());
}

TEST_CASE("object realization prefers governed rows") {
  std::istringstream table(
      "kirja\tCase=Par|Number=Sing\tkirjaa\n"
      "kirja\tCase=Par|Gov=lukea|Number=Sing\tkirjaa_gov\n");
  const auto m = TableMorphology::read(table);
  const auto tags = MorphTags::parse("Case=Par|Number=Sing");
  CHECK(m.realize_object("kirja", tags, "lukea") == "kirjaa_gov");
  CHECK(m.realize_object("kirja", tags, "nähdä") == "kirjaa");
}

TEST_CASE("plain text annotation") {
  const auto& res = testing::toy_resources();
  const auto* table = dynamic_cast<const TableMorphology*>(res.morphology.get());
  REQUIRE(table);
  const auto poems = annotate_plain_text("Veden kala on heikko.\n\n# poem_id = b\nxyz\n", *table);
  REQUIRE(poems.size() == 2);
  const auto& t = poems[0].verses[0].tokens;
  REQUIRE(t.size() == 5);
  CHECK(t[0].lemma == "vesi");
  CHECK(t[0].pos == "NOUN");
  CHECK(t[4].pos == "PUNCT");
  CHECK(verse_text(poems[0].verses[0]) == "Veden kala on heikko.");
  CHECK(poems[1].id == "b");
  CHECK(poems[1].verses[0].tokens[0].pos == "X");
}
