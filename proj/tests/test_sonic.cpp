#include <doctest.h>

#include <set>

#include "runo/sonic.hpp"
#include "support.hpp"

using namespace runo;

namespace {

struct Hyphenation {
  const char* word;
  std::vector<std::string> parts;
  const char* pattern;
};

// Hand hyphenation by the textbook Finnish rules.
const std::vector<Hyphenation> kOracle = {
    {"vanha", {"van", "ha"}, "LS"},     {"talo", {"ta", "lo"}, "SS"},
    {"peikko", {"peik", "ko"}, "LS"},   {"kala", {"ka", "la"}, "SS"},
    {"aamu", {"aa", "mu"}, "LS"},       {"metsä", {"met", "sä"}, "LS"},
    {"kuusi", {"kuu", "si"}, "LS"},     {"yö", {"yö"}, "L"},
    {"hiekka", {"hiek", "ka"}, "LS"},   {"tähti", {"täh", "ti"}, "LS"},
    {"sydän", {"sy", "dän"}, "SL"},     {"aurinko", {"au", "rin", "ko"}, "LLS"},
    {"kirkas", {"kir", "kas"}, "LL"},   {"omena", {"o", "me", "na"}, "SSS"},
    {"ystävä", {"ys", "tä", "vä"}, "LSS"}, {"kuolema", {"kuo", "le", "ma"}, "LSS"},
    {"radio", {"ra", "di", "o"}, "SSS"}, {"hauta", {"hau", "ta"}, "LS"},
    {"Vesi", {"ve", "si"}, "SS"},       {"kaunis", {"kau", "nis"}, "LL"},
};

std::vector<std::string> parts_of(const Syllabification& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.syllables.size(); ++i) out.push_back(s.text(i));
  return out;
}

}  // namespace

TEST_CASE("syllabification oracle list") {
  for (const auto& h : kOracle) {
    const auto s = syllabify(h.word);
    REQUIRE_MESSAGE(s.has_value(), h.word);
    CHECK_MESSAGE(parts_of(*s) == h.parts, h.word);
    CHECK_MESSAGE(s->pattern() == h.pattern, h.word);
  }
  CHECK_FALSE(syllabify("krk").has_value());
  CHECK_FALSE(syllabify(",").has_value());
}

TEST_CASE("syllables partition the letters of every toy word") {
  std::set<std::string> words;
  for (const auto& p : testing::toy_stanzas()) {
    for (const auto& v : p.verses) {
      for (const auto& t : v.tokens) words.insert(t.surface);
    }
  }
  for (const auto& w : words) {
    const auto s = syllabify(w);
    if (!s) continue;
    std::string joined;
    for (std::size_t i = 0; i < s->syllables.size(); ++i) joined += s->text(i);
    CHECK(joined == text::encode_utf8(s->letters));
    for (std::size_t i = 1; i < s->syllables.size(); ++i) {
      CHECK(s->syllables[i - 1].end == s->syllables[i].begin);
    }
  }
}

TEST_CASE("rhyme family examples") {
  CHECK(full_rhyme("heikko", "peikko"));
  CHECK_FALSE(full_rhyme("talo", "talo"));
  CHECK_FALSE(full_rhyme("talo", "sano"));
  CHECK(full_rhyme("Heikko", "peikko,"));

  CHECK(assonance("talo", "sano"));
  CHECK_FALSE(assonance("talo", "tuli"));
  CHECK(assonance("vanha", "kansa"));

  CHECK(consonance("sakko", "sokka"));
  CHECK(consonance("jo", "ja"));
  CHECK(consonance("en", "on"));
  CHECK_FALSE(consonance("sakko", "soka"));
}

TEST_CASE("rhyme predicates are symmetric") {
  std::vector<std::string> words;
  for (const auto& t : content_words(testing::toy_poem("p1800_00_s1"))) words.push_back(t.surface);
  for (const auto& t : content_words(testing::toy_poem("p1900_03_s2"))) words.push_back(t.surface);
  words.insert(words.end(), {"heikko", "peikko", "talo", "sano", "jo", "ja", "en", "on"});
  for (const auto& a : words) {
    for (const auto& b : words) {
      CHECK(full_rhyme(a, b) == full_rhyme(b, a));
      CHECK(assonance(a, b) == assonance(b, a));
      CHECK(consonance(a, b) == consonance(b, a));
      CHECK(same_initial(a, b) == same_initial(b, a));
    }
  }
}

TEST_CASE("alliteration within a verse") {
  CHECK(alliteration_count(testing::verse("vanha/ADJ vesi/NOUN")) == 1);
  CHECK(alliteration_count(testing::verse("vanha/ADJ")) == 0);
  CHECK(alliteration_count(testing::verse("vanha/ADJ vesi/NOUN virtaa/VERB")) == 3);
  CHECK(alliteration_count(testing::verse("Vanha/ADJ vesi/NOUN ,/PUNCT")) == 1);
}

TEST_CASE("interverse counts") {
  const auto one = interverse_counts(testing::poem({"heikko/ADJ peikko/NOUN"}));
  CHECK(one.full_rhyme == 0);
  CHECK(one.assonance == 0);
  CHECK(one.consonance == 0);

  const auto hp0 = testing::toy_poem("hp0");
  const auto c = interverse_counts(hp0);
  CHECK(c.full_rhyme >= 1);
  const WordPair expected{{0, 2}, {1, 3}};
  CHECK(std::find(c.full_rhyme_pairs.begin(), c.full_rhyme_pairs.end(), expected) != c.full_rhyme_pairs.end());
}

TEST_CASE("interverse counts equal brute-force enumeration") {
  std::vector<Poem> poems = {
      testing::poem({"vanha/ADJ talo/NOUN", "sano/VERB heikko/ADJ", "peikko/NOUN sakko/NOUN sokka/NOUN"}),
      testing::poem({"jo/ADV ja/CCONJ", "en/AUX on/AUX", "kuu/NOUN puu/NOUN suu/NOUN"})};
  for (const auto& p : testing::toy_stanzas()) poems.push_back(p);
  for (const auto& p : poems) {
    std::size_t fr = 0, as = 0, co = 0;
    for (std::size_t i = 0; i < p.verses.size(); ++i) {
      for (std::size_t j = i + 1; j < p.verses.size(); ++j) {
        for (const auto& a : p.verses[i].tokens) {
          for (const auto& b : p.verses[j].tokens) {
            if (full_rhyme(a.surface, b.surface)) {
              ++fr;
              continue;
            }
            as += assonance(a.surface, b.surface);
            co += consonance(a.surface, b.surface);
          }
        }
      }
    }
    const auto c = interverse_counts(p);
    CHECK_MESSAGE(c.full_rhyme == fr, p.id);
    CHECK_MESSAGE(c.assonance == as, p.id);
    CHECK_MESSAGE(c.consonance == co, p.id);
    CHECK(c.full_rhyme_pairs.size() == fr);
    for (const auto& pair : c.full_rhyme_pairs) {
      CHECK(std::find(c.assonance_pairs.begin(), c.assonance_pairs.end(), pair) == c.assonance_pairs.end());
      CHECK(std::find(c.consonance_pairs.begin(), c.consonance_pairs.end(), pair) == c.consonance_pairs.end());
      CHECK_NOTHROW(token_at(p, pair.first));
      CHECK_NOTHROW(token_at(p, pair.second));
    }
  }
}

TEST_CASE("meter features") {
  const auto m = meter_features(testing::poem({"vanha/ADJ talo/NOUN", "aurinko/NOUN", "omena/NOUN ,/PUNCT"}));
  CHECK(m.syllable_counts == std::vector<std::size_t>{4, 3, 3});
  CHECK(m.weight_patterns == std::vector<std::string>{"LSSS", "LLS", "SSS"});
  CHECK(m.long_ratio == doctest::Approx(3.0 / 10.0));
  CHECK(m.count_mean == doctest::Approx(10.0 / 3.0));
  // population stdev of {4, 3, 3}
  CHECK(m.count_stdev == doctest::Approx(std::sqrt(2.0 / 9.0)));

  const auto same = meter_features(testing::poem({"vanha/ADJ talo/NOUN", "vanha/ADJ talo/NOUN"}));
  CHECK(same.count_stdev == 0.0);
  CHECK(meter_features(testing::poem({"talo/NOUN kala/NOUN"})).long_ratio == 0.0);
}
