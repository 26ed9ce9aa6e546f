#include "runo/sonic.hpp"

#include <array>
#include <cmath>

#include "runo/text.hpp"

namespace runo {

namespace {

constexpr char32_t kAuml = 0xE4;
constexpr char32_t kOuml = 0xF6;

bool is_diphthong(char32_t a, char32_t b) {
  static constexpr std::array<std::array<char32_t, 2>, 18> kDiphthongs = {{
      {U'a', U'i'}, {U'e', U'i'}, {U'o', U'i'}, {U'u', U'i'}, {U'y', U'i'}, {kAuml, U'i'},
      {kOuml, U'i'}, {U'a', U'u'}, {U'e', U'u'}, {U'i', U'u'}, {U'o', U'u'}, {U'e', U'y'},
      {U'i', U'y'}, {kAuml, U'y'}, {kOuml, U'y'}, {U'i', U'e'}, {U'u', U'o'}, {U'y', kOuml},
  }};
  for (const auto& d : kDiphthongs) {
    if (d[0] == a && d[1] == b) return true;
  }
  return false;
}

struct Nucleus {
  std::size_t begin;
  std::size_t end;
};

std::vector<Nucleus> nuclei(const std::u32string& w) {
  std::vector<Nucleus> out;
  std::size_t i = 0;
  while (i < w.size()) {
    if (!text::is_vowel(w[i])) {
      ++i;
      continue;
    }
    std::size_t len = 1;
    if (i + 1 < w.size() && text::is_vowel(w[i + 1]) &&
        (w[i + 1] == w[i] || is_diphthong(w[i], w[i + 1]))) {
      len = 2;
    }
    out.push_back({i, i + len});
    i += len;
  }
  return out;
}

std::u32string vowels_of(const std::u32string& w) {
  std::u32string out;
  for (char32_t c : w) {
    if (text::is_vowel(c)) out.push_back(c);
  }
  return out;
}

std::u32string consonants_of(const std::u32string& w) {
  std::u32string out;
  for (char32_t c : w) {
    if (!text::is_vowel(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

std::string Syllabification::text(std::size_t i) const {
  const auto& s = syllables.at(i);
  return text::encode_utf8(std::u32string_view(letters).substr(s.begin, s.end - s.begin));
}

std::string Syllabification::pattern() const {
  std::string out;
  for (const auto& s : syllables) out += s.weight == SyllableWeight::Long ? 'L' : 'S';
  return out;
}

std::size_t Syllabification::long_count() const {
  std::size_t n = 0;
  for (const auto& s : syllables) n += s.weight == SyllableWeight::Long;
  return n;
}

std::optional<Syllabification> syllabify(std::string_view word) {
  Syllabification result;
  result.letters = text::letters_lower(word);
  const auto& w = result.letters;
  const auto nucs = nuclei(w);
  if (nucs.empty()) return std::nullopt;

  // A single consonant right before a nucleus opens that syllable; every
  // other consonant closes the syllable before it.
  std::vector<std::size_t> starts{0};
  for (std::size_t k = 1; k < nucs.size(); ++k) {
    const auto b = nucs[k].begin;
    const bool onset = b > nucs[k - 1].end && !text::is_vowel(w[b - 1]);
    starts.push_back(onset ? b - 1 : b);
  }
  for (std::size_t k = 0; k < nucs.size(); ++k) {
    Syllable s;
    s.begin = starts[k];
    s.end = k + 1 < nucs.size() ? starts[k + 1] : w.size();
    const bool long_nucleus = nucs[k].end - nucs[k].begin == 2;
    const bool closed = s.end > nucs[k].end;
    s.weight = long_nucleus || closed ? SyllableWeight::Long : SyllableWeight::Short;
    result.syllables.push_back(s);
  }
  return result;
}

bool full_rhyme(std::string_view a, std::string_view b) {
  const auto wa = text::letters_lower(a);
  const auto wb = text::letters_lower(b);
  if (wa == wb || wa.size() < 2 || wb.size() < 2) return false;
  auto strip = [](const std::u32string& w) {
    std::size_t i = 0;
    while (i < w.size() && !text::is_vowel(w[i])) ++i;
    return w.substr(i);
  };
  const auto ra = strip(wa);
  return !ra.empty() && ra == strip(wb);
}

bool assonance(std::string_view a, std::string_view b) {
  const auto wa = text::letters_lower(a);
  const auto wb = text::letters_lower(b);
  if (wa == wb) return false;
  const auto va = vowels_of(wa);
  return !va.empty() && va == vowels_of(wb);
}

bool consonance(std::string_view a, std::string_view b) {
  const auto wa = text::letters_lower(a);
  const auto wb = text::letters_lower(b);
  if (wa == wb) return false;
  const auto ca = consonants_of(wa);
  return !ca.empty() && ca == consonants_of(wb);
}

bool same_initial(std::string_view a, std::string_view b) {
  const auto wa = text::letters_lower(a);
  const auto wb = text::letters_lower(b);
  return !wa.empty() && !wb.empty() && wa.front() == wb.front();
}

namespace {

std::vector<WordPair> alliterating_pairs(const Verse& verse, std::size_t v) {
  std::vector<WordPair> out;
  const auto& t = verse.tokens;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (same_initial(t[i].surface, t[j].surface)) out.push_back({{v, i}, {v, j}});
    }
  }
  return out;
}

}  // namespace

std::size_t alliteration_count(const Verse& verse) { return alliterating_pairs(verse, 0).size(); }

InterverseCounts interverse_counts(const Poem& poem) {
  InterverseCounts out;
  const auto& verses = poem.verses;
  for (std::size_t vi = 0; vi < verses.size(); ++vi) {
    for (std::size_t vj = vi + 1; vj < verses.size(); ++vj) {
      const auto& ti = verses[vi].tokens;
      const auto& tj = verses[vj].tokens;
      for (std::size_t i = 0; i < ti.size(); ++i) {
        for (std::size_t j = 0; j < tj.size(); ++j) {
          const WordPair pair{{vi, i}, {vj, j}};
          const auto& a = ti[i].surface;
          const auto& b = tj[j].surface;
          if (full_rhyme(a, b)) {
            ++out.full_rhyme;
            out.full_rhyme_pairs.push_back(pair);
            continue;
          }
          if (assonance(a, b)) {
            ++out.assonance;
            out.assonance_pairs.push_back(pair);
          }
          if (consonance(a, b)) {
            ++out.consonance;
            out.consonance_pairs.push_back(pair);
          }
        }
      }
    }
  }
  return out;
}

MeterFeatures meter_features(const Poem& poem) {
  MeterFeatures m;
  std::size_t total = 0, long_total = 0;
  for (const auto& verse : poem.verses) {
    std::size_t count = 0;
    std::string pattern;
    for (const auto& t : verse.tokens) {
      auto syl = syllabify(t.surface);
      if (!syl) continue;
      count += syl->syllables.size();
      long_total += syl->long_count();
      pattern += syl->pattern();
    }
    total += count;
    m.syllable_counts.push_back(count);
    m.weight_patterns.push_back(std::move(pattern));
  }
  m.long_ratio = total ? static_cast<double>(long_total) / static_cast<double>(total) : 0.0;
  if (!m.syllable_counts.empty()) {
    const double n = static_cast<double>(m.syllable_counts.size());
    double sum = 0.0;
    for (auto c : m.syllable_counts) sum += static_cast<double>(c);
    m.count_mean = sum / n;
    double sq = 0.0;
    for (auto c : m.syllable_counts) {
      const double d = static_cast<double>(c) - m.count_mean;
      sq += d * d;
    }
    m.count_stdev = std::sqrt(sq / n);
  }
  return m;
}

SonicReport sonic_report(const Poem& poem) {
  SonicReport r;
  r.interverse = interverse_counts(poem);
  for (std::size_t v = 0; v < poem.verses.size(); ++v) {
    auto pairs = alliterating_pairs(poem.verses[v], v);
    r.alliteration += pairs.size();
    r.alliteration_pairs.insert(r.alliteration_pairs.end(), pairs.begin(), pairs.end());
  }
  r.meter = meter_features(poem);
  return r;
}

}  // namespace runo
