#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "runo/corpus.hpp"

namespace runo {

enum class SyllableWeight { Short, Long };

struct Syllable {
  std::size_t begin = 0;  // offsets into Syllabification::letters
  std::size_t end = 0;
  SyllableWeight weight = SyllableWeight::Short;
};

struct Syllabification {
  std::u32string letters;  // lowercased letters of the word
  std::vector<Syllable> syllables;

  std::string text(std::size_t i) const;
  /// One char per syllable: 'L' long, 'S' short.
  std::string pattern() const;
  std::size_t long_count() const;
};

/// Finnish syllabification; nullopt for words without a vowel.
std::optional<Syllabification> syllabify(std::string_view word);

/// Inputs are compared as lowercased letters. Identical words never match.
bool full_rhyme(std::string_view a, std::string_view b);
bool assonance(std::string_view a, std::string_view b);
bool consonance(std::string_view a, std::string_view b);
bool same_initial(std::string_view a, std::string_view b);

/// Unordered same-initial token pairs within the verse.
std::size_t alliteration_count(const Verse& verse);

struct WordPair {
  TokenPos first;
  TokenPos second;
  friend bool operator==(const WordPair&, const WordPair&) = default;
};

struct InterverseCounts {
  std::size_t full_rhyme = 0;
  std::size_t assonance = 0;
  std::size_t consonance = 0;
  std::vector<WordPair> full_rhyme_pairs;
  std::vector<WordPair> assonance_pairs;
  std::vector<WordPair> consonance_pairs;
};

/// Rhyme-family word pairs across every pair of distinct verses. A pair that
/// fully rhymes is credited only as a full rhyme.
InterverseCounts interverse_counts(const Poem& poem);

struct MeterFeatures {
  std::vector<std::size_t> syllable_counts;
  std::vector<std::string> weight_patterns;  // per verse, see Syllabification::pattern
  double long_ratio = 0.0;
  double count_mean = 0.0;
  double count_stdev = 0.0;  // population standard deviation
};

MeterFeatures meter_features(const Poem& poem);

struct SonicReport {
  InterverseCounts interverse;
  std::size_t alliteration = 0;
  std::vector<WordPair> alliteration_pairs;
  MeterFeatures meter;
};

SonicReport sonic_report(const Poem& poem);

}  // namespace runo
