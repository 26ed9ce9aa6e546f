#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "runo/corpus.hpp"

namespace runo {

struct ScoredWord {
  std::string word;
  double score = 0.0;
  friend bool operator==(const ScoredWord&, const ScoredWord&) = default;
};

/// Cosine of two equal-length vectors; 0 when either has zero norm.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Lemma-keyed dense vectors.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  /// Text format: optional "<count> <dim>" header, then "word v1 ... vd".
  /// Duplicate words: last one wins and is counted in duplicate_count().
  /// Throws std::runtime_error on dimension mismatch, naming the word.
  static EmbeddingStore read(std::istream& in);
  static EmbeddingStore load(const std::filesystem::path& path);

  /// Append or replace a vector. Throws on dimension mismatch.
  void add(std::string word, std::span<const double> vec);

  std::size_t size() const { return words_.size(); }
  std::size_t dimension() const { return dim_; }
  std::size_t duplicate_count() const { return duplicates_; }
  bool contains(std::string_view word) const;
  const std::vector<std::string>& words() const { return words_; }
  std::optional<std::span<const double>> vector(std::string_view word) const;

  /// Missing-word signal: nullopt when either word is out of vocabulary.
  std::optional<double> cosine(std::string_view a, std::string_view b) const;

  /// k most similar words excluding `word`, by descending cosine with ties
  /// broken lexicographically. nullopt when `word` is out of vocabulary.
  std::optional<std::vector<ScoredWord>> top_similar(std::string_view word, std::size_t k) const;

  /// Vocabulary word nearest to an arbitrary vector (ties: smallest word).
  std::optional<ScoredWord> nearest(std::span<const double> vec) const;

 private:
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
  std::size_t duplicates_ = 0;
};

struct NgramCount {
  std::array<std::string, 5> words;
  std::uint64_t count = 0;
};

/// Read "w1 w2 w3 w4 w5<TAB>count" lines. Throws ParseError.
std::vector<NgramCount> read_ngrams(std::istream& in);
std::vector<NgramCount> load_ngrams(const std::filesystem::path& path);

/// Symmetric word-pair association in [0, 1]: positive PMI over 5-gram
/// co-occurrence, divided by the largest PPMI in the model.
class RelatednessModel {
 public:
  static constexpr std::size_t kDefaultListLimit = 1000;

  RelatednessModel() = default;
  static RelatednessModel build(std::span<const NgramCount> ngrams,
                                std::size_t list_limit = kDefaultListLimit);

  /// Stored score, 0 for unseen pairs.
  double relatedness(std::string_view a, std::string_view b) const;
  /// Ranked associates of `word` (descending score, ties by word), truncated.
  std::span<const ScoredWord> related(std::string_view word) const;

  bool empty() const { return scores_.empty(); }
  std::size_t pair_count() const { return scores_.size(); }
  double max_score() const;

 private:
  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    return a < b ? (std::uint64_t{a} << 32) | b : (std::uint64_t{b} << 32) | a;
  }

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, double> scores_;
  std::vector<std::vector<ScoredWord>> lists_;
};

enum class Concreteness { Concrete, Abstract, Unknown };

/// Lemma concreteness on a 1-5 scale; >= 3 counts as concrete.
class ConcretenessLexicon {
 public:
  static constexpr double kThreshold = 3.0;

  ConcretenessLexicon() = default;
  explicit ConcretenessLexicon(std::map<std::string, double, std::less<>> scores);
  static ConcretenessLexicon read(std::istream& in);
  static ConcretenessLexicon load(const std::filesystem::path& path);

  std::optional<double> score(std::string_view lemma) const;
  Concreteness classify(std::string_view lemma) const;
  std::size_t size() const { return scores_.size(); }

 private:
  std::map<std::string, double, std::less<>> scores_;
};

/// Verse-level sentiment in [-1, 1].
class SentimentScorer {
 public:
  virtual ~SentimentScorer() = default;
  virtual double score_verse(const Verse& verse) const = 0;
};

/// Mean polarity of the verse lemmas found in a polarity lexicon.
class LexiconSentimentScorer final : public SentimentScorer {
 public:
  LexiconSentimentScorer() = default;
  explicit LexiconSentimentScorer(std::map<std::string, double, std::less<>> polarity);
  static LexiconSentimentScorer read(std::istream& in);
  static LexiconSentimentScorer load(const std::filesystem::path& path);

  double score_verse(const Verse& verse) const override;
  std::optional<double> polarity(std::string_view lemma) const;

 private:
  std::map<std::string, double, std::less<>> polarity_;
};

/// Inflection and part-of-speech source used by mutation.
class MorphologyProvider {
 public:
  virtual ~MorphologyProvider() = default;

  /// Surface form for lemma+tags, or nullopt when not realizable.
  /// Empty tags yield the lemma itself.
  virtual std::optional<std::string> realize(std::string_view lemma, const MorphTags& tags) const = 0;

  /// Realization for a token in an object relation to `governor` (the head
  /// verb lemma); providers with case-government knowledge override this.
  virtual std::optional<std::string> realize_object(std::string_view lemma, const MorphTags& tags,
                                                    std::string_view governor) const {
    (void)governor;
    return realize(lemma, tags);
  }

  /// Known parts of speech of a lemma (empty when unknown).
  virtual std::vector<std::string> parts_of_speech(std::string_view lemma) const = 0;
};

struct Analysis {
  std::string lemma;
  std::string pos;
  MorphTags tags;
};

/// Table-backed morphology: "lemma<TAB>canonical-tags<TAB>surface" rows and
/// an optional "lemma<TAB>UPOS" part-of-speech table.
///
/// Object-relation rows may add a Gov=<verb> feature; realize_object tries
/// that row before the plain one.
class TableMorphology final : public MorphologyProvider {
 public:
  TableMorphology() = default;
  static TableMorphology read(std::istream& table, std::istream* pos_table = nullptr);
  static TableMorphology load(const std::filesystem::path& table,
                              const std::optional<std::filesystem::path>& pos_table = std::nullopt);

  void add_form(std::string lemma, const MorphTags& tags, std::string surface);
  void add_pos(std::string lemma, std::string pos);

  std::optional<std::string> realize(std::string_view lemma, const MorphTags& tags) const override;
  std::optional<std::string> realize_object(std::string_view lemma, const MorphTags& tags,
                                            std::string_view governor) const override;
  std::vector<std::string> parts_of_speech(std::string_view lemma) const override;

  /// Reverse lookup of a lowercase surface form.
  std::vector<Analysis> analyze(std::string_view surface) const;
  std::size_t size() const { return forms_.size(); }

 private:
  static std::string key(std::string_view lemma, std::string_view canonical_tags);

  std::unordered_map<std::string, std::string> forms_;
  std::unordered_map<std::string, std::vector<Analysis>> reverse_;
  std::map<std::string, std::vector<std::string>, std::less<>> pos_;
};

/// Plain-text poems (one verse per line, blank lines between poems) annotated
/// by reverse morphology lookup. Unknown words get their lowercase letters as
/// lemma and POS "X". A "# poem_id = ..." line names the next poem.
std::vector<Poem> annotate_plain_text(std::string_view text, const TableMorphology& morph);

}  // namespace runo
