#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace runo {

/// Error raised by the corpus reader; carries the 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Ordered Feature=Value set with unique feature names.
///
/// The input order is kept so serialization is byte-identical; canonical()
/// gives the sorted form used as a lookup key.
class MorphTags {
 public:
  MorphTags() = default;

  /// Parse a FEATS column ("_" or "F=V|F=V"). Throws std::invalid_argument.
  static MorphTags parse(std::string_view feats);

  void set(std::string name, std::string value);
  std::optional<std::string_view> get(std::string_view name) const;
  bool empty() const { return features_.empty(); }
  std::size_t size() const { return features_.size(); }
  const std::vector<std::pair<std::string, std::string>>& features() const { return features_; }

  /// "_" when empty, else features in stored order.
  std::string str() const;
  /// Features sorted by name; "_" when empty.
  std::string canonical() const;

  friend bool operator==(const MorphTags&, const MorphTags&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> features_;
};

struct Token {
  std::string id;
  std::string surface;
  std::string lemma;
  std::string pos;
  std::string xpos = "_";
  MorphTags morph;
  std::string head = "_";
  std::optional<std::string> deprel;
  std::string deps = "_";
  std::string misc = "_";
  /// Columns past the tenth, kept verbatim.
  std::vector<std::string> extra;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Verse {
  std::vector<Token> tokens;
  friend bool operator==(const Verse&, const Verse&) = default;
};

struct Poem {
  std::string id;
  std::vector<Verse> verses;
  std::optional<std::string> era;
  /// Verse indices where a marked stanza begins (from "# stanza" comments).
  std::vector<std::size_t> stanza_starts;

  std::size_t token_count() const;
  friend bool operator==(const Poem&, const Poem&) = default;
};

/// Position of a token inside a poem.
struct TokenPos {
  std::size_t verse = 0;
  std::size_t token = 0;
  friend auto operator<=>(const TokenPos&, const TokenPos&) = default;
};

const Token& token_at(const Poem& poem, TokenPos pos);

/// Read CoNLL-U style annotated poems. Throws ParseError.
std::vector<Poem> parse_corpus(std::istream& in);
std::vector<Poem> parse_corpus(std::string_view text);
std::vector<Poem> load_corpus(const std::filesystem::path& path);

void write_corpus(std::ostream& out, std::span<const Poem> poems);
std::string serialize_corpus(std::span<const Poem> poems);

/// Split before each boundary verse index. Boundaries must be strictly
/// increasing and in [1, verse count). Throws std::out_of_range.
std::vector<Poem> split_stanzas(const Poem& poem, std::span<const std::size_t> boundaries);
/// Split at the poem's own stanza markers.
std::vector<Poem> split_marked_stanzas(const Poem& poem);
/// Every poem split at its markers, in order.
std::vector<Poem> stanza_corpus(std::span<const Poem> poems);

bool is_open_class(std::string_view pos);
std::vector<TokenPos> content_positions(const Poem& poem);
std::vector<Token> content_words(const Poem& poem);
/// Distinct content lemmas in order of first appearance.
std::vector<std::string> content_lemmas(const Poem& poem);

/// Surface text of a verse; honours SpaceAfter=No and attaches punctuation.
std::string verse_text(const Verse& verse);
/// Verses joined by newlines.
std::string poem_text(const Poem& poem);

}  // namespace runo
