#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "runo/aesthetics.hpp"
#include "runo/corpus.hpp"
#include "runo/rng.hpp"

namespace runo::framing {

inline constexpr std::size_t kStatementCount = 13;

enum class Prediction { Agree, Disagree, NotApplicable };
std::string_view name(Prediction p);
Prediction prediction_from_name(std::string_view s);

struct Statement {
  std::size_t index = 0;  // 1-based
  std::string text;
  std::string text_fi;
  /// Tokens to set in italics.
  std::vector<TokenPos> highlights;
  /// Words the statement talks about (surfaces, lemmas or cluster topics).
  std::vector<std::string> words;
  bool is_filler = false;
  Prediction prediction = Prediction::NotApplicable;
};

struct FramingDocument {
  std::string poem_id;
  std::vector<Statement> statements;

  nlohmann::ordered_json to_json() const;
  static FramingDocument from_json(const nlohmann::json& j);
};

/// Statement indices whose content may be random.
bool filler_allowed(std::size_t index);

/// Raw template lines, 13 per language.
const std::array<std::string, kStatementCount>& templates_en();
const std::array<std::string, kStatementCount>& templates_fi();

FramingDocument generate_framing(const Poem& poem, const PoemAnalysis& analysis, Rng& rng);

/// Poem with rhyme-family words wrapped in *...*, then the numbered statements.
std::string render(const Poem& poem, const FramingDocument& doc, bool finnish = false);

struct Tally {
  std::size_t statement = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t dont_know = 0;
  friend bool operator==(const Tally&, const Tally&) = default;
};

/// CSV rows "statement_index,agree,disagree,dont_know"; a header line is optional.
std::vector<Tally> read_tallies(std::istream& in);

struct Agreement {
  /// Prediction matches over statements with a strict majority; empty when none has one.
  std::optional<double> accuracy;
  double tie_rate = 0.0;
  double dont_know_rate = 0.0;
  std::size_t majority_count = 0;
  std::size_t matches = 0;
  std::size_t ties = 0;
  std::size_t applicable = 0;
};

/// Not-applicable statements are left out of accuracy and ties but their
/// don't-know answers still count.
Agreement score_agreement(const FramingDocument& doc, std::span<const Tally> tallies);

}  // namespace runo::framing
