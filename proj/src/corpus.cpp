#include "runo/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "runo/text.hpp"

namespace runo {

MorphTags MorphTags::parse(std::string_view feats) {
  MorphTags tags;
  if (feats == "_" || feats.empty()) return tags;
  for (auto part : text::split(feats, '|')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == part.size()) {
      throw std::invalid_argument("malformed feature '" + std::string(part) + "'");
    }
    tags.set(std::string(part.substr(0, eq)), std::string(part.substr(eq + 1)));
  }
  return tags;
}

void MorphTags::set(std::string name, std::string value) {
  for (const auto& [n, v] : features_) {
    if (n == name) throw std::invalid_argument("duplicate feature '" + name + "'");
  }
  features_.emplace_back(std::move(name), std::move(value));
}

std::optional<std::string_view> MorphTags::get(std::string_view name) const {
  for (const auto& [n, v] : features_) {
    if (n == name) return std::string_view(v);
  }
  return std::nullopt;
}

namespace {

std::string join_features(const std::vector<std::pair<std::string, std::string>>& features) {
  if (features.empty()) return "_";
  std::string out;
  for (const auto& [n, v] : features) {
    if (!out.empty()) out += '|';
    out += n;
    out += '=';
    out += v;
  }
  return out;
}

}  // namespace

std::string MorphTags::str() const { return join_features(features_); }

std::string MorphTags::canonical() const {
  auto sorted = features_;
  std::sort(sorted.begin(), sorted.end());
  return join_features(sorted);
}

std::size_t Poem::token_count() const {
  std::size_t n = 0;
  for (const auto& v : verses) n += v.tokens.size();
  return n;
}

const Token& token_at(const Poem& poem, TokenPos pos) {
  return poem.verses.at(pos.verse).tokens.at(pos.token);
}

namespace {

class CorpusReader {
 public:
  std::vector<Poem> read(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no_;
      std::string_view line = raw;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (text::trim(line).empty()) {
        close_verse();
      } else if (line.front() == '#') {
        comment(line);
      } else {
        token_line(line);
      }
    }
    close_poem();
    return std::move(poems_);
  }

 private:
  void comment(std::string_view line) {
    auto body = text::trim(line.substr(1));
    auto value_of = [&](std::string_view key) -> std::optional<std::string_view> {
      if (!body.starts_with(key)) return std::nullopt;
      auto rest = text::trim(body.substr(key.size()));
      if (!rest.starts_with('=')) return std::nullopt;
      return text::trim(rest.substr(1));
    };
    if (auto id = value_of("poem_id"); id) {
      start_poem(std::string(*id));
    } else if (auto nd = value_of("newdoc id"); nd) {
      start_poem(std::string(*nd));
    } else if (auto era = value_of("era"); era) {
      if (era->empty()) throw ParseError(line_no_, "empty era label");
      if (current_) {
        current_->era = std::string(*era);
      } else {
        pending_era_ = std::string(*era);
      }
    } else if (body == "stanza") {
      close_verse();
      if (current_ && !current_->verses.empty()) {
        const auto at = current_->verses.size();
        if (current_->stanza_starts.empty() || current_->stanza_starts.back() != at) {
          current_->stanza_starts.push_back(at);
        }
      }
    }
    // Other comments (text = ..., sent_id = ...) carry nothing we model.
  }

  void token_line(std::string_view line) {
    auto cols = text::split(line, '\t');
    if (cols.size() < 10) {
      throw ParseError(line_no_, "expected 10 tab-separated columns, found " +
                                     std::to_string(cols.size()));
    }
    // Multiword ranges and empty nodes are not surface tokens.
    if (cols[0].find_first_of("-.") != std::string_view::npos) return;
    if (cols[1].empty()) throw ParseError(line_no_, "empty FORM column");
    if (cols[2].empty()) throw ParseError(line_no_, "empty LEMMA column");
    if (cols[3].empty()) throw ParseError(line_no_, "empty UPOS column");
    if (!current_) start_poem("doc" + std::to_string(poems_.size() + 1));
    Token tok;
    tok.id = std::string(cols[0]);
    tok.surface = std::string(cols[1]);
    tok.lemma = std::string(cols[2]);
    tok.pos = std::string(cols[3]);
    tok.xpos = std::string(cols[4]);
    try {
      tok.morph = MorphTags::parse(cols[5]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no_, e.what());
    }
    tok.head = std::string(cols[6]);
    if (cols[7] != "_") tok.deprel = std::string(cols[7]);
    tok.deps = std::string(cols[8]);
    tok.misc = std::string(cols[9]);
    for (std::size_t i = 10; i < cols.size(); ++i) tok.extra.emplace_back(cols[i]);
    verse_.tokens.push_back(std::move(tok));
  }

  void start_poem(std::string id) {
    close_poem();
    if (id.empty()) throw ParseError(line_no_, "empty poem id");
    if (!ids_.insert(id).second) throw ParseError(line_no_, "duplicate poem id '" + id + "'");
    current_ = Poem{};
    current_->id = std::move(id);
    current_->era = std::exchange(pending_era_, std::nullopt);
    header_line_ = line_no_;
  }

  void close_verse() {
    if (verse_.tokens.empty()) return;
    if (!current_) start_poem("doc" + std::to_string(poems_.size() + 1));
    current_->verses.push_back(std::move(verse_));
    verse_ = Verse{};
  }

  void close_poem() {
    close_verse();
    if (!current_) return;
    if (current_->verses.empty()) {
      throw ParseError(header_line_, "poem '" + current_->id + "' has no verses");
    }
    auto& starts = current_->stanza_starts;
    const auto n = current_->verses.size();
    starts.erase(std::remove_if(starts.begin(), starts.end(),
                                [n](std::size_t s) { return s == 0 || s >= n; }),
                 starts.end());
    poems_.push_back(std::move(*current_));
    current_.reset();
  }

  std::vector<Poem> poems_;
  std::optional<Poem> current_;
  std::optional<std::string> pending_era_;
  Verse verse_;
  std::set<std::string> ids_;
  std::size_t line_no_ = 0;
  std::size_t header_line_ = 0;
};

}  // namespace

std::vector<Poem> parse_corpus(std::istream& in) { return CorpusReader{}.read(in); }

std::vector<Poem> parse_corpus(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in);
}

std::vector<Poem> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  return parse_corpus(in);
}

void write_corpus(std::ostream& out, std::span<const Poem> poems) {
  for (const auto& poem : poems) {
    out << "# poem_id = " << poem.id << '\n';
    if (poem.era) out << "# era = " << *poem.era << '\n';
    for (std::size_t v = 0; v < poem.verses.size(); ++v) {
      if (std::find(poem.stanza_starts.begin(), poem.stanza_starts.end(), v) !=
          poem.stanza_starts.end()) {
        out << "# stanza\n";
      }
      const auto& tokens = poem.verses[v].tokens;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        out << (t.id.empty() ? std::to_string(i + 1) : t.id) << '\t' << t.surface << '\t'
            << t.lemma << '\t' << t.pos << '\t' << t.xpos << '\t' << t.morph.str() << '\t'
            << t.head << '\t' << t.deprel.value_or("_") << '\t' << t.deps << '\t' << t.misc;
        for (const auto& e : t.extra) out << '\t' << e;
        out << '\n';
      }
      out << '\n';
    }
  }
}

std::string serialize_corpus(std::span<const Poem> poems) {
  std::ostringstream out;
  write_corpus(out, poems);
  return out.str();
}

std::vector<Poem> split_stanzas(const Poem& poem, std::span<const std::size_t> boundaries) {
  std::size_t prev = 0;
  for (auto b : boundaries) {
    if (b <= prev || b >= poem.verses.size()) {
      throw std::out_of_range("stanza boundary " + std::to_string(b) + " out of range for poem '" +
                              poem.id + "'");
    }
    prev = b;
  }
  if (boundaries.empty()) return {poem};

  std::vector<Poem> out;
  std::size_t begin = 0;
  for (std::size_t s = 0; s <= boundaries.size(); ++s) {
    const auto end = s < boundaries.size() ? boundaries[s] : poem.verses.size();
    Poem part;
    part.id = poem.id + "_s" + std::to_string(s + 1);
    part.era = poem.era;
    part.verses.assign(poem.verses.begin() + static_cast<std::ptrdiff_t>(begin),
                       poem.verses.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(std::move(part));
    begin = end;
  }
  return out;
}

std::vector<Poem> split_marked_stanzas(const Poem& poem) {
  return split_stanzas(poem, poem.stanza_starts);
}

std::vector<Poem> stanza_corpus(std::span<const Poem> poems) {
  std::vector<Poem> out;
  for (const auto& p : poems) {
    for (auto& s : split_marked_stanzas(p)) out.push_back(std::move(s));
  }
  return out;
}

bool is_open_class(std::string_view pos) {
  return pos == "NOUN" || pos == "VERB" || pos == "ADJ" || pos == "ADV";
}

std::vector<TokenPos> content_positions(const Poem& poem) {
  std::vector<TokenPos> out;
  for (std::size_t v = 0; v < poem.verses.size(); ++v) {
    const auto& tokens = poem.verses[v].tokens;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (is_open_class(tokens[t].pos)) out.push_back({v, t});
    }
  }
  return out;
}

std::vector<Token> content_words(const Poem& poem) {
  std::vector<Token> out;
  for (auto pos : content_positions(poem)) out.push_back(token_at(poem, pos));
  return out;
}

std::vector<std::string> content_lemmas(const Poem& poem) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (auto pos : content_positions(poem)) {
    const auto& lemma = token_at(poem, pos).lemma;
    if (seen.insert(lemma).second) out.push_back(lemma);
  }
  return out;
}

namespace {

bool attaches_left(const Token& t) {
  if (t.pos != "PUNCT") return false;
  static const std::set<std::string, std::less<>> marks = {",", ".", ";", ":", "!", "?", ")", "…", "..."};
  return marks.contains(t.surface);
}

}  // namespace

std::string verse_text(const Verse& verse) {
  std::string out;
  bool space_pending = false;
  for (const auto& t : verse.tokens) {
    if (!out.empty() && space_pending && !attaches_left(t)) out += ' ';
    out += t.surface;
    space_pending = t.misc.find("SpaceAfter=No") == std::string::npos;
  }
  return out;
}

std::string poem_text(const Poem& poem) {
  std::string out;
  for (std::size_t v = 0; v < poem.verses.size(); ++v) {
    if (v) out += '\n';
    out += verse_text(poem.verses[v]);
  }
  return out;
}

}  // namespace runo
