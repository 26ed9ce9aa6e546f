#include "runo/framing.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "framing_templates.inc"
#include "runo/text.hpp"

namespace runo::framing {

namespace {

std::array<std::string, kStatementCount> parse_templates(std::string_view raw) {
  std::array<std::string, kStatementCount> out;
  std::size_t n = 0;
  for (auto line : text::split(raw, '\n')) {
    line = text::trim(line);
    if (line.empty()) continue;
    if (n == kStatementCount) throw std::logic_error("too many framing templates");
    out[n++] = std::string(line);
  }
  if (n != kStatementCount) throw std::logic_error("expected 13 framing templates");
  return out;
}

std::string fill(std::string tmpl, std::string_view key, std::string_view value) {
  const std::string marker = "{" + std::string(key) + "}";
  for (auto at = tmpl.find(marker); at != std::string::npos; at = tmpl.find(marker, at + value.size())) {
    tmpl.replace(at, marker.size(), value);
  }
  return tmpl;
}

std::string join(std::span<const std::string> words, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += sep;
    out += words[i];
  }
  return out;
}

std::vector<TokenPos> pair_positions(std::span<const WordPair> pairs) {
  std::set<TokenPos> seen;
  for (const auto& p : pairs) {
    seen.insert(p.first);
    seen.insert(p.second);
  }
  return {seen.begin(), seen.end()};
}

std::string cluster_text(const std::vector<std::string>& cluster) { return "[" + join(cluster, ", ") + "]"; }

// Two distinct indices in [0, n), n >= 2.
std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n, Rng& rng) {
  const std::size_t x = rng.index(n);
  std::size_t y = rng.index(n - 1);
  if (y >= x) ++y;
  return {x, y};
}

struct Builder {
  const Poem& poem;
  FramingDocument doc;

  Statement& add(std::size_t index) {
    Statement s;
    s.index = index;
    s.text = templates_en()[index - 1];
    s.text_fi = templates_fi()[index - 1];
    doc.statements.push_back(std::move(s));
    return doc.statements.back();
  }

  static void set(Statement& s, std::string_view key, std::string_view value) {
    s.text = fill(s.text, key, value);
    s.text_fi = fill(s.text_fi, key, value);
  }

  void highlight(Statement& s, std::vector<TokenPos> positions) {
    for (auto pos : positions) s.words.push_back(token_at(poem, pos).surface);
    s.highlights = std::move(positions);
    s.prediction = s.highlights.empty() ? Prediction::Disagree : Prediction::Agree;
  }

  std::vector<TokenPos> positions_of(std::string_view lemma) const {
    std::vector<TokenPos> out;
    for (auto pos : content_positions(poem)) {
      if (token_at(poem, pos).lemma == lemma) out.push_back(pos);
    }
    return out;
  }
};

}  // namespace

std::string_view name(Prediction p) {
  switch (p) {
    case Prediction::Agree:
      return "agree";
    case Prediction::Disagree:
      return "disagree";
    case Prediction::NotApplicable:
      return "n/a";
  }
  return "n/a";
}

Prediction prediction_from_name(std::string_view s) {
  if (s == "agree") return Prediction::Agree;
  if (s == "disagree") return Prediction::Disagree;
  if (s == "n/a") return Prediction::NotApplicable;
  throw std::invalid_argument("unknown prediction '" + std::string(s) + "'");
}

bool filler_allowed(std::size_t index) {
  return index == 5 || index == 10 || index == 11 || index == 12 || index == 13;
}

const std::array<std::string, kStatementCount>& templates_en() {
  static const auto t = parse_templates(kTemplatesEn);
  return t;
}

const std::array<std::string, kStatementCount>& templates_fi() {
  static const auto t = parse_templates(kTemplatesFi);
  return t;
}

FramingDocument generate_framing(const Poem& poem, const PoemAnalysis& analysis, Rng& rng) {
  Builder b{poem, {poem.id, {}}};
  const auto& iv = analysis.sonic.interverse;
  b.highlight(b.add(1), pair_positions(iv.full_rhyme_pairs));
  b.highlight(b.add(2), pair_positions(iv.assonance_pairs));
  b.highlight(b.add(3), pair_positions(iv.consonance_pairs));
  b.highlight(b.add(4), pair_positions(analysis.sonic.alliteration_pairs));

  const std::size_t n_verses = poem.verses.size();
  {
    auto& s = b.add(5);
    s.is_filler = true;
    if (n_verses >= 2) {
      const auto [x, y] = distinct_pair(n_verses, rng);
      const auto& m = analysis.sonic.meter;
      const bool same = m.syllable_counts[x] == m.syllable_counts[y] && m.weight_patterns[x] == m.weight_patterns[y];
      Builder::set(s, "x", std::to_string(x + 1));
      Builder::set(s, "y", std::to_string(y + 1));
      s.prediction = same ? Prediction::Agree : Prediction::Disagree;
    } else {
      Builder::set(s, "x", "1");
      Builder::set(s, "y", "1");
    }
  }

  const auto& fields = analysis.fields;
  const std::size_t n_clusters = fields.clusters.size();
  {
    auto& s = b.add(6);
    std::vector<std::string> rendered;
    for (const auto& c : fields.clusters) rendered.push_back(cluster_text(c));
    Builder::set(s, "n", std::to_string(n_clusters));
    Builder::set(s, "fields", join(rendered, "; "));
    s.words = fields.topics;
    s.prediction = n_clusters ? Prediction::Agree : Prediction::NotApplicable;
  }
  for (std::size_t index : {std::size_t{7}, std::size_t{8}}) {
    auto& s = b.add(index);
    if (n_clusters < 2) {
      Builder::set(s, "a", "-");
      Builder::set(s, "b", "-");
      continue;
    }
    const bool closest = index == 7;
    std::size_t ba = 0, bb = 1;
    double best = fields.distances(0, 1);
    for (std::size_t i = 0; i < n_clusters; ++i) {
      for (std::size_t j = i + 1; j < n_clusters; ++j) {
        const double d = fields.distances(i, j);
        if (closest ? d < best : d > best) {
          best = d;
          ba = i;
          bb = j;
        }
      }
    }
    Builder::set(s, "a", cluster_text(fields.clusters[ba]));
    Builder::set(s, "b", cluster_text(fields.clusters[bb]));
    s.words = {fields.topics[ba], fields.topics[bb]};
    s.prediction = Prediction::Agree;
  }
  {
    auto& s = b.add(9);
    for (auto pos : analysis.concrete_positions) {
      s.highlights.push_back(pos);
      s.words.push_back(token_at(poem, pos).surface);
    }
    Builder::set(s, "words", join(s.words, ", "));
    s.prediction = s.words.empty() ? Prediction::NotApplicable : Prediction::Agree;
  }
  for (std::size_t index : {std::size_t{10}, std::size_t{11}}) {
    auto& s = b.add(index);
    s.is_filler = true;
    const std::string key = index == 10 ? "x" : "y";
    if (n_verses == 0) {
      Builder::set(s, key, "-");
      continue;
    }
    const std::size_t v = rng.index(n_verses);
    const double sentiment = analysis.verse_sentiment.at(v);
    Builder::set(s, key, std::to_string(v + 1));
    const bool holds = index == 10 ? sentiment > 0.0 : sentiment < 0.0;
    s.prediction = holds ? Prediction::Agree : Prediction::Disagree;
  }

  const auto& interp = analysis.metaphor.interpretations;
  const auto content = content_positions(poem);
  auto random_words = [&](Statement& s, std::size_t k) {
    s.is_filler = true;
    std::vector<TokenPos> pool = content;
    rng.shuffle(std::span<TokenPos>(pool));
    std::set<std::string> used;
    for (auto pos : pool) {
      if (s.words.size() == k) break;
      const auto& t = token_at(poem, pos);
      if (!used.insert(t.lemma).second) continue;
      s.words.push_back(t.surface);
      s.highlights.push_back(pos);
    }
    s.prediction = s.words.size() == k ? Prediction::Disagree : Prediction::NotApplicable;
  };
  {
    auto& s = b.add(12);
    if (!interp.empty()) {
      std::set<std::string> seen;
      for (const auto& i : interp) {
        if (!seen.insert(i.word).second) continue;
        s.words.push_back(i.word);
        for (auto pos : b.positions_of(i.word)) s.highlights.push_back(pos);
      }
      std::sort(s.highlights.begin(), s.highlights.end());
      s.prediction = Prediction::Agree;
    } else {
      random_words(s, 2);
    }
    Builder::set(s, "words", join(s.words, ", "));
  }
  {
    auto& s = b.add(13);
    if (!interp.empty()) {
      const auto best = std::max_element(interp.begin(), interp.end(),
                                         [](const auto& a, const auto& c) { return a.score < c.score; });
      s.words = {best->word, best->vehicle};
      s.highlights = b.positions_of(best->word);
      s.prediction = Prediction::Agree;
    } else {
      random_words(s, 2);
    }
    Builder::set(s, "x", s.words.size() > 0 ? s.words[0] : "-");
    Builder::set(s, "y", s.words.size() > 1 ? s.words[1] : "-");
  }
  return std::move(b.doc);
}

std::string render(const Poem& poem, const FramingDocument& doc, bool finnish) {
  std::set<TokenPos> italic;
  for (const auto& s : doc.statements) {
    if (s.index <= 4) italic.insert(s.highlights.begin(), s.highlights.end());
  }
  Poem marked = poem;
  for (auto pos : italic) {
    auto& t = marked.verses.at(pos.verse).tokens.at(pos.token);
    t.surface = "*" + t.surface + "*";
  }
  std::ostringstream out;
  out << poem_text(marked) << "\n\n";
  for (const auto& s : doc.statements) out << s.index << ". " << (finnish ? s.text_fi : s.text) << '\n';
  return out.str();
}

nlohmann::ordered_json FramingDocument::to_json() const {
  nlohmann::ordered_json j;
  j["poem_id"] = poem_id;
  auto list = nlohmann::ordered_json::array();
  for (const auto& s : statements) {
    auto spans = nlohmann::ordered_json::array();
    for (auto pos : s.highlights) spans.push_back({pos.verse, pos.token});
    list.push_back({{"index", s.index},
                    {"text", s.text},
                    {"text_fi", s.text_fi},
                    {"highlights", spans},
                    {"words", s.words},
                    {"is_filler", s.is_filler},
                    {"prediction", std::string(name(s.prediction))}});
  }
  j["statements"] = list;
  return j;
}

FramingDocument FramingDocument::from_json(const nlohmann::json& j) {
  FramingDocument doc;
  doc.poem_id = j.at("poem_id").get<std::string>();
  for (const auto& e : j.at("statements")) {
    Statement s;
    s.index = e.at("index").get<std::size_t>();
    s.text = e.at("text").get<std::string>();
    s.text_fi = e.value("text_fi", std::string{});
    for (const auto& span : e.at("highlights")) s.highlights.push_back({span.at(0), span.at(1)});
    s.words = e.at("words").get<std::vector<std::string>>();
    s.is_filler = e.at("is_filler").get<bool>();
    s.prediction = prediction_from_name(e.at("prediction").get<std::string>());
    doc.statements.push_back(std::move(s));
  }
  return doc;
}

std::vector<Tally> read_tallies(std::istream& in) {
  std::vector<Tally> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    const auto cells = text::split(trimmed, ',');
    if (n == 1 && !cells.empty() && !text::trim(cells[0]).empty() &&
        !std::isdigit(static_cast<unsigned char>(text::trim(cells[0]).front()))) {
      continue;
    }
    if (cells.size() != 4) throw ParseError(n, "expected 4 columns: statement_index,agree,disagree,dont_know");
    std::array<std::size_t, 4> v{};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string cell(text::trim(cells[i]));
      std::size_t used = 0;
      long long x = 0;
      try {
        x = std::stoll(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (cell.empty() || used != cell.size() || x < 0) throw ParseError(n, "bad count '" + cell + "'");
      v[i] = static_cast<std::size_t>(x);
    }
    if (v[0] < 1 || v[0] > kStatementCount) throw ParseError(n, "statement index out of range");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

Agreement score_agreement(const FramingDocument& doc, std::span<const Tally> tallies) {
  Agreement a;
  std::size_t answers = 0, dont_know = 0;
  for (const auto& t : tallies) {
    const auto it = std::find_if(doc.statements.begin(), doc.statements.end(),
                                 [&](const Statement& s) { return s.index == t.statement; });
    if (it == doc.statements.end()) throw std::invalid_argument("tally for an unknown statement");
    answers += t.agree + t.disagree + t.dont_know;
    dont_know += t.dont_know;
    if (it->prediction == Prediction::NotApplicable) continue;
    ++a.applicable;
    if (t.agree == t.disagree) {
      ++a.ties;
      continue;
    }
    ++a.majority_count;
    const auto majority = t.agree > t.disagree ? Prediction::Agree : Prediction::Disagree;
    if (majority == it->prediction) ++a.matches;
  }
  if (a.majority_count) a.accuracy = static_cast<double>(a.matches) / static_cast<double>(a.majority_count);
  if (a.applicable) a.tie_rate = static_cast<double>(a.ties) / static_cast<double>(a.applicable);
  if (answers) a.dont_know_rate = static_cast<double>(dont_know) / static_cast<double>(answers);
  return a;
}

}  // namespace runo::framing
