#include "runo/lexres.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "runo/text.hpp"

namespace runo {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::optional<double> parse_double(std::string_view s) {
  s = text::trim(s);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool before(const ScoredWord& a, const ScoredWord& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.word < b.word;
}

/// Two-column "lemma<TAB>value" reader shared by the lexicons.
template <class Check>
std::map<std::string, double, std::less<>> read_value_table(std::istream& in, Check check) {
  std::map<std::string, double, std::less<>> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = text::trim(raw);
    if (s.empty() || s.front() == '#') continue;
    auto cols = text::split(s, '\t');
    if (cols.size() != 2) throw ParseError(line, "expected lemma<TAB>value");
    auto value = parse_double(cols[1]);
    if (!value) throw ParseError(line, "bad number '" + std::string(cols[1]) + "'");
    if (!check(*value)) throw ParseError(line, "value out of range for '" + std::string(cols[0]) + "'");
    out[std::string(text::trim(cols[0]))] = *value;
  }
  return out;
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// ---------------------------------------------------------------------------
// EmbeddingStore

EmbeddingStore EmbeddingStore::read(std::istream& in) {
  EmbeddingStore store;
  std::string raw;
  std::size_t line = 0;
  std::optional<std::size_t> declared_dim;
  std::vector<double> vec;
  while (std::getline(in, raw)) {
    ++line;
    auto fields = split_ws(text::trim(raw));
    if (fields.empty()) continue;
    if (line == 1 && fields.size() == 2) {
      std::size_t count = 0, dim = 0;
      auto r1 = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), count);
      auto r2 = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), dim);
      if (r1.ec == std::errc() && r2.ec == std::errc() &&
          r1.ptr == fields[0].data() + fields[0].size() &&
          r2.ptr == fields[1].data() + fields[1].size()) {
        if (dim == 0) throw ParseError(line, "embedding dimension must be positive");
        declared_dim = dim;
        continue;
      }
    }
    if (fields.size() < 2) throw ParseError(line, "embedding line without components");
    vec.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto v = parse_double(fields[i]);
      if (!v) throw ParseError(line, "bad component in vector for '" + std::string(fields[0]) + "'");
      vec.push_back(*v);
    }
    if (declared_dim && vec.size() != *declared_dim) {
      throw ParseError(line, "dimension mismatch for '" + std::string(fields[0]) + "': expected " +
                                 std::to_string(*declared_dim) + ", got " + std::to_string(vec.size()));
    }
    try {
      store.add(std::string(fields[0]), vec);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (store.size() == 0) throw std::runtime_error("embedding file has no vectors");
  return store;
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read(in);
}

void EmbeddingStore::add(std::string word, std::span<const double> vec) {
  if (vec.empty()) throw std::invalid_argument("empty vector for '" + word + "'");
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_) {
    throw std::invalid_argument("dimension mismatch for '" + word + "': expected " +
                                std::to_string(dim_) + ", got " + std::to_string(vec.size()));
  }
  double norm = 0.0;
  for (double x : vec) norm += x * x;
  norm = std::sqrt(norm);
  if (auto it = index_.find(word); it != index_.end()) {
    ++duplicates_;
    std::copy(vec.begin(), vec.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    norms_[it->second] = norm;
    return;
  }
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  data_.insert(data_.end(), vec.begin(), vec.end());
  norms_.push_back(norm);
}

bool EmbeddingStore::contains(std::string_view word) const {
  return index_.find(std::string(word)) != index_.end();
}

std::optional<std::span<const double>> EmbeddingStore::vector(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

std::optional<double> EmbeddingStore::cosine(std::string_view a, std::string_view b) const {
  auto va = vector(a);
  auto vb = vector(b);
  if (!va || !vb) return std::nullopt;
  return cosine_similarity(*va, *vb);
}

std::optional<std::vector<ScoredWord>> EmbeddingStore::top_similar(std::string_view word,
                                                                   std::size_t k) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  const auto self = it->second;
  const auto query = row(self);
  std::vector<ScoredWord> all;
  all.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i == self) continue;
    double s = 0.0;
    if (norms_[i] > 0.0 && norms_[self] > 0.0) {
      const auto r = row(i);
      for (std::size_t d = 0; d < dim_; ++d) s += query[d] * r[d];
      s /= norms_[i] * norms_[self];
    }
    all.push_back({words_[i], s});
  }
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), before);
  all.resize(k);
  return all;
}

std::optional<ScoredWord> EmbeddingStore::nearest(std::span<const double> vec) const {
  if (vec.size() != dim_ || words_.empty()) return std::nullopt;
  std::optional<ScoredWord> best;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    ScoredWord cand{words_[i], cosine_similarity(vec, row(i))};
    if (!best || before(cand, *best)) best = std::move(cand);
  }
  return best;
}

// ---------------------------------------------------------------------------
// n-grams and relatedness

std::vector<NgramCount> read_ngrams(std::istream& in) {
  std::vector<NgramCount> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = text::trim(raw);
    if (s.empty()) continue;
    const auto tab = s.rfind('\t');
    if (tab == std::string_view::npos) throw ParseError(line, "expected '<5-gram><TAB><count>'");
    auto words = split_ws(s.substr(0, tab));
    if (words.size() != 5) {
      throw ParseError(line, "expected 5 words, found " + std::to_string(words.size()));
    }
    auto count_text = text::trim(s.substr(tab + 1));
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size()) {
      throw ParseError(line, "bad count '" + std::string(count_text) + "'");
    }
    NgramCount g;
    for (std::size_t i = 0; i < 5; ++i) g.words[i] = std::string(words[i]);
    g.count = count;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<NgramCount> load_ngrams(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_ngrams(in);
}

RelatednessModel RelatednessModel::build(std::span<const NgramCount> ngrams, std::size_t list_limit) {
  RelatednessModel model;
  std::vector<std::string> names;
  auto intern = [&](const std::string& w) {
    auto [it, inserted] = model.ids_.emplace(w, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(w);
    return it->second;
  };

  // Symmetric co-occurrence counts over every position pair of each 5-gram.
  std::unordered_map<std::uint64_t, double> cooc;
  for (const auto& g : ngrams) {
    if (g.count == 0) continue;
    std::array<std::uint32_t, 5> ids{};
    for (std::size_t i = 0; i < 5; ++i) ids[i] = intern(g.words[i]);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        if (ids[i] == ids[j]) continue;
        cooc[key(ids[i], ids[j])] += static_cast<double>(g.count);
      }
    }
  }

  std::vector<double> marginal(names.size(), 0.0);
  double total = 0.0;
  for (const auto& [k, c] : cooc) {
    marginal[k >> 32] += c;
    marginal[k & 0xffffffffu] += c;
    total += 2.0 * c;
  }

  double max_ppmi = 0.0;
  for (const auto& [k, c] : cooc) {
    const double pmi = std::log(c * total / (marginal[k >> 32] * marginal[k & 0xffffffffu]));
    if (pmi > 0.0) {
      model.scores_[k] = pmi;
      max_ppmi = std::max(max_ppmi, pmi);
    }
  }
  model.lists_.assign(names.size(), {});
  for (auto& [k, s] : model.scores_) {
    s /= max_ppmi;
    const auto a = static_cast<std::uint32_t>(k >> 32);
    const auto b = static_cast<std::uint32_t>(k & 0xffffffffu);
    model.lists_[a].push_back({names[b], s});
    model.lists_[b].push_back({names[a], s});
  }
  for (auto& list : model.lists_) {
    std::sort(list.begin(), list.end(), before);
    if (list.size() > list_limit) list.resize(list_limit);
  }
  return model;
}

double RelatednessModel::relatedness(std::string_view a, std::string_view b) const {
  auto ia = ids_.find(std::string(a));
  auto ib = ids_.find(std::string(b));
  if (ia == ids_.end() || ib == ids_.end() || ia->second == ib->second) return 0.0;
  auto it = scores_.find(key(ia->second, ib->second));
  return it == scores_.end() ? 0.0 : it->second;
}

std::span<const ScoredWord> RelatednessModel::related(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return {};
  return lists_[it->second];
}

double RelatednessModel::max_score() const {
  double m = 0.0;
  for (const auto& [k, s] : scores_) m = std::max(m, s);
  return m;
}

// ---------------------------------------------------------------------------
// Lexicons

ConcretenessLexicon::ConcretenessLexicon(std::map<std::string, double, std::less<>> scores)
    : scores_(std::move(scores)) {
  for (const auto& [w, s] : scores_) {
    if (s < 1.0 || s > 5.0) throw std::invalid_argument("concreteness of '" + w + "' outside [1, 5]");
  }
}

ConcretenessLexicon ConcretenessLexicon::read(std::istream& in) {
  return ConcretenessLexicon(read_value_table(in, [](double v) { return v >= 1.0 && v <= 5.0; }));
}

ConcretenessLexicon ConcretenessLexicon::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read(in);
}

std::optional<double> ConcretenessLexicon::score(std::string_view lemma) const {
  auto it = scores_.find(lemma);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

Concreteness ConcretenessLexicon::classify(std::string_view lemma) const {
  auto s = score(lemma);
  if (!s) return Concreteness::Unknown;
  return *s >= kThreshold ? Concreteness::Concrete : Concreteness::Abstract;
}

LexiconSentimentScorer::LexiconSentimentScorer(std::map<std::string, double, std::less<>> polarity)
    : polarity_(std::move(polarity)) {
  for (const auto& [w, p] : polarity_) {
    if (p < -1.0 || p > 1.0) throw std::invalid_argument("polarity of '" + w + "' outside [-1, 1]");
  }
}

LexiconSentimentScorer LexiconSentimentScorer::read(std::istream& in) {
  return LexiconSentimentScorer(read_value_table(in, [](double v) { return v >= -1.0 && v <= 1.0; }));
}

LexiconSentimentScorer LexiconSentimentScorer::load(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read(in);
}

std::optional<double> LexiconSentimentScorer::polarity(std::string_view lemma) const {
  auto it = polarity_.find(lemma);
  if (it == polarity_.end()) return std::nullopt;
  return it->second;
}

double LexiconSentimentScorer::score_verse(const Verse& verse) const {
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& t : verse.tokens) {
    if (auto p = polarity(t.lemma)) {
      sum += *p;
      ++hits;
    }
  }
  return hits ? sum / static_cast<double>(hits) : 0.0;
}

// ---------------------------------------------------------------------------
// TableMorphology

std::string TableMorphology::key(std::string_view lemma, std::string_view canonical_tags) {
  std::string k(lemma);
  k += '\x1f';
  k += canonical_tags;
  return k;
}

TableMorphology TableMorphology::read(std::istream& table, std::istream* pos_table) {
  TableMorphology morph;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(table, raw)) {
    ++line;
    auto s = text::trim(raw);
    if (s.empty() || s.front() == '#') continue;
    auto cols = text::split(s, '\t');
    if (cols.size() != 3) throw ParseError(line, "expected lemma<TAB>tags<TAB>surface");
    try {
      morph.add_form(std::string(cols[0]), MorphTags::parse(cols[1]), std::string(cols[2]));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (pos_table) {
    line = 0;
    while (std::getline(*pos_table, raw)) {
      ++line;
      auto s = text::trim(raw);
      if (s.empty() || s.front() == '#') continue;
      auto cols = text::split(s, '\t');
      if (cols.size() != 2) throw ParseError(line, "expected lemma<TAB>UPOS");
      morph.add_pos(std::string(cols[0]), std::string(cols[1]));
    }
  }
  return morph;
}

TableMorphology TableMorphology::load(const std::filesystem::path& table,
                                      const std::optional<std::filesystem::path>& pos_table) {
  auto in = open_or_throw(table);
  if (!pos_table) return read(in);
  auto pin = open_or_throw(*pos_table);
  return read(in, &pin);
}

void TableMorphology::add_form(std::string lemma, const MorphTags& tags, std::string surface) {
  const auto canonical = tags.canonical();
  auto lowered = text::encode_utf8(text::letters_lower(surface));
  auto& analyses = reverse_[lowered];
  analyses.push_back({lemma, "", tags});
  forms_[key(lemma, canonical)] = std::move(surface);
}

void TableMorphology::add_pos(std::string lemma, std::string pos) {
  auto& list = pos_[lemma];
  if (std::find(list.begin(), list.end(), pos) == list.end()) list.push_back(std::move(pos));
}

std::optional<std::string> TableMorphology::realize(std::string_view lemma, const MorphTags& tags) const {
  if (tags.empty()) return std::string(lemma);
  auto it = forms_.find(key(lemma, tags.canonical()));
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> TableMorphology::realize_object(std::string_view lemma, const MorphTags& tags,
                                                           std::string_view governor) const {
  if (!governor.empty() && !tags.get("Gov")) {
    MorphTags governed = tags;
    governed.set("Gov", std::string(governor));
    if (auto it = forms_.find(key(lemma, governed.canonical())); it != forms_.end()) return it->second;
  }
  return realize(lemma, tags);
}

std::vector<std::string> TableMorphology::parts_of_speech(std::string_view lemma) const {
  auto it = pos_.find(lemma);
  if (it == pos_.end()) return {};
  return it->second;
}

std::vector<Analysis> TableMorphology::analyze(std::string_view surface) const {
  std::vector<Analysis> out;
  const auto lowered = text::encode_utf8(text::letters_lower(surface));
  if (auto it = reverse_.find(lowered); it != reverse_.end()) {
    for (auto a : it->second) {
      auto pos = parts_of_speech(a.lemma);
      a.pos = pos.empty() ? "X" : pos.front();
      out.push_back(std::move(a));
    }
  }
  if (out.empty()) {
    if (auto pos = parts_of_speech(lowered); !pos.empty()) out.push_back({lowered, pos.front(), {}});
  }
  return out;
}

namespace {

bool is_punct_char(char32_t c) {
  switch (c) {
    case U',': case U'.': case U';': case U':': case U'!': case U'?': case U'(': case U')':
    case U'"': case U'\'': case U'-': case U'–': case U'—': case U'”': case U'“':
    case U'»': case U'«': case U'…':
      return true;
    default:
      return false;
  }
}

Token annotate_word(std::string surface, const TableMorphology& morph) {
  Token t;
  t.surface = std::move(surface);
  auto analyses = morph.analyze(t.surface);
  if (!analyses.empty()) {
    t.lemma = analyses.front().lemma;
    t.pos = analyses.front().pos;
    t.morph = analyses.front().tags;
  } else {
    t.lemma = text::encode_utf8(text::letters_lower(t.surface));
    if (t.lemma.empty()) t.lemma = t.surface;
    t.pos = "X";
  }
  return t;
}

Verse annotate_line(std::string_view line, const TableMorphology& morph) {
  Verse verse;
  for (auto chunk : text::split(line, ' ')) {
    const auto cps = text::decode_utf8(text::trim(chunk));
    if (cps.empty()) continue;
    std::size_t b = 0, e = cps.size();
    while (b < e && is_punct_char(cps[b])) ++b;
    while (e > b && is_punct_char(cps[e - 1])) --e;
    auto punct = [&](char32_t c) {
      Token p;
      p.surface = text::encode_utf8(std::u32string(1, c));
      p.lemma = p.surface;
      p.pos = "PUNCT";
      return p;
    };
    std::vector<Token> group;
    for (std::size_t i = 0; i < b; ++i) group.push_back(punct(cps[i]));
    if (b < e) group.push_back(annotate_word(text::encode_utf8(cps.substr(b, e - b)), morph));
    for (std::size_t i = e; i < cps.size(); ++i) group.push_back(punct(cps[i]));
    for (std::size_t i = 0; i + 1 < group.size(); ++i) group[i].misc = "SpaceAfter=No";
    for (auto& t : group) verse.tokens.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < verse.tokens.size(); ++i) verse.tokens[i].id = std::to_string(i + 1);
  return verse;
}

}  // namespace

std::vector<Poem> annotate_plain_text(std::string_view input, const TableMorphology& morph) {
  std::vector<Poem> poems;
  Poem current;
  std::optional<std::string> next_id;
  auto flush = [&] {
    if (current.verses.empty()) return;
    current.id = next_id ? *next_id : "poem" + std::to_string(poems.size() + 1);
    next_id.reset();
    poems.push_back(std::move(current));
    current = Poem{};
  };
  for (auto raw : text::split(input, '\n')) {
    const auto line = text::trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      const auto body = text::trim(line.substr(1));
      if (body.starts_with("poem_id")) {
        flush();
        const auto eq = body.find('=');
        if (eq != std::string_view::npos) next_id = std::string(text::trim(body.substr(eq + 1)));
      }
      continue;
    }
    auto verse = annotate_line(line, morph);
    if (!verse.tokens.empty()) current.verses.push_back(std::move(verse));
  }
  flush();
  return poems;
}

}  // namespace runo
