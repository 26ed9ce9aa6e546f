#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "runo/aesthetics.hpp"
#include "runo/corpus.hpp"
#include "runo/text.hpp"

namespace runo::testing {

inline std::filesystem::path source_dir() { return RUNO_SOURCE_DIR; }
inline std::filesystem::path toy_dir() { return source_dir() / "data" / "toy"; }

/// Loaded once per process.
inline const Resources& toy_resources() {
  static const Resources res = load_resources(ResourcePaths::in_directory(toy_dir()));
  return res;
}

inline const std::vector<Poem>& toy_stanzas() {
  static const std::vector<Poem> poems = stanza_corpus(load_corpus(toy_dir() / "corpus.conllu"));
  return poems;
}

inline const Poem& toy_poem(std::string_view id) {
  for (const auto& p : toy_stanzas()) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("no toy poem " + std::string(id));
}

/// Verse from "surface/POS" or "surface/lemma/POS" items separated by spaces.
inline Verse verse(std::string_view items) {
  Verse v;
  for (auto item : text::split(items, ' ')) {
    if (item.empty()) continue;
    const auto parts = text::split(item, '/');
    Token t;
    t.id = std::to_string(v.tokens.size() + 1);
    t.surface = std::string(parts.at(0));
    t.lemma = parts.size() == 3 ? std::string(parts[1]) : text::encode_utf8(text::letters_lower(parts[0]));
    t.pos = std::string(parts.back());
    v.tokens.push_back(std::move(t));
  }
  return v;
}

inline Poem poem(std::vector<std::string_view> verses, std::string id = "t") {
  Poem p;
  p.id = std::move(id);
  for (auto v : verses) p.verses.push_back(verse(v));
  return p;
}

}  // namespace runo::testing
