#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tide/annotate/mention.hpp"
#include "tide/lexicon/lexicon.hpp"
#include "tide/textpipe/document.hpp"

namespace tide::annotate {

// Aho-Corasick automaton over the lexicon surfaces, for the baseline
// character-level matcher. Built once per lexicon and reused across
// documents; searching is read-only and thread-safe.
class SubstringMatcher {
 public:
  explicit SubstringMatcher(const lexicon::Lexicon& lex);

  // Every case-insensitive occurrence of every surface, including hits
  // inside longer words; one Mention per (occurrence, entry sharing that
  // surface). Overlaps are all reported.
  std::vector<Mention> find(const textpipe::Document& doc) const;

 private:
  struct Node {
    std::map<unsigned char, uint32_t> next;
    uint32_t fail = 0;
    int32_t pattern = -1;  // pattern ending exactly here, if any
    uint32_t output = 0;   // nearest suffix node with a pattern; 0 = none
  };

  uint32_t step(uint32_t state, unsigned char c) const;

  const lexicon::Lexicon& lex_;
  std::vector<Node> nodes_;
  std::vector<std::string> patterns_;                 // distinct surfaces
  std::vector<std::vector<uint32_t>> pattern_entries_;  // entry indices
};

std::vector<Mention> match_substring(const textpipe::Document& doc,
                                     const lexicon::Lexicon& lex);

// Greedy left-to-right scan over token windows (longest window first,
// bounded by the lexicon's longest surface); the window's raw text slice
// is normalized and looked up, so hyphenation and case differences still
// match. Matched windows are consumed.
std::vector<Mention> match_exact(const textpipe::Document& doc,
                                 const lexicon::Lexicon& lex);

// Per-token lemma lookup against head entries only.
std::vector<Mention> match_lemma(const textpipe::Document& doc,
                                 const lexicon::Lexicon& lex);

}  // namespace tide::annotate
