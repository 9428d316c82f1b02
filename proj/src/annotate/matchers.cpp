#include "tide/annotate/matchers.hpp"

#include <algorithm>
#include <deque>

#include "tide/common/text.hpp"

namespace tide::annotate {

namespace {

uint32_t entry_index(const lexicon::Lexicon& lex, const lexicon::LexicalEntry* e) {
  return static_cast<uint32_t>(e - lex.entries().data());
}

Mention make_mention(const textpipe::Document& doc, std::size_t start,
                     std::size_t end, std::string matched_text,
                     uint32_t entry_ref, Technique technique,
                     const lexicon::Lexicon& lex) {
  Mention m;
  m.doc_id = doc.doc_id;
  m.start = start;
  m.end = end;
  m.matched_text = std::move(matched_text);
  m.entry_ref = entry_ref;
  m.technique = technique;
  for (const auto* s : lex.senses_of(lex.entries()[entry_ref])) {
    m.senses.push_back(*s);
    m.non_identity_possible =
        m.non_identity_possible || s->has_non_identity_sense;
  }
  return m;
}

void sort_mentions(std::vector<Mention>& ms) {
  std::sort(ms.begin(), ms.end(), [](const Mention& a, const Mention& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end < b.end;
    return a.entry_ref < b.entry_ref;
  });
}

}  // namespace

SubstringMatcher::SubstringMatcher(const lexicon::Lexicon& lex) : lex_(lex) {
  nodes_.emplace_back();  // root

  std::map<std::string, std::vector<uint32_t>> by_surface;
  for (std::size_t i = 0; i < lex.entries().size(); ++i)
    by_surface[lex.entries()[i].surface].push_back(static_cast<uint32_t>(i));

  for (auto& [surface, entries] : by_surface) {
    if (surface.empty()) continue;
    uint32_t state = 0;
    for (unsigned char c : surface) {
      auto it = nodes_[state].next.find(c);
      if (it == nodes_[state].next.end()) {
        nodes_[state].next.emplace(c, static_cast<uint32_t>(nodes_.size()));
        state = static_cast<uint32_t>(nodes_.size());
        nodes_.emplace_back();
      } else {
        state = it->second;
      }
    }
    nodes_[state].pattern = static_cast<int32_t>(patterns_.size());
    patterns_.push_back(surface);
    pattern_entries_.push_back(std::move(entries));
  }

  // Breadth-first fail links; output chains collapse to the nearest
  // pattern-bearing suffix so the search walks only real hits.
  std::deque<uint32_t> queue;
  for (auto& [c, child] : nodes_[0].next) {
    nodes_[child].fail = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    uint32_t u = queue.front();
    queue.pop_front();
    for (auto& [c, child] : nodes_[u].next) {
      uint32_t f = nodes_[u].fail;
      while (f != 0 && !nodes_[f].next.count(c)) f = nodes_[f].fail;
      auto it = nodes_[f].next.find(c);
      nodes_[child].fail = (it != nodes_[f].next.end() && it->second != child)
                               ? it->second
                               : 0;
      uint32_t fl = nodes_[child].fail;
      nodes_[child].output =
          nodes_[fl].pattern >= 0 ? fl : nodes_[fl].output;
      queue.push_back(child);
    }
  }
}

uint32_t SubstringMatcher::step(uint32_t state, unsigned char c) const {
  while (true) {
    auto it = nodes_[state].next.find(c);
    if (it != nodes_[state].next.end()) return it->second;
    if (state == 0) return 0;
    state = nodes_[state].fail;
  }
}

std::vector<Mention> SubstringMatcher::find(
    const textpipe::Document& doc) const {
  std::vector<Mention> out;
  std::string lowered = text::to_lower(doc.text);
  text::CharMap map(doc.text);

  uint32_t state = 0;
  for (std::size_t pos = 0; pos < lowered.size(); ++pos) {
    state = step(state, static_cast<unsigned char>(lowered[pos]));
    for (uint32_t s = nodes_[state].pattern >= 0 ? state : nodes_[state].output;
         s != 0; s = nodes_[s].output) {
      const std::string& pat = patterns_[nodes_[s].pattern];
      std::size_t byte_start = pos + 1 - pat.size();
      std::size_t char_start = map.char_at_byte(byte_start);
      std::size_t char_end = map.char_at_byte(pos + 1);
      for (uint32_t e : pattern_entries_[nodes_[s].pattern])
        out.push_back(make_mention(doc, char_start, char_end,
                                   doc.text.substr(byte_start, pat.size()),
                                   e, Technique::kSubstring, lex_));
    }
  }
  sort_mentions(out);
  return out;
}

std::vector<Mention> match_substring(const textpipe::Document& doc,
                                     const lexicon::Lexicon& lex) {
  return SubstringMatcher(lex).find(doc);
}

std::vector<Mention> match_exact(const textpipe::Document& doc,
                                 const lexicon::Lexicon& lex) {
  std::vector<Mention> out;
  const auto& toks = doc.tokens;
  text::CharMap map(doc.text);
  std::size_t max_w = lex.max_surface_words();

  // Tokens that vanish under normalization (bare punctuation) cannot
  // start or end a match.
  std::vector<bool> content(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i)
    content[i] = !lexicon::normalize_term(toks[i].text).empty();

  std::size_t i = 0;
  while (i < toks.size()) {
    if (!content[i]) {
      ++i;
      continue;
    }
    std::size_t longest = 0;
    std::string surface;
    for (std::size_t w = std::min(max_w, toks.size() - i); w >= 1; --w) {
      if (!content[i + w - 1]) continue;
      std::string norm = lexicon::normalize_term(
          map.slice(toks[i].start, toks[i + w - 1].end));
      if (!norm.empty() && lex.has_surface(norm)) {
        longest = w;
        surface = std::move(norm);
        break;
      }
    }
    if (longest == 0) {
      ++i;
      continue;
    }
    std::size_t start = toks[i].start;
    std::size_t end = toks[i + longest - 1].end;
    for (const auto* e : lex.lookup_surface(surface))
      out.push_back(make_mention(doc, start, end,
                                 std::string(map.slice(start, end)),
                                 entry_index(lex, e), Technique::kExact,
                                 lex));
    i += longest;
  }
  sort_mentions(out);
  return out;
}

std::vector<Mention> match_lemma(const textpipe::Document& doc,
                                 const lexicon::Lexicon& lex) {
  std::vector<Mention> out;
  for (const auto& tok : doc.tokens) {
    std::string lemma = lexicon::normalize_term(tok.lemma);
    if (lemma.empty()) continue;
    for (const auto* e : lex.lookup_lemma(lemma))
      out.push_back(make_mention(doc, tok.start, tok.end, tok.text,
                                 entry_index(lex, e), Technique::kLemma,
                                 lex));
  }
  sort_mentions(out);
  return out;
}

}  // namespace tide::annotate
