#include "tide/textpipe/tokenizer.hpp"

#include <cctype>

#include "tide/common/text.hpp"

namespace tide::textpipe {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  text::CharMap map(text);
  std::size_t n = map.char_count();

  auto flush = [&](std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    Token t;
    t.start = begin;
    t.end = end;
    t.text = std::string(map.slice(begin, end));
    tokens.push_back(std::move(t));
  };

  std::size_t word_start = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < n; ++i) {
    uint32_t cp = map.code_point(i);
    bool space = cp < 128 && text::is_ascii_space(static_cast<char>(cp));
    bool punct = cp < 128 && text::is_ascii_punct(static_cast<char>(cp));
    if (space) {
      if (in_word) flush(word_start, i);
      in_word = false;
    } else if (punct) {
      if (in_word) flush(word_start, i);
      in_word = false;
      flush(i, i + 1);
    } else {
      if (!in_word) word_start = i;
      in_word = true;
    }
  }
  if (in_word) flush(word_start, n);
  return tokens;
}

std::string lemmatize(std::string_view word, const lexicon::Lexicon* lex) {
  std::string lower = text::to_lower(word);
  if (lex) {
    auto hits = lex->lookup_surface(lower);
    if (!hits.empty()) return hits.front()->lemma;
  }
  std::size_t n = lower.size();
  if (n > 3 && lower.ends_with("ies")) {
    return lower.substr(0, n - 3) + "y";
  }
  if (n > 2 && lower.ends_with("es")) {
    std::string keep_e = lower.substr(0, n - 1);  // "-es" -> "-e"
    std::string drop_es = lower.substr(0, n - 2);
    if (lex) {
      bool keep_known = lex->has_surface(keep_e);
      bool drop_known = lex->has_surface(drop_es);
      if (drop_known && !keep_known) return drop_es;
    }
    return keep_e;
  }
  if (n > 1 && lower.ends_with("s") && !lower.ends_with("ss")) {
    return lower.substr(0, n - 1);
  }
  return lower;
}

namespace {

bool is_capitalized(const std::string& s) {
  return !s.empty() && s[0] >= 'A' && s[0] <= 'Z';
}

bool sentence_boundary(const std::string& s) {
  return s == "." || s == "!" || s == "?";
}

}  // namespace

void heuristic_tag(std::vector<Token>& tokens, const lexicon::Lexicon& lex,
                   const lexicon::PersonNounLexicon& person_nouns) {
  bool sentence_initial = true;
  for (Token& t : tokens) {
    std::string norm = lexicon::normalize_term(t.text);
    std::string lemma = t.lemma.empty() ? lemmatize(t.text, &lex) : t.lemma;

    if (person_nouns.contains(norm) || person_nouns.contains(lemma)) {
      t.pos = Pos::kNoun;
    } else {
      std::string lex_tag;
      for (const auto* entry : lex.lookup_surface(norm)) {
        if (!entry->pos.empty()) {
          lex_tag = entry->pos;
          break;
        }
      }
      if (!lex_tag.empty()) {
        // Lexicon pos tags are lowercase; coarse_pos speaks UPOS.
        for (char& c : lex_tag)
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        t.pos = coarse_pos(lex_tag);
      } else if (is_capitalized(t.text) && !sentence_initial) {
        t.pos = Pos::kPropn;
      } else if (t.text.ends_with("ly")) {
        t.pos = Pos::kOther;
      } else if (t.text.ends_with("ed") || t.text.ends_with("ing")) {
        t.pos = Pos::kVerb;
      } else if (t.text.size() == 1 && text::is_ascii_punct(t.text[0])) {
        t.pos = Pos::kOther;
      } else {
        t.pos = Pos::kNoun;
      }
    }
    sentence_initial = sentence_boundary(t.text);
  }
}

Document analyze(std::string doc_id, std::string text,
                 const lexicon::Lexicon& lex,
                 const lexicon::PersonNounLexicon& person_nouns) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::move(text);
  doc.tokens = tokenize(doc.text);
  for (Token& t : doc.tokens) t.lemma = lemmatize(t.text, &lex);
  heuristic_tag(doc.tokens, lex, person_nouns);
  doc.annotation_source = AnnotationSource::kBuiltinHeuristic;
  return doc;
}

}  // namespace tide::textpipe
