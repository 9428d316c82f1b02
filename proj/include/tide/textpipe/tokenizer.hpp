#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tide/lexicon/lexicon.hpp"
#include "tide/lexicon/person_nouns.hpp"
#include "tide/textpipe/document.hpp"

namespace tide::textpipe {

// Whitespace split with every ASCII punctuation character as a separate
// one-character token. Offsets are code-point positions; lemma and tag
// fields are left unset.
std::vector<Token> tokenize(std::string_view text);

// Lowercase plus suffix stripping (-ies, -es, -s). When a lexicon is
// supplied, a surface that exists in it keeps its recorded lemma, and the
// ambiguous -es split prefers whichever stem the lexicon knows.
std::string lemmatize(std::string_view word,
                      const lexicon::Lexicon* lex = nullptr);

// Fallback tagger for text without external annotations: person-noun
// lookup, lexicon tags, a capitalization rule for mid-sentence proper
// nouns, then suffix heuristics. Dependency fields stay unset.
void heuristic_tag(std::vector<Token>& tokens, const lexicon::Lexicon& lex,
                   const lexicon::PersonNounLexicon& person_nouns);

// tokenize + lemmatize + heuristic_tag in one pass.
Document analyze(std::string doc_id, std::string text,
                 const lexicon::Lexicon& lex,
                 const lexicon::PersonNounLexicon& person_nouns);

}  // namespace tide::textpipe
