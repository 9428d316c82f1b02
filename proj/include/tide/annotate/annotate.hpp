#pragma once

#include <optional>
#include <vector>

#include "tide/annotate/matchers.hpp"
#include "tide/annotate/mention.hpp"
#include "tide/embed/embeddings.hpp"
#include "tide/lexicon/lexicon.hpp"
#include "tide/lexicon/person_nouns.hpp"
#include "tide/textpipe/document.hpp"

namespace tide::annotate {

// Shared read-only inputs for a batch run. `substring` may carry a
// prebuilt automaton so per-document annotation stays cheap; when null it
// is built on the fly.
struct Resources {
  const lexicon::PersonNounLexicon* person_nouns = nullptr;
  const embed::EmbeddingTable* embeddings = nullptr;
  const SubstringMatcher* substring = nullptr;
};

// Keeps the longest span at each conflict (ties to the leftmost);
// mentions sharing a surviving span all survive, so entries that share a
// surface stay distinguishable.
std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions);

// The disambiguation ladder. NER entities of person-like types pass
// unconditionally; noun mentions are tested directly against the person
// test; modifier mentions are judged by their dependency head, with
// conjunction edges forwarding to the first conjunct; mentions without
// usable parse information pass unchanged.
std::vector<Mention> apply_person_rules(
    std::vector<Mention> mentions, const textpipe::Document& doc,
    const lexicon::PersonNounLexicon* person_nouns,
    const AnnotatorConfig& config,
    const embed::EmbeddingTable* embeddings);

// matcher -> overlap resolution -> person rules. Filtered mentions stay
// in the output with their verdict; order is (start, end, entry).
std::vector<Mention> annotate(const textpipe::Document& doc,
                              const lexicon::Lexicon& lex,
                              const AnnotatorConfig& config,
                              const Resources& res);

}  // namespace tide::annotate
