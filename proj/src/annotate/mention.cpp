#include "tide/annotate/mention.hpp"

#include <set>

#include "tide/common/error.hpp"

namespace tide::annotate {

const char* to_string(Technique t) {
  switch (t) {
    case Technique::kSubstring: return "SUBSTRING";
    case Technique::kExact: return "EXACT";
    case Technique::kLemma: return "LEMMA";
  }
  return "EXACT";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kKept: return "KEPT";
    case Verdict::kFilteredPersonLexicon: return "FILTERED_PERSON_LEXICON";
    case Verdict::kFilteredSimilarity: return "FILTERED_SIMILARITY";
    case Verdict::kFilteredDependency: return "FILTERED_DEPENDENCY";
  }
  return "KEPT";
}

const char* to_string(PersonFilter f) {
  switch (f) {
    case PersonFilter::kNone: return "NONE";
    case PersonFilter::kLexicon: return "LEXICON";
    case PersonFilter::kSimilarity: return "SIMILARITY";
  }
  return "NONE";
}

Technique parse_technique(const std::string& s) {
  if (s == "SUBSTRING" || s == "substring") return Technique::kSubstring;
  if (s == "EXACT" || s == "exact") return Technique::kExact;
  if (s == "LEMMA" || s == "lemma") return Technique::kLemma;
  throw FormatError("unknown matching technique '" + s + "'");
}

PersonFilter parse_person_filter(const std::string& s) {
  if (s == "NONE" || s == "none") return PersonFilter::kNone;
  if (s == "LEXICON" || s == "lexicon") return PersonFilter::kLexicon;
  if (s == "SIMILARITY" || s == "similarity")
    return PersonFilter::kSimilarity;
  throw FormatError("unknown person filter '" + s + "'");
}

nlohmann::json mention_to_json(const Mention& m,
                               const lexicon::Lexicon& lex) {
  std::set<std::string> groups, subgroups, connotations;
  for (const auto& s : m.senses) {
    groups.insert(lexicon::to_string(s.group));
    if (!s.subgroup.empty()) subgroups.insert(s.subgroup);
    if (s.connotations.neutral) connotations.insert("NEUTRAL");
    if (s.connotations.pejorative) connotations.insert("PEJORATIVE");
  }
  return nlohmann::json{
      {"doc_id", m.doc_id},
      {"start", m.start},
      {"end", m.end},
      {"text", m.matched_text},
      {"entry_id", lex.entries()[m.entry_ref].id},
      {"technique", to_string(m.technique)},
      {"groups", groups},
      {"subgroups", subgroups},
      {"connotations", connotations},
      {"verdict", to_string(m.verdict)},
  };
}

}  // namespace tide::annotate
