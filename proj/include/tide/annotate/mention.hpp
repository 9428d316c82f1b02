#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tide/lexicon/lexicon.hpp"

namespace tide::annotate {

enum class Technique { kSubstring, kExact, kLemma };

enum class Verdict {
  kKept,
  kFilteredPersonLexicon,
  kFilteredSimilarity,
  kFilteredDependency,
};

enum class PersonFilter { kNone, kLexicon, kSimilarity };

const char* to_string(Technique t);
const char* to_string(Verdict v);
const char* to_string(PersonFilter f);
Technique parse_technique(const std::string& s);
PersonFilter parse_person_filter(const std::string& s);

struct Mention {
  std::string doc_id;
  // Code-point offsets into the document text.
  std::size_t start = 0;
  std::size_t end = 0;
  std::string matched_text;
  uint32_t entry_ref = 0;  // index into Lexicon::entries()
  Technique technique = Technique::kExact;
  std::vector<lexicon::SenseContext> senses;
  Verdict verdict = Verdict::kKept;
  bool non_identity_possible = false;

  bool kept() const { return verdict == Verdict::kKept; }
};

struct AnnotatorConfig {
  Technique technique = Technique::kExact;
  PersonFilter person_filter = PersonFilter::kNone;
  bool use_dependency_rule = false;
  bool use_ner_rule = false;
  double similarity_threshold = 0.25;
};

nlohmann::json mention_to_json(const Mention& m, const lexicon::Lexicon& lex);

}  // namespace tide::annotate
