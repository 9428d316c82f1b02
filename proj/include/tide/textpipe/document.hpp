#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace tide::textpipe {

enum class Pos { kNoun, kPropn, kAdj, kVerb, kOther };

const char* to_string(Pos p);
Pos parse_pos(const std::string& s);
// Maps a Universal POS tag onto the coarse tag set.
Pos coarse_pos(const std::string& upos);

struct Token {
  std::string text;
  // Code-point offsets into the document text.
  std::size_t start = 0;
  std::size_t end = 0;
  std::string lemma;
  Pos pos = Pos::kOther;
  std::string upos;  // raw tag when ingested, empty otherwise
  std::vector<std::pair<std::string, std::string>> morph;
  std::optional<std::size_t> dep_head;  // document-level token index
  std::optional<std::string> dep_rel;
  std::optional<std::string> ner_tag;
};

enum class AnnotationSource { kBuiltinHeuristic, kIngested };

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<Token> tokens;
  AnnotationSource annotation_source = AnnotationSource::kBuiltinHeuristic;
  // First token index of each sentence, ascending; empty means one
  // sentence spanning the whole document.
  std::vector<std::size_t> sentence_starts;
};

nlohmann::json to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

}  // namespace tide::textpipe
