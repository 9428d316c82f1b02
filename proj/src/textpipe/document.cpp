#include "tide/textpipe/document.hpp"

#include "tide/common/error.hpp"

namespace tide::textpipe {

const char* to_string(Pos p) {
  switch (p) {
    case Pos::kNoun:
      return "NOUN";
    case Pos::kPropn:
      return "PROPN";
    case Pos::kAdj:
      return "ADJ";
    case Pos::kVerb:
      return "VERB";
    case Pos::kOther:
      return "OTHER";
  }
  return "OTHER";
}

Pos parse_pos(const std::string& s) {
  if (s == "NOUN") return Pos::kNoun;
  if (s == "PROPN") return Pos::kPropn;
  if (s == "ADJ") return Pos::kAdj;
  if (s == "VERB") return Pos::kVerb;
  return Pos::kOther;
}

Pos coarse_pos(const std::string& upos) {
  if (upos == "NOUN") return Pos::kNoun;
  if (upos == "PROPN") return Pos::kPropn;
  if (upos == "ADJ") return Pos::kAdj;
  if (upos == "VERB" || upos == "AUX") return Pos::kVerb;
  return Pos::kOther;
}

nlohmann::json to_json(const Document& doc) {
  nlohmann::json tokens = nlohmann::json::array();
  for (const Token& t : doc.tokens) {
    nlohmann::json jt{{"text", t.text},
                      {"start", t.start},
                      {"end", t.end},
                      {"lemma", t.lemma},
                      {"pos", to_string(t.pos)}};
    if (!t.upos.empty()) jt["upos"] = t.upos;
    if (!t.morph.empty()) {
      nlohmann::json m = nlohmann::json::object();
      for (const auto& [k, v] : t.morph) m[k] = v;
      jt["morph"] = m;
    }
    if (t.dep_head) jt["dep_head"] = *t.dep_head;
    if (t.dep_rel) jt["dep_rel"] = *t.dep_rel;
    if (t.ner_tag) jt["ner"] = *t.ner_tag;
    tokens.push_back(std::move(jt));
  }
  nlohmann::json j{{"doc_id", doc.doc_id},
                   {"text", doc.text},
                   {"tokens", std::move(tokens)}};
  j["source"] = doc.annotation_source == AnnotationSource::kIngested
                    ? "ingested"
                    : "builtin";
  return j;
}

Document document_from_json(const nlohmann::json& j) {
  Document doc;
  if (!j.contains("doc_id") || !j.contains("text"))
    throw FormatError("document record needs doc_id and text");
  doc.doc_id = j.at("doc_id").get<std::string>();
  doc.text = j.at("text").get<std::string>();
  if (j.contains("source") && j.at("source") == "ingested")
    doc.annotation_source = AnnotationSource::kIngested;
  if (!j.contains("tokens")) return doc;
  for (const auto& jt : j.at("tokens")) {
    Token t;
    t.text = jt.at("text").get<std::string>();
    t.start = jt.at("start").get<std::size_t>();
    t.end = jt.at("end").get<std::size_t>();
    if (jt.contains("lemma")) t.lemma = jt.at("lemma").get<std::string>();
    if (jt.contains("pos")) t.pos = parse_pos(jt.at("pos").get<std::string>());
    if (jt.contains("upos")) t.upos = jt.at("upos").get<std::string>();
    if (jt.contains("morph")) {
      for (auto it = jt.at("morph").begin(); it != jt.at("morph").end(); ++it)
        t.morph.emplace_back(it.key(), it.value().get<std::string>());
    }
    if (jt.contains("dep_head"))
      t.dep_head = jt.at("dep_head").get<std::size_t>();
    if (jt.contains("dep_rel"))
      t.dep_rel = jt.at("dep_rel").get<std::string>();
    if (jt.contains("ner")) t.ner_tag = jt.at("ner").get<std::string>();
    doc.tokens.push_back(std::move(t));
  }
  return doc;
}

}  // namespace tide::textpipe
