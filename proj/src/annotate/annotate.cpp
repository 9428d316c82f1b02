#include "tide/annotate/annotate.hpp"

#include <algorithm>
#include <string_view>

#include "tide/common/error.hpp"

namespace tide::annotate {

namespace {

using textpipe::Pos;
using textpipe::Token;

bool is_noun(const Token& t) {
  return t.pos == Pos::kNoun || t.pos == Pos::kPropn;
}

bool person_like_entity(const Token& t) {
  if (!t.ner_tag) return false;
  std::string_view tag = *t.ner_tag;
  if (tag.size() > 2 && (tag[1] == '-') && (tag[0] == 'B' || tag[0] == 'I'))
    tag.remove_prefix(2);
  return tag == "PERSON" || tag == "NORP" || tag == "GPE";
}

// Tokens fully inside the mention span; empty for substring hits that cut
// through a word.
std::vector<std::size_t> tokens_within(const textpipe::Document& doc,
                                       const Mention& m) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    if (t.start >= m.start && t.end <= m.end) ids.push_back(i);
  }
  return ids;
}

// Person test on one token. Empty optional = no evidence either way.
std::optional<bool> is_person_noun(
    const Token& t, const lexicon::PersonNounLexicon* person_nouns,
    PersonFilter filter, double threshold,
    const embed::EmbeddingTable* embeddings) {
  if (filter == PersonFilter::kSimilarity) {
    auto v = embeddings->term_vector(!t.lemma.empty() ? t.lemma : t.text);
    if (!v) return std::nullopt;
    auto person = embed::mean_cosine(*v, *embeddings, {"person", "people"});
    auto object = embed::mean_cosine(*v, *embeddings, {"object", "thing"});
    if (!person || !object) return std::nullopt;
    return *person > *object && *person >= threshold;
  }
  if (!person_nouns || person_nouns->empty()) return std::nullopt;
  if (person_nouns->contains(lexicon::normalize_term(t.text))) return true;
  std::string lemma = lexicon::normalize_term(t.lemma);
  if (!lemma.empty() && person_nouns->contains(lemma)) return true;
  return false;
}

}  // namespace

std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions) {
  // Pick winning spans longest-first (ties to the leftmost), then keep
  // every mention on a winning span.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (const Mention& m : mentions) spans.emplace_back(m.start, m.end);
  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());

  std::stable_sort(spans.begin(), spans.end(),
                   [](const auto& a, const auto& b) {
                     std::size_t la = a.second - a.first;
                     std::size_t lb = b.second - b.first;
                     if (la != lb) return la > lb;
                     return a.first < b.first;
                   });
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  for (const auto& s : spans) {
    bool clash = false;
    for (const auto& c : chosen)
      if (s.first < c.second && c.first < s.second) {
        clash = true;
        break;
      }
    if (!clash) chosen.push_back(s);
  }

  std::vector<Mention> out;
  for (Mention& m : mentions)
    if (std::find(chosen.begin(), chosen.end(),
                  std::make_pair(m.start, m.end)) != chosen.end())
      out.push_back(std::move(m));
  return out;
}

std::vector<Mention> apply_person_rules(
    std::vector<Mention> mentions, const textpipe::Document& doc,
    const lexicon::PersonNounLexicon* person_nouns,
    const AnnotatorConfig& config,
    const embed::EmbeddingTable* embeddings) {
  if (config.person_filter == PersonFilter::kNone &&
      !config.use_dependency_rule)
    return mentions;
  if (config.person_filter == PersonFilter::kSimilarity && !embeddings)
    throw ContractError(
        "person filter SIMILARITY requires an embedding table");

  Verdict direct_fail = config.person_filter == PersonFilter::kSimilarity
                            ? Verdict::kFilteredSimilarity
                            : Verdict::kFilteredPersonLexicon;

  for (Mention& m : mentions) {
    std::vector<std::size_t> ids = tokens_within(doc, m);
    if (ids.empty()) continue;  // no aligned tokens: keep

    if (config.use_ner_rule) {
      bool entity = false;
      for (std::size_t i : ids)
        entity = entity || person_like_entity(doc.tokens[i]);
      if (entity) continue;
    }

    // The span's last token anchors the phrase ("gay man" -> "man").
    std::size_t anchor = ids.back();
    const Token* t = &doc.tokens[anchor];

    if (is_noun(*t) && config.person_filter != PersonFilter::kNone) {
      auto person = is_person_noun(*t, person_nouns, config.person_filter,
                                   config.similarity_threshold, embeddings);
      if (person && !*person) m.verdict = direct_fail;
      continue;
    }

    if (!config.use_dependency_rule) continue;

    // Modifier path: climb conjunction edges to the first conjunct, then
    // judge the dependency head.
    const Token* cur = t;
    while (cur->dep_rel && *cur->dep_rel == "conj" && cur->dep_head)
      cur = &doc.tokens[*cur->dep_head];
    if (!cur->dep_head) continue;  // no parse information: keep
    const Token* head = &doc.tokens[*cur->dep_head];
    while (head->dep_rel && *head->dep_rel == "conj" && head->dep_head)
      head = &doc.tokens[*head->dep_head];
    if (!is_noun(*head)) continue;  // non-nominal head: no evidence

    auto person = is_person_noun(*head, person_nouns, config.person_filter,
                                 config.similarity_threshold, embeddings);
    if (person && !*person) m.verdict = Verdict::kFilteredDependency;
  }
  return mentions;
}

std::vector<Mention> annotate(const textpipe::Document& doc,
                              const lexicon::Lexicon& lex,
                              const AnnotatorConfig& config,
                              const Resources& res) {
  std::vector<Mention> mentions;
  switch (config.technique) {
    case Technique::kSubstring:
      mentions = res.substring ? res.substring->find(doc)
                               : match_substring(doc, lex);
      break;
    case Technique::kExact:
      mentions = match_exact(doc, lex);
      break;
    case Technique::kLemma:
      mentions = match_lemma(doc, lex);
      break;
  }
  mentions = resolve_overlaps(std::move(mentions));
  mentions = apply_person_rules(std::move(mentions), doc, res.person_nouns,
                                config, res.embeddings);
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) {
              if (a.start != b.start) return a.start < b.start;
              if (a.end != b.end) return a.end < b.end;
              return a.entry_ref < b.entry_ref;
            });
  return mentions;
}

}  // namespace tide::annotate
