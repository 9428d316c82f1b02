#include "tide/debias/debias.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "tide/common/csv.hpp"
#include "tide/common/error.hpp"
#include "tide/common/text.hpp"

namespace tide::debias {

const char* to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "TRAIN";
    case Split::kTest: return "TEST";
    case Split::kUnsplit: return "UNSPLIT";
  }
  return "UNSPLIT";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kOrganic: return "ORGANIC";
    case Provenance::kSourced: return "SOURCED";
    case Provenance::kCounterfactual: return "COUNTERFACTUAL";
  }
  return "ORGANIC";
}

namespace {

std::optional<double> parse_label(const std::string& raw,
                                  std::size_t line) {
  std::string t = text::trim(raw);
  if (t.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw FormatError("corpus: line " + std::to_string(line) +
                      ": label '" + raw + "' is not a number");
  }
}

void apply_agreement_rule(LabeledExample& ex,
                          std::optional<double> agreement,
                          double threshold) {
  if (!agreement) return;
  if (*agreement > threshold) return;  // strictly greater survives
  ex.toxicity.reset();
  ex.identity_attack.reset();
  ex.gold_subgroups.clear();
}

std::vector<LabeledExample> ingest_csv(std::istream& in,
                                       const IngestOptions& opt) {
  const CorpusColumns& c = opt.columns;
  std::vector<LabeledExample> out;
  std::map<std::string, std::size_t> col;
  bool have_header = false;
  csv::read(in, [&](const std::vector<std::string>& row, std::size_t line) {
    if (!have_header) {
      for (std::size_t i = 0; i < row.size(); ++i) col[row[i]] = i;
      if (!col.count(c.text))
        throw FormatError("corpus: no '" + c.text + "' column in header");
      have_header = true;
      return;
    }
    auto field = [&](const std::string& name) -> std::optional<std::string> {
      auto it = col.find(name);
      if (it == col.end() || it->second >= row.size()) return std::nullopt;
      return row[it->second];
    };
    LabeledExample ex;
    auto id = field(c.id);
    ex.doc_id = id && !id->empty()
                    ? *id
                    : "row" + std::to_string(out.size() + 1);
    ex.text = text::to_lower(*field(c.text));
    if (auto v = field(c.toxicity)) ex.toxicity = parse_label(*v, line);
    if (auto v = field(c.identity_attack))
      ex.identity_attack = parse_label(*v, line);
    if (auto v = field(c.subgroups))
      for (const std::string& s : text::split(*v, ';'))
        if (!text::trim(s).empty()) ex.gold_subgroups.insert(text::trim(s));
    std::optional<double> agreement;
    if (auto v = field(c.agreement)) agreement = parse_label(*v, line);
    apply_agreement_rule(ex, agreement, opt.agreement_threshold);
    if (!ex.toxicity && opt.assume_nontoxic) ex.toxicity = 0.0;
    out.push_back(std::move(ex));
  });
  return out;
}

std::vector<LabeledExample> ingest_jsonl(std::istream& in,
                                         const IngestOptions& opt) {
  const CorpusColumns& c = opt.columns;
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("corpus: line " + std::to_string(line_no) + ": " +
                        e.what());
    }
    if (!j.contains(c.text))
      throw FormatError("corpus: line " + std::to_string(line_no) +
                        " has no '" + c.text + "' field");
    LabeledExample ex;
    ex.doc_id = j.value(c.id, "row" + std::to_string(out.size() + 1));
    ex.text = text::to_lower(j[c.text].get<std::string>());
    if (j.contains(c.toxicity) && !j[c.toxicity].is_null())
      ex.toxicity = j[c.toxicity].get<double>();
    if (j.contains(c.identity_attack) && !j[c.identity_attack].is_null())
      ex.identity_attack = j[c.identity_attack].get<double>();
    if (j.contains(c.subgroups))
      for (const auto& s : j[c.subgroups])
        ex.gold_subgroups.insert(s.get<std::string>());
    std::optional<double> agreement;
    if (j.contains(c.agreement) && !j[c.agreement].is_null())
      agreement = j[c.agreement].get<double>();
    apply_agreement_rule(ex, agreement, opt.agreement_threshold);
    if (!ex.toxicity && opt.assume_nontoxic) ex.toxicity = 0.0;
    out.push_back(std::move(ex));
  }
  return out;
}

// Shuffle with an explicit Fisher-Yates so the partition is identical
// across standard libraries (distribution classes are not portable).
uint32_t bounded(std::mt19937_64& rng, uint32_t n) {
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<uint32_t>(x % n);
}

}  // namespace

std::vector<LabeledExample> ingest_labeled_corpus(std::istream& in,
                                                  const IngestOptions& opt,
                                                  bool jsonl) {
  return jsonl ? ingest_jsonl(in, opt) : ingest_csv(in, opt);
}

std::vector<LabeledExample> ingest_labeled_corpus(const std::string& path,
                                                  const IngestOptions& opt) {
  std::ifstream in(path);
  if (!in) throw FormatError("corpus: cannot open '" + path + "'");
  bool jsonl = path.size() > 6 && path.rfind(".jsonl") == path.size() - 6;
  return ingest_labeled_corpus(in, opt, jsonl);
}

std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>>
split_corpus(std::vector<LabeledExample> examples, uint64_t seed) {
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[bounded(rng, static_cast<uint32_t>(i))]);

  std::size_t test_size = examples.size() / 4;
  std::vector<LabeledExample> train, test;
  for (std::size_t i = 0; i < order.size(); ++i) {
    LabeledExample ex = std::move(examples[order[i]]);
    if (i < test_size) {
      ex.split = Split::kTest;
      test.push_back(std::move(ex));
    } else {
      ex.split = Split::kTrain;
      train.push_back(std::move(ex));
    }
  }
  return {std::move(train), std::move(test)};
}

SourcingResult source_balancing_examples(
    const std::vector<LabeledExample>& supplement,
    const std::function<std::set<std::string>(const LabeledExample&)>&
        subgroups_of,
    const std::string& subgroup, std::size_t deficit,
    double toxicity_threshold) {
  SourcingResult out;
  for (const LabeledExample& ex : supplement) {
    if (out.examples.size() == deficit) break;
    if (ex.toxicity && *ex.toxicity >= toxicity_threshold) continue;
    if (!ex.toxicity) continue;  // unlabeled: ingest with assume_nontoxic
    if (!subgroups_of(ex).count(subgroup)) continue;
    out.examples.push_back(ex);
  }
  out.shortfall = deficit - out.examples.size();
  return out;
}

AugmentedDataset assemble_augmented(
    const std::vector<LabeledExample>& organic,
    const std::vector<LabeledExample>& sourced,
    const std::vector<counterfactual::CounterfactualExample>&
        counterfactuals,
    const metrics::SubgroupsOf& subgroup_of, double threshold) {
  AugmentedDataset out;
  std::unordered_set<std::string> seen_text;

  for (const LabeledExample& ex : organic) {
    seen_text.insert(ex.text);
    out.examples.push_back(ex);
    out.manifest.push_back({ex.doc_id, Provenance::kOrganic, ""});
  }
  for (const LabeledExample& ex : sourced) {
    if (!seen_text.insert(ex.text).second) {
      ++out.duplicates_dropped;
      continue;
    }
    out.examples.push_back(ex);
    out.manifest.push_back({ex.doc_id, Provenance::kSourced, ""});
  }
  for (const auto& cf : counterfactuals) {
    if (!seen_text.insert(cf.text).second) {
      ++out.duplicates_dropped;
      continue;
    }
    LabeledExample ex;
    ex.doc_id = cf.source_doc_id + "#" + cf.variant_id;
    ex.text = cf.text;
    ex.toxicity = cf.toxicity;
    ex.identity_attack = cf.identity_attack;
    out.examples.push_back(std::move(ex));
    out.manifest.push_back(
        {cf.source_doc_id + "#" + cf.variant_id,
         Provenance::kCounterfactual, cf.source_doc_id});
  }
  out.rates = metrics::toxicity_rates(out.examples, subgroup_of, threshold);
  return out;
}

std::vector<Template> load_templates(std::istream& in) {
  std::vector<Template> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("templates: line " + std::to_string(line_no) +
                        ": " + e.what());
    }
    if (!j.contains("template_id") || !j.contains("pattern"))
      throw FormatError("templates: line " + std::to_string(line_no) +
                        " needs template_id and pattern");
    out.push_back({j["template_id"].get<std::string>(),
                   j["pattern"].get<std::string>()});
  }
  return out;
}

std::vector<Template> load_templates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("templates: cannot open '" + path + "'");
  return load_templates(in);
}

namespace {

// Placeholder names appearing in the pattern; nullopt on malformed
// braces or an unknown name.
std::optional<std::set<std::string>> scan_placeholders(
    const std::string& pattern) {
  std::set<std::string> found;
  std::size_t pos = 0;
  while ((pos = pattern.find('{', pos)) != std::string::npos) {
    std::size_t close = pattern.find('}', pos);
    if (close == std::string::npos) return std::nullopt;
    std::string name = pattern.substr(pos + 1, close - pos - 1);
    if (name != "identity_term" && name != "person_noun")
      return std::nullopt;
    found.insert(name);
    pos = close + 1;
  }
  if (pattern.find('}') < pattern.find('{')) return std::nullopt;
  return found;
}

std::string substitute(std::string pattern, const std::string& name,
                       const std::string& value) {
  std::string needle = "{" + name + "}";
  std::size_t pos = 0;
  while ((pos = pattern.find(needle, pos)) != std::string::npos) {
    pattern.replace(pos, needle.size(), value);
    pos += value.size();
  }
  return pattern;
}

}  // namespace

TemplateExpansion expand_templates(
    const std::vector<Template>& templates, const lexicon::Lexicon& lex,
    const std::set<lexicon::IdentityGroup>& groups,
    const lexicon::PersonNounLexicon* person_nouns, bool heads_only,
    std::ostream* diag) {
  // (surface, entry id, subgroups) per selected entry, surface-sorted.
  struct TermRow {
    std::string surface, entry_id;
    std::set<std::string> subgroups;
  };
  std::vector<TermRow> terms;
  for (const auto& entry : lex.entries()) {
    if (heads_only && !entry.is_head) continue;
    TermRow row{entry.surface, entry.id, {}};
    bool in_filter = false;
    for (const auto* s : lex.senses_of(entry)) {
      if (!groups.empty() && !groups.count(s->group)) continue;
      in_filter = true;
      if (!s->subgroup.empty()) row.subgroups.insert(s->subgroup);
    }
    if (in_filter) terms.push_back(std::move(row));
  }
  std::sort(terms.begin(), terms.end(),
            [](const TermRow& a, const TermRow& b) {
              if (a.surface != b.surface) return a.surface < b.surface;
              return a.entry_id < b.entry_id;
            });

  std::vector<std::string> people;
  if (person_nouns) {
    people.assign(person_nouns->terms().begin(),
                  person_nouns->terms().end());
    std::sort(people.begin(), people.end());
  }

  TemplateExpansion out;
  for (const Template& t : templates) {
    auto placeholders = scan_placeholders(t.pattern);
    if (!placeholders || placeholders->empty()) {
      if (diag)
        *diag << "templates: '" << t.template_id
              << "' skipped: no well-formed placeholder\n";
      out.skipped_templates.push_back(t.template_id);
      continue;
    }
    bool wants_person = placeholders->count("person_noun") > 0;
    bool wants_term = placeholders->count("identity_term") > 0;
    if ((wants_term && terms.empty()) || (wants_person && people.empty())) {
      if (diag)
        *diag << "templates: '" << t.template_id
              << "' skipped: empty substitution set\n";
      out.skipped_templates.push_back(t.template_id);
      continue;
    }

    auto emit = [&](const TermRow* term, const std::string* person) {
      std::string text = t.pattern;
      LabeledExample ex;
      ex.doc_id = t.template_id;
      if (term) {
        text = substitute(std::move(text), "identity_term", term->surface);
        ex.doc_id += "__" + term->entry_id;
        ex.gold_subgroups = term->subgroups;
      }
      if (person) {
        text = substitute(std::move(text), "person_noun", *person);
        ex.doc_id += "__" + *person;
      }
      ex.text = std::move(text);
      out.examples.push_back(std::move(ex));
    };

    if (wants_term && wants_person) {
      for (const TermRow& term : terms)
        for (const std::string& person : people) emit(&term, &person);
    } else if (wants_term) {
      for (const TermRow& term : terms) emit(&term, nullptr);
    } else {
      for (const std::string& person : people) emit(nullptr, &person);
    }
  }
  return out;
}

nlohmann::json example_to_json(const LabeledExample& ex) {
  nlohmann::json j{{"doc_id", ex.doc_id}, {"text", ex.text}};
  if (ex.toxicity) j["toxicity"] = *ex.toxicity;
  if (ex.identity_attack) j["identity_attack"] = *ex.identity_attack;
  if (!ex.gold_subgroups.empty()) j["subgroups"] = ex.gold_subgroups;
  if (ex.split != Split::kUnsplit) j["split"] = to_string(ex.split);
  return j;
}

LabeledExample example_from_json(const nlohmann::json& j) {
  LabeledExample ex;
  ex.doc_id = j.value("doc_id", "");
  ex.text = j.value("text", "");
  if (j.contains("toxicity") && !j["toxicity"].is_null())
    ex.toxicity = j["toxicity"].get<double>();
  if (j.contains("identity_attack") && !j["identity_attack"].is_null())
    ex.identity_attack = j["identity_attack"].get<double>();
  if (j.contains("subgroups"))
    for (const auto& s : j["subgroups"])
      ex.gold_subgroups.insert(s.get<std::string>());
  return ex;
}

nlohmann::json manifest_to_json(const AugmentedDataset& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : d.manifest) {
    nlohmann::json row{{"doc_id", m.doc_id},
                       {"provenance", to_string(m.provenance)}};
    if (!m.source_doc_id.empty()) row["source_doc_id"] = m.source_doc_id;
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", rows},
                        {"duplicates_dropped", d.duplicates_dropped},
                        {"rates", metrics::fairness_report_to_json(d.rates)}};
}

}  // namespace tide::debias
