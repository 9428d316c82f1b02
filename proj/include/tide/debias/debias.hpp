#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tide/counterfactual/counterfactual.hpp"
#include "tide/debias/example.hpp"
#include "tide/lexicon/lexicon.hpp"
#include "tide/lexicon/person_nouns.hpp"
#include "tide/metrics/fairness.hpp"

namespace tide::debias {

// Column (CSV) or key (JSONL) names for corpus ingestion; empty text
// mapping is rejected, everything else is optional in the data.
struct CorpusColumns {
  std::string id = "id";
  std::string text = "text";
  std::string toxicity = "toxicity";
  std::string identity_attack = "identity_attack";
  std::string agreement = "agreement";
  std::string subgroups = "subgroups";  // ';'-separated in CSV
};

struct IngestOptions {
  CorpusColumns columns;
  // Labels survive only where rater agreement is strictly greater.
  double agreement_threshold = 0.5;
  // Treat rows without a toxicity label as non-toxic (supplement corpora
  // sourced from reference text carry no labels).
  bool assume_nontoxic = false;
};

// CSV (with header) or JSONL, chosen by extension or `jsonl` flag. Text
// is lower-cased on the way in; rows whose agreement fails the threshold
// keep their text but lose their labels.
std::vector<LabeledExample> ingest_labeled_corpus(std::istream& in,
                                                  const IngestOptions& opt,
                                                  bool jsonl);
std::vector<LabeledExample> ingest_labeled_corpus(const std::string& path,
                                                  const IngestOptions& opt);

// Seeded shuffle, then test takes floor(n/4) and train the rest.
std::pair<std::vector<LabeledExample>, std::vector<LabeledExample>>
split_corpus(std::vector<LabeledExample> examples, uint64_t seed);

struct SourcingResult {
  std::vector<LabeledExample> examples;
  std::size_t shortfall = 0;
};

// Walks the supplement in corpus order and takes up to `deficit`
// non-toxic examples annotated with the wanted subgroup. The annotator is
// injected as a callable so this stays decoupled from parsing choices.
SourcingResult source_balancing_examples(
    const std::vector<LabeledExample>& supplement,
    const std::function<std::set<std::string>(const LabeledExample&)>&
        subgroups_of,
    const std::string& subgroup, std::size_t deficit,
    double toxicity_threshold = 0.5);

enum class Provenance { kOrganic, kSourced, kCounterfactual };

const char* to_string(Provenance p);

struct ManifestRow {
  std::string doc_id;
  Provenance provenance = Provenance::kOrganic;
  std::string source_doc_id;  // for counterfactual rows
};

struct AugmentedDataset {
  std::vector<LabeledExample> examples;
  std::vector<ManifestRow> manifest;  // parallel to examples
  metrics::FairnessReport rates;      // recomputed after assembly
  std::size_t duplicates_dropped = 0;
};

// Organic examples pass through untouched; sourced and counterfactual
// additions append behind them, deduplicated by exact text against
// everything already admitted.
AugmentedDataset assemble_augmented(
    const std::vector<LabeledExample>& organic,
    const std::vector<LabeledExample>& sourced,
    const std::vector<counterfactual::CounterfactualExample>&
        counterfactuals,
    const metrics::SubgroupsOf& subgroup_of = nullptr,
    double threshold = 0.5);

struct Template {
  std::string template_id;
  std::string pattern;  // contains {identity_term}, maybe {person_noun}
};

// JSONL rows {template_id, pattern}.
std::vector<Template> load_templates(std::istream& in);
std::vector<Template> load_templates(const std::string& path);

struct TemplateExpansion {
  std::vector<LabeledExample> examples;
  std::vector<std::string> skipped_templates;
};

// Cartesian product of templates x selected identity terms (head entries
// by default) x person nouns when the pattern asks for one. Templates
// with malformed placeholders or an empty substitution set are skipped
// with a warning on `diag`.
TemplateExpansion expand_templates(
    const std::vector<Template>& templates, const lexicon::Lexicon& lex,
    const std::set<lexicon::IdentityGroup>& groups,  // empty = all groups
    const lexicon::PersonNounLexicon* person_nouns,
    bool heads_only = true, std::ostream* diag = nullptr);

nlohmann::json example_to_json(const LabeledExample& ex);
LabeledExample example_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const AugmentedDataset& d);

}  // namespace tide::debias
