#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tide/annotate/mention.hpp"
#include "tide/debias/example.hpp"
#include "tide/embed/embeddings.hpp"
#include "tide/lexicon/lexicon.hpp"

namespace tide::counterfactual {

enum class Method { kAblationKeyword, kAblationAnnotation, kReplacement };

const char* to_string(Method m);

struct Substitution {
  // Code-point offsets into the source text.
  std::size_t start = 0;
  std::size_t end = 0;
  std::string original;
  std::string replacement;  // empty for ablation
};

struct CounterfactualExample {
  std::string source_doc_id;
  std::string variant_id;
  std::string text;
  Method method = Method::kAblationAnnotation;
  std::vector<Substitution> substitutions;
  // Labels travel with the variant unchanged; the guard keeps them valid.
  std::optional<double> toxicity;
  std::optional<double> identity_attack;
};

// Removes the spans from the text in one pass (right to left, so earlier
// offsets stay valid) and collapses the doubled whitespace each splice
// leaves behind. Text away from the joints is untouched. Overlapping
// spans are a contract error. Always exactly one variant.
CounterfactualExample ablate(
    const std::string& doc_id, const std::string& text,
    std::vector<std::pair<std::size_t, std::size_t>> spans, Method mode);

struct CounterfactualMap {
  lexicon::IdentityGroup group = lexicon::IdentityGroup::kRne;
  // term -> its k least-similar same-group terms, nearest-to-reflection
  // first.
  std::map<std::string, std::vector<std::string>> replacements;
  std::size_t oov_skipped = 0;
};

// Builds the group subspace and ranks every member's replacement list.
// `exclude_same_subgroup` drops candidates sharing a subgroup with the
// key term.
CounterfactualMap build_counterfactual_map(
    const lexicon::Lexicon& lex, const embed::EmbeddingTable& table,
    lexicon::IdentityGroup group, std::size_t k,
    bool exclude_same_subgroup = false, std::ostream* diag = nullptr);

struct GuardConfig {
  double threshold = 0.5;
  // Skip examples whose identity_attack clears the threshold (the
  // default); flipping this generates only for such examples instead.
  bool skip_at_or_above = true;

  bool allows(const debias::LabeledExample& ex) const {
    if (!ex.identity_attack) return true;
    bool high = *ex.identity_attack >= threshold;
    return skip_at_or_above ? !high : high;
  }
};

// Variant j (1-based) swaps every KEPT mention for the j-th entry of its
// term's replacement list; mentions without a mapping keep their original
// text, recorded as an identity substitution. Emits min(k, deepest
// available rank) variants; guard-failing examples emit none.
std::vector<CounterfactualExample> generate_replacements(
    const debias::LabeledExample& ex,
    const std::vector<annotate::Mention>& mentions,
    const CounterfactualMap& cfmap, std::size_t k, const GuardConfig& guard);

// Fraction of aligned positions whose binary labels differ.
double flip_rate(const std::vector<int>& a, const std::vector<int>& b);

inline double flip_rate_diff(double treated, double base) {
  return treated - base;
}

// Scores keyed by (doc_id, variant_id); originals use an empty variant
// id. JSONL rows: {doc_id, variant_id?, score}.
struct PredictionSet {
  std::map<std::pair<std::string, std::string>, double> scores;
};

PredictionSet load_predictions(std::istream& in);
PredictionSet load_predictions(const std::string& path);

struct FlipSlice {
  std::size_t pairs = 0;
  double base_rate = 0.0;
  double treated_rate = 0.0;
  double diff = 0.0;
};

struct FlipReport {
  FlipSlice overall;
  std::map<std::string, FlipSlice> subgroups;
};

// Pairs every counterfactual prediction with its original in both sets
// (the sets must cover the same pairs), binarizes at `threshold`, and
// reports flip-rate differences overall and per subgroup when a doc ->
// subgroup map is given.
FlipReport flip_report(const PredictionSet& base,
                       const PredictionSet& treated,
                       const std::map<std::string, std::string>& subgroup_of,
                       double threshold = 0.5);

nlohmann::json counterfactual_to_json(const CounterfactualExample& c);
nlohmann::json flip_report_to_json(const FlipReport& r);

}  // namespace tide::counterfactual
