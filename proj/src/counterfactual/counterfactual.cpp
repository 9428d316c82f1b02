#include "tide/counterfactual/counterfactual.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "tide/common/error.hpp"
#include "tide/common/text.hpp"

namespace tide::counterfactual {

const char* to_string(Method m) {
  switch (m) {
    case Method::kAblationKeyword: return "ABLATION_KEYWORD";
    case Method::kAblationAnnotation: return "ABLATION_ANNOTATION";
    case Method::kReplacement: return "REPLACEMENT";
  }
  return "REPLACEMENT";
}

namespace {

bool is_space_byte(char c) { return text::is_ascii_space(c); }

// Removes [start, end) bytes and then swallows the doubled (or dangling
// edge) whitespace the cut leaves behind.
void splice_out(std::string& s, std::size_t start, std::size_t end) {
  s.erase(start, end - start);
  bool left_space = start > 0 && is_space_byte(s[start - 1]);
  bool right_space = start < s.size() && is_space_byte(s[start]);
  if (right_space && (left_space || start == 0))
    s.erase(start, 1);
  else if (left_space && start == s.size())
    s.erase(start - 1, 1);
}

void check_non_overlapping(
    const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
  for (std::size_t i = 1; i < spans.size(); ++i)
    if (spans[i].first < spans[i - 1].second)
      throw ContractError("counterfactual: spans overlap at " +
                          std::to_string(spans[i].first));
}

}  // namespace

CounterfactualExample ablate(
    const std::string& doc_id, const std::string& text,
    std::vector<std::pair<std::size_t, std::size_t>> spans, Method mode) {
  if (mode == Method::kReplacement)
    throw ContractError("ablate: mode must be an ablation method");
  std::sort(spans.begin(), spans.end());
  check_non_overlapping(spans);

  text::CharMap map(text);
  CounterfactualExample out;
  out.source_doc_id = doc_id;
  out.variant_id = "a1";
  out.method = mode;
  out.text = text;
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    std::size_t b0 = map.byte_at(it->first);
    std::size_t b1 = map.byte_at(it->second);
    Substitution sub;
    sub.start = it->first;
    sub.end = it->second;
    sub.original = text.substr(b0, b1 - b0);
    out.substitutions.push_back(std::move(sub));
    splice_out(out.text, b0, b1);
  }
  std::reverse(out.substitutions.begin(), out.substitutions.end());
  return out;
}

CounterfactualMap build_counterfactual_map(
    const lexicon::Lexicon& lex, const embed::EmbeddingTable& table,
    lexicon::IdentityGroup group, std::size_t k, bool exclude_same_subgroup,
    std::ostream* diag) {
  CounterfactualMap out;
  out.group = group;
  embed::Subspace sub = embed::build_subspace(lex, table, group,
                                              &out.oov_skipped);
  if (k == 0 && diag)
    *diag << "counterfactual map: k = 0 yields empty replacement lists\n";

  // Subgroups per surface, for the strict cross-subgroup mode.
  std::map<std::string, std::set<std::string>> subgroups_of;
  if (exclude_same_subgroup) {
    for (const auto& entry : lex.entries())
      for (const auto* s : lex.senses_of(entry))
        if (s->group == group)
          subgroups_of[entry.surface].insert(s->subgroup);
  }

  for (const std::string& term : sub.member_terms) {
    // Rank deep enough to survive same-subgroup exclusion.
    auto ranked = embed::least_similar(term, sub, sub.member_terms.size());
    std::vector<std::string> picks;
    for (const auto& [cand, dist] : ranked) {
      if (picks.size() == k) break;
      if (exclude_same_subgroup) {
        const auto& mine = subgroups_of[term];
        const auto& theirs = subgroups_of[cand];
        bool shared = std::any_of(mine.begin(), mine.end(),
                                  [&](const std::string& sg) {
                                    return theirs.count(sg) > 0;
                                  });
        if (shared) continue;
      }
      picks.push_back(cand);
    }
    out.replacements[term] = std::move(picks);
  }
  return out;
}

std::vector<CounterfactualExample> generate_replacements(
    const debias::LabeledExample& ex,
    const std::vector<annotate::Mention>& mentions,
    const CounterfactualMap& cfmap, std::size_t k,
    const GuardConfig& guard) {
  if (!guard.allows(ex)) return {};

  struct Site {
    std::size_t start, end;
    std::string original;
    const std::vector<std::string>* candidates;  // null = no mapping
  };
  std::vector<Site> sites;
  std::size_t deepest = 0;
  for (const auto& m : mentions) {
    if (!m.kept()) continue;
    Site s{m.start, m.end, m.matched_text, nullptr};
    auto it = cfmap.replacements.find(lexicon::normalize_term(m.matched_text));
    if (it != cfmap.replacements.end() && !it->second.empty()) {
      s.candidates = &it->second;
      deepest = std::max(deepest, it->second.size());
    }
    sites.push_back(std::move(s));
  }
  std::sort(sites.begin(), sites.end(),
            [](const Site& a, const Site& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (sites[i].start < sites[i - 1].end)
      throw ContractError("replacement: mention spans overlap at " +
                          std::to_string(sites[i].start));

  std::vector<CounterfactualExample> out;
  text::CharMap map(ex.text);
  for (std::size_t j = 1; j <= std::min(k, deepest); ++j) {
    CounterfactualExample var;
    var.source_doc_id = ex.doc_id;
    var.variant_id = "r" + std::to_string(j);
    var.method = Method::kReplacement;
    var.text = ex.text;
    var.toxicity = ex.toxicity;
    var.identity_attack = ex.identity_attack;
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
      const std::string& repl =
          it->candidates && it->candidates->size() >= j
              ? (*it->candidates)[j - 1]
              : it->original;
      std::size_t b0 = map.byte_at(it->start);
      std::size_t b1 = map.byte_at(it->end);
      var.text.replace(b0, b1 - b0, repl);
      Substitution sub;
      sub.start = it->start;
      sub.end = it->end;
      sub.original = it->original;
      sub.replacement = repl;
      var.substitutions.push_back(std::move(sub));
    }
    std::reverse(var.substitutions.begin(), var.substitutions.end());
    out.push_back(std::move(var));
  }
  return out;
}

double flip_rate(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw ContractError("flip rate: prediction lists differ in length");
  if (a.empty()) return 0.0;
  std::size_t flips = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] != 0) != (b[i] != 0)) ++flips;
  return static_cast<double>(flips) / static_cast<double>(a.size());
}

PredictionSet load_predictions(std::istream& in) {
  PredictionSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("predictions: line " + std::to_string(line_no) +
                        ": " + e.what());
    }
    if (!j.contains("doc_id") || !j.contains("score"))
      throw FormatError("predictions: line " + std::to_string(line_no) +
                        " needs doc_id and score");
    std::string variant = j.value("variant_id", std::string());
    out.scores[{j["doc_id"].get<std::string>(), variant}] =
        j["score"].get<double>();
  }
  return out;
}

PredictionSet load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("predictions: cannot open '" + path + "'");
  return load_predictions(in);
}

FlipReport flip_report(const PredictionSet& base,
                       const PredictionSet& treated,
                       const std::map<std::string, std::string>& subgroup_of,
                       double threshold) {
  auto pairs_of = [](const PredictionSet& s) {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& [key, score] : s.scores)
      if (!key.second.empty()) keys.push_back(key);
    return keys;
  };
  auto base_pairs = pairs_of(base);
  auto treated_pairs = pairs_of(treated);
  if (base_pairs != treated_pairs)
    throw ContractError(
        "flip report: base and treated predictions cover different "
        "(doc, variant) pairs");

  auto binary = [threshold](double score) { return score >= threshold; };
  struct Tally {
    std::size_t pairs = 0, base_flips = 0, treated_flips = 0;
  };
  Tally overall;
  std::map<std::string, Tally> slices;

  for (const auto& key : base_pairs) {
    auto orig_key = std::make_pair(key.first, std::string());
    auto bo = base.scores.find(orig_key);
    auto to = treated.scores.find(orig_key);
    if (bo == base.scores.end() || to == treated.scores.end())
      throw ContractError("flip report: no original prediction for doc '" +
                          key.first + "'");
    bool base_flip = binary(bo->second) != binary(base.scores.at(key));
    bool treated_flip = binary(to->second) != binary(treated.scores.at(key));
    auto bump = [&](Tally& t) {
      ++t.pairs;
      if (base_flip) ++t.base_flips;
      if (treated_flip) ++t.treated_flips;
    };
    bump(overall);
    auto sg = subgroup_of.find(key.first);
    if (sg != subgroup_of.end()) bump(slices[sg->second]);
  }

  auto close = [](const Tally& t) {
    FlipSlice s;
    s.pairs = t.pairs;
    if (t.pairs > 0) {
      s.base_rate = static_cast<double>(t.base_flips) / t.pairs;
      s.treated_rate = static_cast<double>(t.treated_flips) / t.pairs;
    }
    s.diff = flip_rate_diff(s.treated_rate, s.base_rate);
    return s;
  };
  FlipReport report;
  report.overall = close(overall);
  for (const auto& [name, tally] : slices)
    report.subgroups[name] = close(tally);
  return report;
}

nlohmann::json counterfactual_to_json(const CounterfactualExample& c) {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : c.substitutions) {
    nlohmann::json row{{"start", s.start},
                       {"end", s.end},
                       {"original", s.original}};
    if (!s.replacement.empty()) row["replacement"] = s.replacement;
    subs.push_back(std::move(row));
  }
  return nlohmann::json{{"source_doc_id", c.source_doc_id},
                        {"variant_id", c.variant_id},
                        {"method", to_string(c.method)},
                        {"text", c.text},
                        {"substitutions", subs}};
}

nlohmann::json flip_report_to_json(const FlipReport& r) {
  auto cell = [](const FlipSlice& s) {
    return nlohmann::json{{"pairs", s.pairs},
                          {"base_rate", s.base_rate},
                          {"treated_rate", s.treated_rate},
                          {"diff", s.diff}};
  };
  nlohmann::json subgroups = nlohmann::json::object();
  for (const auto& [name, slice] : r.subgroups)
    subgroups[name] = cell(slice);
  return nlohmann::json{{"overall", cell(r.overall)},
                        {"subgroups", subgroups}};
}

}  // namespace tide::counterfactual
