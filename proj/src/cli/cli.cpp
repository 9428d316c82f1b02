#include "tide/cli/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tide/annotate/annotate.hpp"
#include "tide/annotate/eval.hpp"
#include "tide/common/error.hpp"
#include "tide/common/parallel.hpp"
#include "tide/common/text.hpp"
#include "tide/counterfactual/counterfactual.hpp"
#include "tide/debias/debias.hpp"
#include "tide/embed/embeddings.hpp"
#include "tide/lexicon/cache.hpp"
#include "tide/lexicon/lexicon.hpp"
#include "tide/lexicon/person_nouns.hpp"
#include "tide/lexicon/stats.hpp"
#include "tide/metrics/agreement.hpp"
#include "tide/metrics/fairness.hpp"
#include "tide/textpipe/conllu.hpp"
#include "tide/textpipe/document.hpp"
#include "tide/textpipe/tokenizer.hpp"

namespace tide::cli {

namespace {

namespace fs = std::filesystem;

struct Opts {
  std::string in_path, out_path, gold_path;
  std::string lexicon_path, embeddings_path, person_nouns_path, conllu_dir;
  bool use_cache = false;

  std::string technique = "exact";
  std::string person_filter = "none";
  bool dependency_rule = false;
  bool ner_rule = false;
  double similarity_threshold = 0.25;

  double threshold = 0.5;  // binarization for labels and predictions
  uint64_t seed = 0;
  unsigned workers = 1;

  std::string mode = "ablate";  // counterfactual: ablate|replace|map|flips
  std::string ablation_source = "annotation";  // keyword|annotation
  std::string group = "rne";
  std::size_t k = 5;
  bool exclude_same_subgroup = false;
  bool guard_keep_high = false;  // invert the identity-attack guard
  double guard_threshold = 0.5;
  std::string base_path, treated_path, slices_path;

  std::string supplement_path, counterfactuals_path, manifest_path;
  double target_rate = -1.0;  // negative: use the overall rate
  bool assume_nontoxic = false;
  double agreement_threshold = 0.5;

  std::string groups_filter;  // comma-separated identity groups
  bool all_forms = false;
  bool check_reference = false;

  debias::CorpusColumns columns;
};

// Data goes to --out or standard output; everything else to stderr.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw FormatError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw FormatError("missing required " + what + " path");
  if (!fs::exists(path))
    throw FormatError(what + " file '" + path + "' does not exist");
}

lexicon::Lexicon load_lexicon_opt(const Opts& o) {
  require_file(o.lexicon_path, "--lexicon");
  return o.use_cache ? lexicon::load_lexicon_cached(o.lexicon_path)
                     : lexicon::load_lexicon(o.lexicon_path);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  for (const std::string& part : text::split(s, ','))
    if (!text::trim(part).empty()) out.push_back(text::trim(part));
  return out;
}

std::set<lexicon::IdentityGroup> parse_groups_filter(const std::string& s) {
  std::set<lexicon::IdentityGroup> out;
  for (const std::string& name : split_csv_list(s)) {
    auto g = lexicon::parse_identity_group(name);
    if (!g) throw FormatError("unknown identity group '" + name + "'");
    out.insert(*g);
  }
  return out;
}

std::vector<nlohmann::json> read_jsonl(const std::string& path,
                                       const std::string& what) {
  require_file(path, what);
  std::ifstream in(path);
  std::vector<nlohmann::json> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      rows.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(what + ": line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return rows;
}

// Shared annotation state for the corpus-level commands.
struct AnnotateState {
  lexicon::Lexicon lex;
  lexicon::PersonNounLexicon person_nouns;
  std::optional<embed::EmbeddingTable> embeddings;
  std::optional<annotate::SubstringMatcher> substring;
  annotate::AnnotatorConfig config;

  annotate::Resources resources() const {
    annotate::Resources r;
    r.person_nouns = &person_nouns;
    r.embeddings = embeddings ? &*embeddings : nullptr;
    r.substring = substring ? &*substring : nullptr;
    return r;
  }
};

AnnotateState make_annotate_state(const Opts& o) {
  AnnotateState st{load_lexicon_opt(o), {}, std::nullopt, std::nullopt, {}};
  st.config.technique = annotate::parse_technique(o.technique);
  st.config.person_filter = annotate::parse_person_filter(o.person_filter);
  st.config.use_dependency_rule = o.dependency_rule;
  st.config.use_ner_rule = o.ner_rule;
  st.config.similarity_threshold = o.similarity_threshold;
  if (!o.person_nouns_path.empty()) {
    require_file(o.person_nouns_path, "--person-nouns");
    st.person_nouns = lexicon::PersonNounLexicon::load(o.person_nouns_path);
  }
  if (!o.embeddings_path.empty()) {
    require_file(o.embeddings_path, "--embeddings");
    st.embeddings = embed::load_embeddings(o.embeddings_path, &std::cerr);
  }
  if (st.config.person_filter == annotate::PersonFilter::kSimilarity &&
      !st.embeddings)
    throw FormatError(
        "--person-filter similarity requires --embeddings");
  if (st.config.person_filter == annotate::PersonFilter::kLexicon &&
      st.person_nouns.empty())
    throw FormatError("--person-filter lexicon requires --person-nouns");
  if (st.config.technique == annotate::Technique::kSubstring)
    st.substring.emplace(st.lex);
  return st;
}

textpipe::Document doc_from_row(const nlohmann::json& j,
                                const AnnotateState& st,
                                const std::string& conllu_dir) {
  if (j.contains("tokens")) return textpipe::document_from_json(j);
  if (!j.contains("doc_id") || !j.contains("text"))
    throw FormatError("corpus row needs doc_id and text");
  std::string doc_id = j["doc_id"].get<std::string>();
  std::string text = j["text"].get<std::string>();
  if (!conllu_dir.empty()) {
    fs::path p = fs::path(conllu_dir) / (doc_id + ".conllu");
    if (fs::exists(p))
      return textpipe::ingest_conllu(doc_id, text, p.string());
  }
  return textpipe::analyze(std::move(doc_id), std::move(text), st.lex,
                           st.person_nouns);
}

int cmd_annotate(const Opts& o) {
  AnnotateState st = make_annotate_state(o);
  std::vector<nlohmann::json> rows = read_jsonl(o.in_path, "--in corpus");
  std::vector<textpipe::Document> docs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    docs[i] = doc_from_row(rows[i], st, o.conllu_dir);

  annotate::Resources res = st.resources();
  auto results = parallel_map(docs.size(), o.workers, [&](std::size_t i) {
    return annotate::annotate(docs[i], st.lex, st.config, res);
  });

  OutStream out(o.out_path);
  std::map<std::string, std::size_t> group_counts;
  std::map<std::string, std::size_t> verdicts;
  for (const auto& mentions : results)
    for (const auto& m : mentions) {
      out.get() << annotate::mention_to_json(m, st.lex).dump() << "\n";
      ++verdicts[annotate::to_string(m.verdict)];
      if (m.kept()) {
        std::set<std::string> groups;
        for (const auto& s : m.senses)
          groups.insert(lexicon::to_string(s.group));
        for (const auto& g : groups) ++group_counts[g];
      }
    }
  std::cerr << "annotate: " << docs.size() << " documents\n";
  for (const auto& [g, n] : group_counts)
    std::cerr << "  kept mentions [" << g << "]: " << n << "\n";
  for (const auto& [v, n] : verdicts)
    std::cerr << "  verdict " << v << ": " << n << "\n";
  return 0;
}

int cmd_eval(const Opts& o) {
  std::vector<nlohmann::json> gold_rows = read_jsonl(o.gold_path, "--gold");
  std::map<std::string, std::set<lexicon::IdentityGroup>> gold;
  for (const auto& j : gold_rows) {
    if (!j.contains("doc_id"))
      throw FormatError("gold row needs doc_id");
    auto& groups = gold[j["doc_id"].get<std::string>()];
    for (const auto& g : j.value("groups", nlohmann::json::array())) {
      auto parsed = lexicon::parse_identity_group(g.get<std::string>());
      if (!parsed)
        throw FormatError("gold: unknown group '" + g.get<std::string>() +
                          "'");
      groups.insert(*parsed);
    }
  }

  // Gold defines the corpus; documents without predicted mentions are
  // legitimately absent from the mentions file.
  std::map<std::string, std::vector<annotate::Mention>> predicted;
  for (const auto& [id, _] : gold) predicted[id];
  for (const auto& j : read_jsonl(o.in_path, "--in mentions")) {
    annotate::Mention m;
    m.doc_id = j.at("doc_id").get<std::string>();
    m.start = j.at("start").get<std::size_t>();
    m.end = j.at("end").get<std::size_t>();
    m.matched_text = j.value("text", "");
    if (j.value("verdict", "KEPT") != "KEPT")
      m.verdict = annotate::Verdict::kFilteredPersonLexicon;
    for (const auto& g : j.value("groups", nlohmann::json::array())) {
      auto parsed = lexicon::parse_identity_group(g.get<std::string>());
      if (parsed) {
        lexicon::SenseContext s;
        s.group = *parsed;
        m.senses.push_back(std::move(s));
      }
    }
    predicted[m.doc_id].push_back(std::move(m));
  }

  annotate::EvalReport report = annotate::evaluate_annotations(predicted, gold);
  OutStream out(o.out_path);
  out.get() << annotate::eval_report_to_json(report).dump(2) << "\n";
  return 0;
}

int cmd_iar(const Opts& o) {
  require_file(o.in_path, "--in judgments");
  metrics::JudgmentMatrix m = metrics::JudgmentMatrix::from_csv_file(o.in_path);
  nlohmann::json report;
  nlohmann::json undefined = nlohmann::json::object();
  auto put = [&](const char* name, double (*fn)(const metrics::JudgmentMatrix&)) {
    try {
      report[name] = fn(m);
    } catch (const UndefinedMetricError& e) {
      report[name] = nullptr;
      undefined[name] = e.what();
      std::cerr << "iar: " << e.what() << "\n";
    }
  };
  put("percent_agreement", metrics::percent_agreement);
  put("krippendorff_alpha", metrics::krippendorff_alpha);
  put("gwet_ac1", metrics::gwet_ac1);
  if (!undefined.empty()) report["undefined"] = undefined;
  OutStream out(o.out_path);
  out.get() << report.dump(2) << "\n";
  return 0;
}

// Keyword ablation strips every exact lexicon hit; annotation ablation
// strips only mentions the configured disambiguation ladder kept.
int cmd_counterfactual(const Opts& o) {
  OutStream out(o.out_path);

  if (o.mode == "flips") {
    require_file(o.base_path, "--base");
    require_file(o.treated_path, "--treated");
    auto base = counterfactual::load_predictions(o.base_path);
    auto treated = counterfactual::load_predictions(o.treated_path);
    std::map<std::string, std::string> slices;
    if (!o.slices_path.empty())
      for (const auto& j : read_jsonl(o.slices_path, "--slices"))
        slices[j.at("doc_id").get<std::string>()] =
            j.at("subgroup").get<std::string>();
    auto report =
        counterfactual::flip_report(base, treated, slices, o.threshold);
    out.get() << counterfactual::flip_report_to_json(report).dump(2) << "\n";
    return 0;
  }

  if (o.mode == "map") {
    auto lex = load_lexicon_opt(o);
    require_file(o.embeddings_path, "--embeddings");
    auto table = embed::load_embeddings(o.embeddings_path, &std::cerr);
    auto group = lexicon::parse_identity_group(o.group);
    if (!group) throw FormatError("unknown identity group '" + o.group + "'");
    auto map = counterfactual::build_counterfactual_map(
        lex, table, *group, o.k, o.exclude_same_subgroup, &std::cerr);
    nlohmann::json repl = nlohmann::json::object();
    for (const auto& [term, cands] : map.replacements) repl[term] = cands;
    out.get() << nlohmann::json{{"group", lexicon::to_string(map.group)},
                                {"k", o.k},
                                {"oov_skipped", map.oov_skipped},
                                {"replacements", repl}}
                     .dump(2)
              << "\n";
    return 0;
  }

  if (o.mode != "ablate" && o.mode != "replace")
    throw FormatError("counterfactual --mode must be one of "
                      "ablate|replace|map|flips");

  AnnotateState st = make_annotate_state(o);
  debias::IngestOptions ing;
  ing.columns = o.columns;
  ing.agreement_threshold = o.agreement_threshold;
  ing.assume_nontoxic = o.assume_nontoxic;
  auto examples = debias::ingest_labeled_corpus(o.in_path, ing);

  annotate::Resources res = st.resources();
  auto annotate_example = [&](const debias::LabeledExample& ex) {
    textpipe::Document doc;
    if (!o.conllu_dir.empty()) {
      fs::path p = fs::path(o.conllu_dir) / (ex.doc_id + ".conllu");
      if (fs::exists(p)) {
        doc = textpipe::ingest_conllu(ex.doc_id, ex.text, p.string());
        return annotate::annotate(doc, st.lex, st.config, res);
      }
    }
    doc = textpipe::analyze(ex.doc_id, ex.text, st.lex, st.person_nouns);
    return annotate::annotate(doc, st.lex, st.config, res);
  };

  if (o.mode == "ablate") {
    bool keyword = o.ablation_source == "keyword";
    if (!keyword && o.ablation_source != "annotation")
      throw FormatError("--ablation-source must be keyword or annotation");
    annotate::AnnotatorConfig keyword_config;  // bare exact matcher
    auto results = parallel_map(examples.size(), o.workers, [&](std::size_t i) {
      const auto& ex = examples[i];
      std::vector<annotate::Mention> mentions;
      if (keyword) {
        textpipe::Document doc =
            textpipe::analyze(ex.doc_id, ex.text, st.lex, st.person_nouns);
        mentions = annotate::annotate(doc, st.lex, keyword_config, res);
      } else {
        mentions = annotate_example(ex);
      }
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      for (const auto& m : mentions)
        if (m.kept()) spans.emplace_back(m.start, m.end);
      auto cf = counterfactual::ablate(
          ex.doc_id, ex.text, std::move(spans),
          keyword ? counterfactual::Method::kAblationKeyword
                  : counterfactual::Method::kAblationAnnotation);
      cf.toxicity = ex.toxicity;
      cf.identity_attack = ex.identity_attack;
      return cf;
    });
    for (const auto& cf : results)
      out.get() << counterfactual::counterfactual_to_json(cf).dump() << "\n";
    return 0;
  }

  // replace
  require_file(o.embeddings_path, "--embeddings");
  if (!st.embeddings)
    st.embeddings = embed::load_embeddings(o.embeddings_path, &std::cerr);
  counterfactual::GuardConfig guard;
  guard.threshold = o.guard_threshold;
  guard.skip_at_or_above = !o.guard_keep_high;

  // One merged map over all groups with a usable subspace; on surface
  // collisions (terms in two groups) the first group's list stands.
  counterfactual::CounterfactualMap merged;
  std::size_t mapped_groups = 0;
  for (auto g : {lexicon::IdentityGroup::kRne, lexicon::IdentityGroup::kSogiesc,
                 lexicon::IdentityGroup::kReligion}) {
    try {
      auto map = counterfactual::build_counterfactual_map(
          st.lex, *st.embeddings, g, o.k, o.exclude_same_subgroup,
          &std::cerr);
      ++mapped_groups;
      merged.oov_skipped += map.oov_skipped;
      for (auto& [term, cands] : map.replacements)
        merged.replacements.emplace(term, std::move(cands));
    } catch (const ContractError& e) {
      std::cerr << "counterfactual: " << e.what() << " (group skipped)\n";
    }
  }
  if (mapped_groups == 0)
    throw ContractError("counterfactual: no identity group has a usable "
                        "embedding subspace");

  auto results = parallel_map(examples.size(), o.workers, [&](std::size_t i) {
    const auto& ex = examples[i];
    auto mentions = annotate_example(ex);
    return counterfactual::generate_replacements(ex, mentions, merged, o.k,
                                                 guard);
  });
  std::size_t guarded = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].empty() && !guard.allows(examples[i])) {
      ++guarded;
      std::cerr << "counterfactual: '" << examples[i].doc_id
                << "' skipped by identity-attack guard\n";
    }
    for (const auto& cf : results[i])
      out.get() << counterfactual::counterfactual_to_json(cf).dump() << "\n";
  }
  if (guarded > 0)
    std::cerr << "counterfactual: " << guarded
              << " example(s) skipped by guard\n";
  return 0;
}

int cmd_debias(const Opts& o) {
  AnnotateState st = make_annotate_state(o);
  debias::IngestOptions ing;
  ing.columns = o.columns;
  ing.agreement_threshold = o.agreement_threshold;
  auto organic = debias::ingest_labeled_corpus(o.in_path, ing);

  annotate::Resources res = st.resources();
  auto subgroups_of = [&](const debias::LabeledExample& ex) {
    std::set<std::string> out;
    if (!ex.gold_subgroups.empty()) return ex.gold_subgroups;
    textpipe::Document doc =
        textpipe::analyze(ex.doc_id, ex.text, st.lex, st.person_nouns);
    for (const auto& m : annotate::annotate(doc, st.lex, st.config, res))
      if (m.kept())
        for (const auto& s : m.senses)
          if (!s.subgroup.empty()) out.insert(s.subgroup);
    return out;
  };
  metrics::SubgroupsOf slicer = [&](const debias::LabeledExample& ex) {
    auto s = subgroups_of(ex);
    return std::vector<std::string>(s.begin(), s.end());
  };

  metrics::FairnessReport before =
      metrics::toxicity_rates(organic, slicer, o.threshold);
  double target = o.target_rate >= 0.0 ? o.target_rate : before.overall_rate;

  std::vector<debias::LabeledExample> supplement;
  if (!o.supplement_path.empty()) {
    debias::IngestOptions sup = ing;
    sup.assume_nontoxic = o.assume_nontoxic;
    supplement = debias::ingest_labeled_corpus(o.supplement_path, sup);
  }

  std::vector<debias::LabeledExample> sourced;
  for (auto& [name, slice] : before.subgroups) {
    slice.deficit = metrics::compute_deficit(slice.toxic, slice.total, target);
    if (slice.deficit == 0) continue;
    auto got = debias::source_balancing_examples(
        supplement, subgroups_of, name, slice.deficit, o.threshold);
    if (got.shortfall > 0)
      std::cerr << "debias: subgroup '" << name << "' short by "
                << got.shortfall << " sourced example(s)\n";
    for (auto& ex : got.examples) sourced.push_back(std::move(ex));
  }

  std::vector<counterfactual::CounterfactualExample> counterfactuals;
  if (!o.counterfactuals_path.empty()) {
    for (const auto& j :
         read_jsonl(o.counterfactuals_path, "--counterfactuals")) {
      counterfactual::CounterfactualExample cf;
      cf.source_doc_id = j.at("source_doc_id").get<std::string>();
      cf.variant_id = j.value("variant_id", "a1");
      cf.text = j.at("text").get<std::string>();
      if (j.contains("toxicity") && !j["toxicity"].is_null())
        cf.toxicity = j["toxicity"].get<double>();
      counterfactuals.push_back(std::move(cf));
    }
  }

  auto augmented = debias::assemble_augmented(organic, sourced,
                                              counterfactuals, slicer,
                                              o.threshold);
  OutStream out(o.out_path);
  for (const auto& ex : augmented.examples)
    out.get() << debias::example_to_json(ex).dump() << "\n";
  if (!o.manifest_path.empty()) {
    std::ofstream mf(o.manifest_path);
    if (!mf)
      throw FormatError("cannot open manifest file '" + o.manifest_path +
                        "'");
    mf << debias::manifest_to_json(augmented).dump(2) << "\n";
  }
  std::cerr << "debias: " << organic.size() << " organic + "
            << sourced.size() << " sourced + " << counterfactuals.size()
            << " counterfactual, " << augmented.duplicates_dropped
            << " duplicate(s) dropped\n";
  return 0;
}

int cmd_templates(const Opts& o) {
  auto lex = load_lexicon_opt(o);
  auto templates = debias::load_templates(o.in_path);
  lexicon::PersonNounLexicon person_nouns;
  if (!o.person_nouns_path.empty()) {
    require_file(o.person_nouns_path, "--person-nouns");
    person_nouns = lexicon::PersonNounLexicon::load(o.person_nouns_path);
  }
  auto groups = parse_groups_filter(o.groups_filter);
  auto expansion = debias::expand_templates(
      templates, lex, groups, person_nouns.empty() ? nullptr : &person_nouns,
      !o.all_forms, &std::cerr);
  OutStream out(o.out_path);
  for (const auto& ex : expansion.examples)
    out.get() << debias::example_to_json(ex).dump() << "\n";
  std::cerr << "templates: " << expansion.examples.size() << " examples, "
            << expansion.skipped_templates.size() << " template(s) skipped\n";
  return 0;
}

int cmd_stats(const Opts& o) {
  auto lex = load_lexicon_opt(o);
  lexicon::DistributionReport report = lexicon::stats(lex);
  if (o.check_reference) {
    auto deviations =
        lexicon::compare_distribution(report, lexicon::tidal_v1_reference());
    report.reference_deviations = deviations;
    for (const auto& d : deviations)
      std::cerr << "stats: reference deviation: " << d.field << " expected "
                << d.expected << ", observed " << d.observed << "\n";
  }
  OutStream out(o.out_path);
  out.get() << lexicon::to_json(report).dump(2) << "\n";
  return 0;
}

void add_common(CLI::App* cmd, Opts& o) {
  cmd->add_option("--in", o.in_path, "Input file");
  cmd->add_option("--out", o.out_path,
                  "Output file (standard output when omitted)");
  cmd->add_option("--lexicon", o.lexicon_path, "Lexicon CSV");
  cmd->add_option("--embeddings", o.embeddings_path, "Embedding text file");
  cmd->add_option("--seed", o.seed, "Seed for any randomized step");
  cmd->add_option("--workers", o.workers, "Parallel worker count");
  cmd->add_option("--threshold", o.threshold,
                  "Binarization threshold for labels and scores");
}

void add_annotator_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--technique", o.technique,
                  "Matching technique: substring|exact|lemma");
  cmd->add_option("--person-filter", o.person_filter,
                  "Person filter: none|lexicon|similarity");
  cmd->add_flag("--dependency-rule", o.dependency_rule,
                "Judge modifier mentions by their dependency head");
  cmd->add_flag("--ner-rule", o.ner_rule,
                "Keep mentions inside PERSON/NORP/GPE entities");
  cmd->add_option("--similarity-threshold", o.similarity_threshold,
                  "Minimum person-anchor cosine for the similarity filter");
  cmd->add_option("--person-nouns", o.person_nouns_path,
                  "Person-noun list, one term per line");
  cmd->add_option("--conllu-dir", o.conllu_dir,
                  "Directory of <doc_id>.conllu parse files");
  cmd->add_flag("--cache", o.use_cache,
                "Reuse the binary lexicon cache next to the CSV");
}

void add_corpus_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--col-id", o.columns.id, "Corpus id column/key");
  cmd->add_option("--col-text", o.columns.text, "Corpus text column/key");
  cmd->add_option("--col-toxicity", o.columns.toxicity,
                  "Toxicity label column/key");
  cmd->add_option("--col-identity-attack", o.columns.identity_attack,
                  "Identity-attack label column/key");
  cmd->add_option("--col-agreement", o.columns.agreement,
                  "Rater-agreement column/key");
  cmd->add_option("--col-subgroups", o.columns.subgroups,
                  "Subgroup list column/key");
  cmd->add_option("--agreement-threshold", o.agreement_threshold,
                  "Labels survive only above this rater agreement");
  cmd->add_flag("--assume-nontoxic", o.assume_nontoxic,
                "Treat unlabeled rows as non-toxic");
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Identity-term annotation, counterfactual generation and "
               "dataset debiasing toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key-value config file; command-line flags win");

  Opts o;
  std::function<int()> action;

  CLI::App* annotate_cmd =
      app.add_subcommand("annotate", "Emit identity mentions as JSONL");
  add_common(annotate_cmd, o);
  add_annotator_flags(annotate_cmd, o);
  annotate_cmd->callback([&] { action = [&] { return cmd_annotate(o); }; });

  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Score predicted mentions against per-document gold groups");
  add_common(eval_cmd, o);
  eval_cmd->add_option("--gold", o.gold_path,
                       "Gold JSONL: {doc_id, groups:[...]}");
  eval_cmd->callback([&] { action = [&] { return cmd_eval(o); }; });

  CLI::App* iar_cmd = app.add_subcommand(
      "iar", "Inter-annotator reliability from a judgments CSV");
  add_common(iar_cmd, o);
  iar_cmd->callback([&] { action = [&] { return cmd_iar(o); }; });

  CLI::App* cf_cmd = app.add_subcommand(
      "counterfactual", "Ablation/replacement variants and flip metrics");
  add_common(cf_cmd, o);
  add_annotator_flags(cf_cmd, o);
  add_corpus_flags(cf_cmd, o);
  cf_cmd->add_option("--mode", o.mode, "ablate|replace|map|flips");
  cf_cmd->add_option("--ablation-source", o.ablation_source,
                     "keyword|annotation");
  cf_cmd->add_option("--group", o.group, "Identity group for --mode map");
  cf_cmd->add_option("--k", o.k, "Replacement variants per example");
  cf_cmd->add_flag("--exclude-same-subgroup", o.exclude_same_subgroup,
                   "Drop replacement candidates sharing a subgroup");
  cf_cmd->add_option("--guard-threshold", o.guard_threshold,
                     "Identity-attack guard threshold");
  cf_cmd->add_flag("--guard-keep-high", o.guard_keep_high,
                   "Generate only for guarded (high identity-attack) rows");
  cf_cmd->add_option("--base", o.base_path, "Base model predictions JSONL");
  cf_cmd->add_option("--treated", o.treated_path,
                     "Treated model predictions JSONL");
  cf_cmd->add_option("--slices", o.slices_path,
                     "Doc subgroup slices JSONL: {doc_id, subgroup}");
  cf_cmd->callback(
      [&] { action = [&] { return cmd_counterfactual(o); }; });

  CLI::App* debias_cmd = app.add_subcommand(
      "debias", "Assemble a rate-balanced augmented dataset");
  add_common(debias_cmd, o);
  add_annotator_flags(debias_cmd, o);
  add_corpus_flags(debias_cmd, o);
  debias_cmd->add_option("--supplement", o.supplement_path,
                         "Supplement corpus to source from");
  debias_cmd->add_option("--counterfactuals", o.counterfactuals_path,
                         "Pre-generated counterfactual JSONL to append");
  debias_cmd->add_option("--manifest", o.manifest_path,
                         "Write the provenance manifest JSON here");
  debias_cmd->add_option("--target-rate", o.target_rate,
                         "Target subgroup toxicity rate (default: overall)");
  debias_cmd->callback([&] { action = [&] { return cmd_debias(o); }; });

  CLI::App* tpl_cmd = app.add_subcommand(
      "templates", "Expand synthetic probe templates against the lexicon");
  add_common(tpl_cmd, o);
  tpl_cmd->add_option("--person-nouns", o.person_nouns_path,
                      "Person-noun list for {person_noun}");
  tpl_cmd->add_option("--groups", o.groups_filter,
                      "Comma-separated identity group filter");
  tpl_cmd->add_flag("--all-forms", o.all_forms,
                    "Substitute every lexicon form, not only heads");
  tpl_cmd->callback([&] { action = [&] { return cmd_templates(o); }; });

  CLI::App* stats_cmd = app.add_subcommand(
      "stats", "Lexicon distribution report");
  add_common(stats_cmd, o);
  stats_cmd->add_flag("--check-reference", o.check_reference,
                      "Compare against the published distribution");
  stats_cmd->callback([&] { action = [&] { return cmd_stats(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tide::cli
