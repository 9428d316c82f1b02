#include "support/fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tide/common/error.hpp"
#include "tide/common/text.hpp"

namespace fs = std::filesystem;

namespace tide::testing {

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::current_path() / "scratch" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("test fixture: cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("test fixture: cannot write " + p.string());
  out << content;
}

// ---- full-scale lexicon ---------------------------------------------------

namespace {

std::string alpha4(std::size_t i) {
  std::string s(4, 'a');
  for (int k = 3; k >= 0; --k) {
    s[k] = static_cast<char>('a' + i % 26);
    i /= 26;
  }
  return s;
}

struct GroupPlan {
  const char* tag;
  const char* prefix;
  std::size_t heads, pncs, related;  // related excludes the shared forms
  std::size_t both, pejorative;      // assigned from the front
};

// 13,762 RNE + 355 religion + 1,046 SOGIESC - 40 shared = 15,123 distinct.
// Both/pejorative-only front-loads per group: 47+17+60 = 124 both,
// 35+17+40 = 92 pejorative-only, so neutral-or-both = 15,031 and
// pejorative-or-both = 216.
constexpr GroupPlan kPlans[3] = {
    {"rne", "reh", 1278, 9256, 3188, 47, 35},
    {"religion", "rlh", 25, 260, 70, 17, 17},
    {"sogiesc", "soh", 121, 600, 285, 60, 40}};
constexpr std::size_t kSharedRelated = 40;

}  // namespace

void write_tidal_shaped_csv(const fs::path& path) {
  static const char* kNouns[] = {"man",      "woman",  "person", "child",
                                 "elder",    "worker", "neighbor",
                                 "friend",   "teacher", "student", "leader"};
  static const char* kSuffixes[] = {"s", "ish", "ite"};

  std::ostringstream out;
  out << "term,head_term,is_head,identity_group,subgroup,connotation,"
         "has_non_identity,entry_kind,pos\n";
  std::size_t row_no = 0;
  auto row = [&](const std::string& term, const std::string& head,
                 bool is_head, const char* group, const std::string& subgroup,
                 const char* conn, const char* kind, const char* pos) {
    out << term << ',' << head << ',' << (is_head ? '1' : '0') << ','
        << group << ',' << subgroup << ',' << conn << ','
        << (row_no % 7 == 0 ? '1' : '0') << ',' << kind << ',' << pos
        << '\n';
    ++row_no;
  };

  for (const GroupPlan& plan : kPlans) {
    std::size_t idx = 0;        // entry position within this group
    std::size_t both_seen = 0;  // alternates the two both-encodings
    auto emit = [&](const std::string& term, const std::string& head,
                    bool is_head, const std::string& subgroup,
                    const char* kind, const char* pos) {
      if (idx < plan.both) {
        if (both_seen++ % 2 == 0) {
          row(term, head, is_head, plan.tag, subgroup, "both", kind, pos);
        } else {
          row(term, head, is_head, plan.tag, subgroup, "neutral", kind, pos);
          row(term, head, is_head, plan.tag, subgroup, "pejorative", kind,
              pos);
        }
      } else if (idx < plan.both + plan.pejorative) {
        row(term, head, is_head, plan.tag, subgroup, "pejorative", kind, pos);
      } else {
        row(term, head, is_head, plan.tag, subgroup, "neutral", kind, pos);
      }
      ++idx;
    };

    auto head_surface = [&](std::size_t i) { return plan.prefix + alpha4(i); };
    for (std::size_t i = 0; i < plan.heads; ++i)
      emit(head_surface(i), "", true, head_surface(i), "head", "adj");
    for (std::size_t j = 0; j < plan.pncs; ++j) {
      std::string head = head_surface(j % plan.heads);
      emit(head + " " + kNouns[j / plan.heads], head, false, head,
           "person_noun_compound", "");
    }
    for (std::size_t j = 0; j < plan.related; ++j) {
      std::string head = head_surface(j % plan.heads);
      emit(head + kSuffixes[j / plan.heads], head, false, head,
           "related_form", "");
    }
  }

  // Related forms shared between RNE and SOGIESC: one entry, two senses.
  for (std::size_t d = 0; d < kSharedRelated; ++d) {
    std::string head = std::string(kPlans[0].prefix) + alpha4(d);
    std::string term = "dual" + alpha4(d);
    row(term, head, false, "rne", head, "neutral", "related_form", "");
    row(term, head, false, "sogiesc", "dualsg", "neutral", "related_form",
        "");
  }
  write_file(path, out.str());
}

const TidalShapeExpectation& tidal_shape_expectation() {
  static const TidalShapeExpectation e = {
      /*totals=*/{15123, 1424, 10116, 3583, 15031, 216, 124},
      /*rne=*/{13762, 1278, 9256, 3228, 13727, 82, 47},
      /*religion=*/{355, 25, 260, 70, 338, 34, 17},
      /*sogiesc=*/{1046, 121, 600, 325, 1006, 100, 60},
      /*total_senses=*/15163};
  return e;
}

// ---- small handmade lexicon -----------------------------------------------

namespace {

const char* kMiniLexiconCsv =
    "term,head_term,is_head,identity_group,subgroup,connotation,"
    "has_non_identity,entry_kind,pos\n"
    "black,,1,rne,black,neutral,1,head,adj\n"
    "latino,,1,rne,latino,neutral,0,head,adj\n"
    "muslim,,1,religion,muslim,neutral,0,head,adj\n"
    "jewish,,1,religion,jewish,neutral,0,head,adj\n"
    "gay,,1,sogiesc,gay,neutral,1,head,adj\n"
    "lesbian,,1,sogiesc,lesbian,neutral,0,head,adj\n"
    "blacks,black,0,rne,black,neutral,0,related_form,noun\n"
    "latinos,latino,0,rne,latino,neutral,0,related_form,noun\n"
    "muslims,muslim,0,religion,muslim,neutral,0,related_form,noun\n"
    "gays,gay,0,sogiesc,gay,neutral,0,related_form,noun\n"
    "lesbians,lesbian,0,sogiesc,lesbian,neutral,0,related_form,noun\n"
    "black man,black,0,rne,black,neutral,0,person_noun_compound,noun\n"
    "gay man,gay,0,sogiesc,gay,neutral,0,person_noun_compound,noun\n"
    "savage,black,0,rne,black,pejorative,1,related_form,noun\n";

const char* kMiniPersonNouns =
    "person\npeople\nman\nwoman\nmen\nwomen\nfolk\nchild\nchildren\n"
    "muslim\nmuslims\ngay\ngays\nlesbian\nlesbians\nlatino\nlatinos\n";

}  // namespace

lexicon::Lexicon mini_lexicon() {
  std::istringstream in(kMiniLexiconCsv);
  return lexicon::load_lexicon(in, lexicon::fnv1a64(kMiniLexiconCsv));
}

void write_mini_lexicon_csv(const fs::path& path) {
  write_file(path, kMiniLexiconCsv);
}

lexicon::PersonNounLexicon mini_person_nouns() {
  lexicon::PersonNounLexicon out;
  std::istringstream in(kMiniPersonNouns);
  std::string line;
  while (std::getline(in, line)) out.insert(line);
  return out;
}

void write_mini_person_nouns(const fs::path& path) {
  write_file(path, kMiniPersonNouns);
}

// ---- embeddings -------------------------------------------------------------

std::vector<double> grid_vector(std::size_t dim, uint64_t seed) {
  // splitmix64 stream; components k/16 with k in [-32, 32].
  std::vector<double> v(dim);
  uint64_t x = seed;
  for (std::size_t i = 0; i < dim; ++i) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    v[i] = (static_cast<double>(z % 65) - 32.0) / 16.0;
  }
  return v;
}

embed::EmbeddingTable grid_table(const std::vector<std::string>& terms,
                                 std::size_t dim, uint64_t seed) {
  embed::EmbeddingTable t;
  t.set_dim(dim);
  uint64_t i = 0;
  for (const std::string& term : terms)
    t.insert(term, grid_vector(dim, seed * 7919 + ++i));
  return t;
}

namespace {

std::string mini_embeddings_text() {
  struct Row {
    const char* term;
    int v[4];  // sixteenths
  };
  static const Row rows[] = {
      {"person", {16, 0, 0, 0}},   {"people", {15, 4, 0, 0}},
      {"object", {0, 0, 16, 0}},   {"thing", {0, 0, 15, 4}},
      {"man", {15, 2, 0, 0}},      {"engineer", {15, 3, 1, 0}},
      {"car", {1, 0, 15, 3}},      {"cars", {1, 1, 15, 2}},
      {"black", {14, 2, 1, 0}},    {"latino", {13, 3, -1, 0}},
      {"muslim", {12, 5, 2, 0}},   {"jewish", {11, 6, -2, 0}},
      {"gay", {10, 7, 1, 0}},      {"lesbian", {9, 8, -1, 0}},
      {"blacks", {14, 1, 2, 0}},   {"latinos", {13, 2, -2, 0}},
      {"muslims", {12, 4, 3, 0}},  {"gays", {10, 6, 2, 0}},
      {"lesbians", {9, 7, -2, 0}}, {"savage", {1, -2, 14, 5}},
  };
  std::ostringstream out;
  out << sizeof(rows) / sizeof(rows[0]) << " 4\n";
  for (const Row& r : rows) {
    out << r.term;
    for (int c : r.v) {
      char buf[16];
      std::snprintf(buf, sizeof buf, " %.4f", c / 16.0);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

embed::EmbeddingTable mini_embeddings() {
  std::istringstream in(mini_embeddings_text());
  return embed::load_embeddings(in);
}

void write_mini_embeddings(const fs::path& path) {
  write_file(path, mini_embeddings_text());
}

// ---- planted evaluation corpus ----------------------------------------------

namespace {

struct Tok {
  std::string text;
  std::string lemma;  // lowercase of text when empty
  textpipe::Pos pos = textpipe::Pos::kOther;
  int dep = -1;  // -1 = no head
  std::string rel;
  std::string ner;
};

textpipe::Document make_planted_doc(std::string id,
                                    const std::vector<Tok>& toks) {
  textpipe::Document doc;
  doc.doc_id = std::move(id);
  doc.annotation_source = textpipe::AnnotationSource::kIngested;
  std::size_t pos = 0;
  for (const Tok& src : toks) {
    if (!doc.text.empty()) {
      doc.text += ' ';
      ++pos;
    }
    textpipe::Token t;
    t.text = src.text;
    t.lemma = src.lemma.empty() ? text::to_lower(src.text) : src.lemma;
    t.pos = src.pos;
    t.start = pos;
    t.end = pos + src.text.size();  // planted text is ASCII
    if (src.dep >= 0) t.dep_head = static_cast<std::size_t>(src.dep);
    if (!src.rel.empty()) t.dep_rel = src.rel;
    if (!src.ner.empty()) t.ner_tag = src.ner;
    doc.text += src.text;
    pos = t.end;
    doc.tokens.push_back(std::move(t));
  }
  return doc;
}

std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z')
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

PlantedCorpus planted_corpus() {
  using textpipe::Pos;
  using lexicon::IdentityGroup;
  PlantedCorpus out;
  int seq = 0;
  auto next_id = [&] {
    char buf[16];
    std::snprintf(buf, sizeof buf, "s%03d", seq++);
    return std::string(buf);
  };

  struct TermInfo {
    const char* surface;
    IdentityGroup group;
  };
  static const TermInfo kHeads[6] = {
      {"black", IdentityGroup::kRne},
      {"latino", IdentityGroup::kRne},
      {"muslim", IdentityGroup::kReligion},
      {"jewish", IdentityGroup::kReligion},
      {"gay", IdentityGroup::kSogiesc},
      {"lesbian", IdentityGroup::kSogiesc}};

  // Identity word modifying a person noun: all matchers should keep these.
  static const char* kPersonHeads[2] = {"people", "folk"};
  struct Filler {
    const char* verb;
    const char* w1;
    const char* w2;
  };
  static const Filler kFillers[4] = {{"are", "welcome", "here"},
                                     {"feel", "safe", "downtown"},
                                     {"gather", "quietly", "together"},
                                     {"deserve", "equal", "rights"}};
  for (int r = 0; r < 8; ++r)
    for (const TermInfo& ti : kHeads) {
      std::string id = next_id();
      const Filler& f = kFillers[r % 4];
      out.docs.push_back(make_planted_doc(
          id, {{capitalized(ti.surface), ti.surface, Pos::kAdj, 1, "amod"},
               {kPersonHeads[r % 2], "", Pos::kNoun, 2, "nsubj"},
               {f.verb, "", Pos::kVerb, -1, "root"},
               {f.w1, "", Pos::kOther, 2, "dep"},
               {f.w2, "", Pos::kOther, 2, "dep"},
               {".", "", Pos::kOther, 2, "punct"}}));
      out.gold[id] = {ti.group};
    }

  // Plural identity nouns used nominally, covered by the person-noun list.
  struct FormInfo {
    const char* surface;
    const char* lemma;
    IdentityGroup group;
  };
  static const FormInfo kForms[4] = {
      {"muslims", "muslim", IdentityGroup::kReligion},
      {"gays", "gay", IdentityGroup::kSogiesc},
      {"lesbians", "lesbian", IdentityGroup::kSogiesc},
      {"latinos", "latino", IdentityGroup::kRne}};
  static const char* kVerbsB[4] = {"pray", "march", "vote", "sing"};
  static const char* kAdvsB[4] = {"daily", "together", "today", "loudly"};
  for (int r = 0; r < 8; ++r)
    for (const FormInfo& fi : kForms) {
      std::string id = next_id();
      out.docs.push_back(make_planted_doc(
          id, {{capitalized(fi.surface), fi.lemma, Pos::kNoun, 1, "nsubj"},
               {kVerbsB[r % 4], "", Pos::kVerb, -1, "root"},
               {kAdvsB[(r + 1) % 4], "", Pos::kOther, 1, "dep"},
               {".", "", Pos::kOther, 1, "punct"}}));
      out.gold[id] = {fi.group};
    }

  // Identity surfaces embedded inside longer words: only the substring
  // matcher bites.
  for (int r = 0; r < 10; ++r) {
    std::string id = next_id();
    out.docs.push_back(make_planted_doc(
        id, {{"A", "a", Pos::kOther, 2, "det"},
             {"blackboard", "", Pos::kNoun, 2, "nsubj"},
             {"hangs", "hang", Pos::kVerb, -1, "root"},
             {"in", "", Pos::kOther, 4, "case"},
             {"class", "", Pos::kNoun, 2, "obl"},
             {".", "", Pos::kOther, 2, "punct"}}));
    out.gold[id] = {};

    id = next_id();
    out.docs.push_back(make_planted_doc(
        id, {{"Gaylord", "gaylord", Pos::kPropn, 1, "compound"},
             {"street", "", Pos::kNoun, 3, "nsubj"},
             {"is", "be", Pos::kVerb, 3, "cop"},
             {"busy", "", Pos::kAdj, -1, "root"},
             {"today", "", Pos::kOther, 3, "dep"},
             {".", "", Pos::kOther, 3, "punct"}}));
    out.gold[id] = {};

    id = next_id();
    out.docs.push_back(make_planted_doc(
        id, {{"The", "the", Pos::kOther, 1, "det"},
             {"blackbird", "", Pos::kNoun, 2, "nsubj"},
             {"sang", "sing", Pos::kVerb, -1, "root"},
             {"loudly", "", Pos::kOther, 2, "advmod"},
             {".", "", Pos::kOther, 2, "punct"}}));
    out.gold[id] = {};
  }

  // Identity word modifying a non-person noun: unfiltered annotators
  // produce a false positive, the dependency rule filters it.
  static const char* kObjects[6] = {"cars",  "paint",  "anthem",
                                    "music", "temple", "flag"};
  static const char* kObjLemmas[6] = {"car",  "paint",  "anthem",
                                      "music", "temple", "flag"};
  static const Filler kFillersD[4] = {{"are", "parked", "outside"},
                                      {"is", "on", "display"},
                                      {"sounds", "very", "loud"},
                                      {"was", "made", "locally"}};
  for (int i = 0; i < 40; ++i) {
    const TermInfo& ti = kHeads[i % 6];
    std::string id = next_id();
    const Filler& f = kFillersD[(i / 6) % 4];
    out.docs.push_back(make_planted_doc(
        id, {{capitalized(ti.surface), ti.surface, Pos::kAdj, 1, "amod"},
             {kObjects[i % 6], kObjLemmas[i % 6], Pos::kNoun, 2, "nsubj"},
             {f.verb, "", Pos::kVerb, -1, "root"},
             {f.w1, "", Pos::kOther, 2, "dep"},
             {f.w2, "", Pos::kOther, 2, "dep"},
             {".", "", Pos::kOther, 2, "punct"}}));
    out.gold[id] = {};
    out.non_person_docs.insert(id);
  }

  // Nominal uses the person-noun list misses: true positives the lexicon
  // filter wrongly discards.
  static const char* kVerbsE[4] = {"deserve", "organize", "celebrate",
                                   "attend"};
  static const Filler kFillersE[4] = {{"", "equal", "rights"},
                                      {"", "every", "year"},
                                      {"", "their", "heritage"},
                                      {"", "the", "festival"}};
  for (int i = 0; i < 20; ++i) {
    std::string id = next_id();
    const Filler& f = kFillersE[i % 4];
    out.docs.push_back(make_planted_doc(
        id, {{"Blacks", "black", Pos::kNoun, 1, "nsubj"},
             {kVerbsE[i % 4], "", Pos::kVerb, -1, "root"},
             {f.w1, "", Pos::kOther, 1, "dep"},
             {f.w2, "", Pos::kOther, 1, "dep"},
             {".", "", Pos::kOther, 1, "punct"}}));
    out.gold[id] = {IdentityGroup::kRne};
    out.nominal_docs.insert(id);
  }

  // Plain negatives without any identity surface.
  static const std::vector<std::vector<Tok>> kPlain = {
      {{"The", "the", Pos::kOther, 1, "det"},
       {"weather", "", Pos::kNoun, 3, "nsubj"},
       {"is", "be", Pos::kVerb, 3, "cop"},
       {"nice", "", Pos::kAdj, -1, "root"},
       {"today", "", Pos::kOther, 3, "dep"},
       {".", "", Pos::kOther, 3, "punct"}},
      {{"Rain", "rain", Pos::kNoun, 1, "nsubj"},
       {"fell", "fall", Pos::kVerb, -1, "root"},
       {"all", "", Pos::kOther, 3, "det"},
       {"night", "", Pos::kNoun, 1, "obl"},
       {".", "", Pos::kOther, 1, "punct"}},
      {{"Our", "our", Pos::kOther, 1, "det"},
       {"train", "", Pos::kNoun, 2, "nsubj"},
       {"arrived", "arrive", Pos::kVerb, -1, "root"},
       {"very", "", Pos::kOther, 4, "advmod"},
       {"late", "", Pos::kOther, 2, "dep"},
       {".", "", Pos::kOther, 2, "punct"}},
      {{"The", "the", Pos::kOther, 1, "det"},
       {"garden", "", Pos::kNoun, 2, "nsubj"},
       {"needs", "need", Pos::kVerb, -1, "root"},
       {"more", "", Pos::kOther, 4, "det"},
       {"water", "", Pos::kNoun, 2, "obj"},
       {".", "", Pos::kOther, 2, "punct"}},
      {{"Bright", "bright", Pos::kAdj, 1, "amod"},
       {"lamps", "lamp", Pos::kNoun, 2, "nsubj"},
       {"light", "", Pos::kVerb, -1, "root"},
       {"the", "", Pos::kOther, 4, "det"},
       {"room", "", Pos::kNoun, 2, "obj"},
       {".", "", Pos::kOther, 2, "punct"}}};
  for (int i = 0; i < 30; ++i) {
    std::string id = next_id();
    out.docs.push_back(make_planted_doc(id, kPlain[i % kPlain.size()]));
    out.gold[id] = {};
  }

  return out;
}

void write_corpus_jsonl(const std::vector<textpipe::Document>& docs,
                        const fs::path& path) {
  std::ostringstream out;
  for (const auto& d : docs) out << textpipe::to_json(d).dump() << '\n';
  write_file(path, out.str());
}

void write_gold_jsonl(
    const std::map<std::string, std::set<lexicon::IdentityGroup>>& gold,
    const fs::path& path) {
  std::ostringstream out;
  for (const auto& [id, groups] : gold) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto g : groups) arr.push_back(lexicon::to_string(g));
    out << nlohmann::json{{"doc_id", id}, {"groups", arr}}.dump() << '\n';
  }
  write_file(path, out.str());
}

// ---- flip-rate prediction fixtures --------------------------------------------

FlipFixture write_flip_fixture(const fs::path& dir) {
  FlipFixture fx;
  fx.slice_names = {"black", "homosexual", "muslim", "asian"};
  const std::size_t per_slice = 2500;
  const std::size_t base_flips[4] = {40, 30, 20, 10};
  const std::size_t extra[3][4] = {
      {10, 10, 10, 7}, {2, 2, 2, 2}, {10, 9, 8, 7}};
  static const char* kTreatments[3] = {"keyword", "annotation",
                                       "replacement"};
  auto doc_id = [](std::size_t i) {
    char b[16];
    std::snprintf(b, sizeof b, "d%05zu", i);
    return std::string(b);
  };

  {
    std::ostringstream s;
    for (std::size_t i = 0; i < 4 * per_slice; ++i)
      s << "{\"doc_id\":\"" << doc_id(i) << "\",\"subgroup\":\""
        << fx.slice_names[i / per_slice] << "\"}\n";
    fx.slices = dir / "slices.jsonl";
    write_file(fx.slices, s.str());
  }

  auto write_preds = [&](const fs::path& p, const std::size_t flips[4]) {
    std::ostringstream s;
    for (std::size_t i = 0; i < 4 * per_slice; ++i) {
      bool flip = i % per_slice < flips[i / per_slice];
      s << "{\"doc_id\":\"" << doc_id(i) << "\",\"score\":0.2}\n";
      s << "{\"doc_id\":\"" << doc_id(i)
        << "\",\"variant_id\":\"a1\",\"score\":" << (flip ? "0.8" : "0.2")
        << "}\n";
    }
    write_file(p, s.str());
  };

  fx.base = dir / "base.jsonl";
  write_preds(fx.base, base_flips);
  for (int t = 0; t < 3; ++t) {
    std::size_t flips[4];
    for (int s = 0; s < 4; ++s) flips[s] = base_flips[s] + extra[t][s];
    fs::path p = dir / (std::string(kTreatments[t]) + ".jsonl");
    write_preds(p, flips);
    fx.treated[kTreatments[t]] = p;
  }
  return fx;
}

// ---- judgments -----------------------------------------------------------------

std::string worked_judgments_csv() {
  return "unit_id,rater_id,category\n"
         "u1,r1,a\nu1,r2,a\n"
         "u2,r1,a\nu2,r2,a\n"
         "u3,r1,b\nu3,r2,b\n"
         "u4,r1,a\nu4,r2,b\n";
}

}  // namespace tide::testing
