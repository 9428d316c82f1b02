#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tide/debias/example.hpp"
#include "tide/embed/embeddings.hpp"
#include "tide/lexicon/lexicon.hpp"
#include "tide/lexicon/person_nouns.hpp"
#include "tide/textpipe/document.hpp"

namespace tide::testing {

// Fresh empty directory under the test working directory. Wiped on every
// call, so each test run starts clean.
std::filesystem::path scratch_dir(const std::string& name);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

// ---- full-scale lexicon ---------------------------------------------------
//
// Synthetic CSV shaped like the published TIDAL v1 distribution:
//   15,123 distinct entries; 13,762 RNE / 355 religion / 1,046 SOGIESC,
//   with 40 related forms shared between RNE and SOGIESC (so the group
//   columns sum to 15,163); connotation totals 15,031 neutral /
//   216 pejorative / 124 carrying both.
// Entries with both connotations alternate between a single "both" row
// and a neutral + pejorative row pair, exercising the builder's merge.
void write_tidal_shaped_csv(const std::filesystem::path& path);

// The distribution the generated file actually realizes, for asserting
// stats() output cell by cell. Cells ordered entries, heads, pncs,
// related, neutral, pejorative, both.
struct TidalShapeExpectation {
  std::vector<int64_t> totals, rne, religion, sogiesc;
  int64_t total_senses = 0;
};
const TidalShapeExpectation& tidal_shape_expectation();

// ---- small handmade lexicon -----------------------------------------------
//
// heads: black, latino (rne); muslim, jewish (religion); gay, lesbian
// (sogiesc); related forms blacks, latinos, muslims, gays, lesbians;
// compounds "black man", "gay man". "savage" is a pejorative-only rne
// related form of black, for connotation-sensitive paths.
lexicon::Lexicon mini_lexicon();
void write_mini_lexicon_csv(const std::filesystem::path& path);

// person/people/man/... plus the identity nouns that name people
// directly; deliberately excludes black/blacks so the lexicon filter has
// a planted blind spot.
lexicon::PersonNounLexicon mini_person_nouns();
void write_mini_person_nouns(const std::filesystem::path& path);

// ---- embeddings -------------------------------------------------------------

// Deterministic vectors whose components are multiples of 1/16 in
// [-2, 2]: sums of their products stay exact in double precision, so
// scalar and SIMD kernels agree bit for bit.
std::vector<double> grid_vector(std::size_t dim, uint64_t seed);
embed::EmbeddingTable grid_table(const std::vector<std::string>& terms,
                                 std::size_t dim, uint64_t seed);

// Covers the mini lexicon plus the person/people/object/thing anchors and
// the probe nouns used by similarity-filter tests.
embed::EmbeddingTable mini_embeddings();
void write_mini_embeddings(const std::filesystem::path& path);

// ---- planted evaluation corpus ----------------------------------------------
//
// 200 sentences with planted POS and dependency annotations over the mini
// lexicon:
//   80 person contexts (gold positive), 30 embedded-substring traps,
//   40 identity words modifying non-person nouns, 20 nominal uses the
//   person-noun list misses, 30 plain negatives.
struct PlantedCorpus {
  std::vector<textpipe::Document> docs;
  std::map<std::string, std::set<lexicon::IdentityGroup>> gold;
  std::set<std::string> non_person_docs;  // modifier-of-object sentences
  std::set<std::string> nominal_docs;     // nominal uses outside the list
};

PlantedCorpus planted_corpus();
void write_corpus_jsonl(const std::vector<textpipe::Document>& docs,
                        const std::filesystem::path& path);
void write_gold_jsonl(
    const std::map<std::string, std::set<lexicon::IdentityGroup>>& gold,
    const std::filesystem::path& path);

// ---- flip-rate prediction fixtures --------------------------------------------
//
// 10,000 original/variant prediction pairs over four equal subgroup
// slices, with planted label flips:
//   base flips per slice          40 / 30 / 20 / 10   (overall rate 0.0100)
//   "keyword" treated adds       +10 /+10 /+10 / +7   (overall diff +0.0037)
//   "annotation" treated adds     +2 / +2 / +2 / +2   (overall diff +0.0008)
//   "replacement" treated adds   +10 / +9 / +8 / +7   (overall diff +0.0034)
struct FlipFixture {
  std::filesystem::path base;
  std::map<std::string, std::filesystem::path> treated;
  std::filesystem::path slices;
  std::vector<std::string> slice_names;  // in slice order
};

FlipFixture write_flip_fixture(const std::filesystem::path& dir);

// ---- judgments -----------------------------------------------------------------

// Four units rated by two raters: (a,a), (a,a), (b,b), (a,b).
// Percent agreement 3/4, alpha 8/15, AC1 9/17.
std::string worked_judgments_csv();

}  // namespace tide::testing
