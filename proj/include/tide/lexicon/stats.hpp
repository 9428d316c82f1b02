#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tide/lexicon/lexicon.hpp"

#include "json.hpp"

namespace tide::lexicon {

// One column of the distribution report. Entry-kind cells partition the
// entries of a group; connotation cells are membership counts (an entry
// with both connotations appears under neutral, pejorative and both), so
// neutral + pejorative - both = entries.
struct DistributionCell {
  int64_t entries = 0;
  int64_t heads = 0;
  int64_t person_noun_compounds = 0;
  int64_t related_forms = 0;
  int64_t neutral = 0;
  int64_t pejorative = 0;
  int64_t both = 0;
};

struct Deviation {
  std::string field;
  int64_t expected = 0;
  int64_t observed = 0;
};

struct DistributionReport {
  DistributionCell rne;
  DistributionCell religion;
  DistributionCell sogiesc;
  // Distinct-entry counts; an entry carrying senses in two groups counts
  // once here but once per group above.
  DistributionCell totals;
  int64_t total_senses = 0;
  std::size_t dropped_rows = 0;
  std::vector<Deviation> reference_deviations;  // filled on request
};

DistributionReport stats(const Lexicon& lex);

// Distribution of the published TIDAL v1 release. The release figures are
// not fully self-consistent (the head-entry subtotals do not add up), so
// comparisons report deviations instead of failing.
const DistributionReport& tidal_v1_reference();

// Appends a deviation for every cell where `report` differs from `ref`.
std::vector<Deviation> compare_distribution(const DistributionReport& report,
                                            const DistributionReport& ref);

nlohmann::json to_json(const DistributionReport& report);

}  // namespace tide::lexicon
