#include "tide/lexicon/stats.hpp"

namespace tide::lexicon {

namespace {

void count_entry(DistributionCell& cell, const LexicalEntry& e,
                 const ConnotationSet& conn) {
  cell.entries += 1;
  switch (e.kind) {
    case EntryKind::kHead:
      cell.heads += 1;
      break;
    case EntryKind::kPersonNounCompound:
      cell.person_noun_compounds += 1;
      break;
    case EntryKind::kRelatedForm:
      cell.related_forms += 1;
      break;
  }
  if (conn.neutral) cell.neutral += 1;
  if (conn.pejorative) cell.pejorative += 1;
  if (conn.both()) cell.both += 1;
}

}  // namespace

DistributionReport stats(const Lexicon& lex) {
  DistributionReport report;
  report.total_senses = static_cast<int64_t>(lex.senses().size());
  report.dropped_rows = lex.dropped_rows();

  for (const LexicalEntry& e : lex.entries()) {
    // Union of connotations per group, and across all senses for totals.
    ConnotationSet by_group[3];
    bool in_group[3] = {false, false, false};
    ConnotationSet all;
    for (const SenseContext* s : lex.senses_of(e)) {
      int g = static_cast<int>(s->group);
      in_group[g] = true;
      by_group[g].merge(s->connotations);
      all.merge(s->connotations);
    }
    DistributionCell* cells[3] = {&report.rne, &report.sogiesc,
                                  &report.religion};
    for (int g = 0; g < 3; ++g) {
      if (in_group[g]) count_entry(*cells[g], e, by_group[g]);
    }
    count_entry(report.totals, e, all);
  }
  return report;
}

const DistributionReport& tidal_v1_reference() {
  static const DistributionReport ref = [] {
    DistributionReport r;
    r.totals = {15123, 1277, 10090, 3592, 15031, 216, 124};
    r.rne = {13762, 1278, 9256, 3233, 13734, 113, 30};
    r.religion = {355, 25, 260, 70, 355, 34, 17};
    r.sogiesc = {1046, 121, 600, 299, 1054, 137, 60};
    return r;
  }();
  return ref;
}

namespace {

void compare_cell(std::vector<Deviation>& out, const std::string& prefix,
                  const DistributionCell& got, const DistributionCell& want) {
  auto check = [&](const char* name, int64_t g, int64_t w) {
    if (g != w) out.push_back({prefix + "." + name, w, g});
  };
  check("entries", got.entries, want.entries);
  check("heads", got.heads, want.heads);
  check("person_noun_compounds", got.person_noun_compounds,
        want.person_noun_compounds);
  check("related_forms", got.related_forms, want.related_forms);
  check("neutral", got.neutral, want.neutral);
  check("pejorative", got.pejorative, want.pejorative);
  check("both", got.both, want.both);
}

nlohmann::json cell_json(const DistributionCell& c) {
  return nlohmann::json{{"entries", c.entries},
                        {"heads", c.heads},
                        {"person_noun_compounds", c.person_noun_compounds},
                        {"related_forms", c.related_forms},
                        {"neutral", c.neutral},
                        {"pejorative", c.pejorative},
                        {"both", c.both}};
}

}  // namespace

std::vector<Deviation> compare_distribution(const DistributionReport& report,
                                            const DistributionReport& ref) {
  std::vector<Deviation> out;
  compare_cell(out, "totals", report.totals, ref.totals);
  compare_cell(out, "rne", report.rne, ref.rne);
  compare_cell(out, "religion", report.religion, ref.religion);
  compare_cell(out, "sogiesc", report.sogiesc, ref.sogiesc);
  return out;
}

nlohmann::json to_json(const DistributionReport& report) {
  nlohmann::json j{{"totals", cell_json(report.totals)},
                   {"rne", cell_json(report.rne)},
                   {"religion", cell_json(report.religion)},
                   {"sogiesc", cell_json(report.sogiesc)},
                   {"total_senses", report.total_senses},
                   {"dropped_rows", report.dropped_rows}};
  if (!report.reference_deviations.empty()) {
    nlohmann::json devs = nlohmann::json::array();
    for (const Deviation& d : report.reference_deviations) {
      devs.push_back({{"field", d.field},
                      {"expected", d.expected},
                      {"observed", d.observed}});
    }
    j["reference_deviations"] = devs;
  }
  return j;
}

}  // namespace tide::lexicon
