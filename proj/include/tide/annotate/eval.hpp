#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tide/annotate/mention.hpp"
#include "tide/lexicon/lexicon.hpp"

namespace tide::annotate {

struct GroupCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

struct EvalReport {
  // Indexed by IdentityGroup value.
  std::array<GroupCounts, 3> per_group;
  GroupCounts micro;  // summed counts
  double micro_f1 = 0.0;
};

// Document x identity-group comparison: a document is positive for a
// group when any KEPT mention carries it. Both maps must cover the same
// doc_ids; orphans on either side are a contract error naming them.
EvalReport evaluate_annotations(
    const std::map<std::string, std::vector<Mention>>& predicted,
    const std::map<std::string, std::set<lexicon::IdentityGroup>>& gold);

nlohmann::json eval_report_to_json(const EvalReport& r);

}  // namespace tide::annotate
