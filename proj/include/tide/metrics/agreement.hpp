#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tide::metrics {

// Long-format rating data: one category judgment per (unit, rater).
// Units with fewer than two ratings are stored but excluded from
// reliability computation.
class JudgmentMatrix {
 public:
  // Duplicate (unit, rater) pairs are an integrity error.
  void add(const std::string& unit, const std::string& rater,
           const std::string& category);

  // CSV with a header naming unit_id, rater_id and category.
  static JudgmentMatrix from_csv(std::istream& in);
  static JudgmentMatrix from_csv_file(const std::string& path);

  std::size_t unit_count() const { return unit_ids_.size(); }
  std::size_t rater_count() const { return rater_of_.size(); }
  std::size_t category_count() const { return category_ids_.size(); }
  const std::vector<std::string>& categories() const {
    return category_ids_;
  }

  // r_uk: per-unit rating counts by category, units in first-seen order.
  const std::vector<std::vector<std::size_t>>& unit_category_counts() const {
    return counts_;
  }

 private:
  std::vector<std::string> unit_ids_;
  std::vector<std::string> category_ids_;
  std::map<std::string, std::size_t> unit_of_;
  std::map<std::string, std::size_t> rater_of_;
  std::map<std::string, std::size_t> category_of_;
  std::vector<std::vector<std::size_t>> counts_;  // [unit][category]
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen_;
};

// Mean over eligible units of the fraction of agreeing ordered rating
// pairs. Undefined when no unit has two ratings.
double percent_agreement(const JudgmentMatrix& m);

// Nominal-level alpha over the coincidence matrix. Undefined when only
// one category is observed among eligible units.
double krippendorff_alpha(const JudgmentMatrix& m);

// Chance-corrected agreement robust to prevalence skew. Undefined when
// the chance-agreement term reaches 1.
double gwet_ac1(const JudgmentMatrix& m);

}  // namespace tide::metrics
