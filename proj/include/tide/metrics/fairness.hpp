#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tide/debias/example.hpp"

namespace tide::metrics {

struct SubgroupSlice {
  std::size_t total = 0;
  std::size_t toxic = 0;
  std::optional<double> rate;  // absent when the slice is empty
  std::size_t deficit = 0;
  std::optional<double> auc;
  std::optional<double> flip_rate_diff;
};

struct FairnessReport {
  std::map<std::string, SubgroupSlice> subgroups;
  std::size_t total = 0;
  std::size_t toxic = 0;
  double overall_rate = 0.0;
};

using SubgroupsOf =
    std::function<std::vector<std::string>(const debias::LabeledExample&)>;

// Per-subgroup toxic counts and rates; an example is toxic when its
// toxicity label clears the threshold (unlabeled counts as non-toxic).
// When `subgroup_of` is null the examples' own gold_subgroups are used.
FairnessReport toxicity_rates(
    const std::vector<debias::LabeledExample>& dataset,
    const SubgroupsOf& subgroup_of = nullptr, double threshold = 0.5);

// Smallest non-negative a with toxic/(total+a) <= target. Zero target
// with a toxic count is unsatisfiable.
std::size_t compute_deficit(std::size_t toxic, std::size_t total,
                            double target_rate);

// Rank-based (Mann-Whitney) AUC with half-credit ties. Undefined when
// labels are single-class.
double auc(const std::vector<double>& scores,
           const std::vector<int>& labels);

nlohmann::json fairness_report_to_json(const FairnessReport& r);

}  // namespace tide::metrics
