#include "tide/metrics/fairness.hpp"

#include <algorithm>
#include <cmath>

#include "tide/common/error.hpp"

namespace tide::metrics {

FairnessReport toxicity_rates(
    const std::vector<debias::LabeledExample>& dataset,
    const SubgroupsOf& subgroup_of, double threshold) {
  FairnessReport r;
  for (const auto& ex : dataset) {
    bool toxic = ex.toxic(threshold);
    ++r.total;
    if (toxic) ++r.toxic;
    std::vector<std::string> subgroups;
    if (subgroup_of) {
      subgroups = subgroup_of(ex);
    } else {
      subgroups.assign(ex.gold_subgroups.begin(), ex.gold_subgroups.end());
    }
    for (const std::string& g : subgroups) {
      SubgroupSlice& s = r.subgroups[g];
      ++s.total;
      if (toxic) ++s.toxic;
    }
  }
  r.overall_rate =
      r.total == 0 ? 0.0
                   : static_cast<double>(r.toxic) / static_cast<double>(r.total);
  for (auto& [g, s] : r.subgroups)
    if (s.total > 0)
      s.rate = static_cast<double>(s.toxic) / static_cast<double>(s.total);
  return r;
}

std::size_t compute_deficit(std::size_t toxic, std::size_t total,
                            double target_rate) {
  if (toxic == 0) return 0;
  if (target_rate <= 0.0)
    throw ContractError(
        "deficit: target rate 0 is unsatisfiable with toxic examples "
        "present");
  double t = static_cast<double>(toxic);
  double need = std::ceil(t / target_rate - static_cast<double>(total));
  std::size_t a = need <= 0.0 ? 0 : static_cast<std::size_t>(need);
  // Float boundaries can land one off; settle exactness with the
  // multiplicative form of the target inequality.
  auto satisfied = [&](std::size_t add) {
    return t <= target_rate * static_cast<double>(total + add);
  };
  while (!satisfied(a)) ++a;
  while (a > 0 && satisfied(a - 1)) --a;
  return a;
}

double auc(const std::vector<double>& scores,
           const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ContractError("auc: scores and labels differ in length");
  std::size_t pos = 0, neg = 0;
  for (int l : labels) (l != 0 ? pos : neg)++;
  if (pos == 0 || neg == 0)
    throw UndefinedMetricError("auc: labels are single-class");

  // Average ranks with half-credit for score ties.
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] != 0) rank_sum_pos += avg_rank;
    i = j;
  }
  double u = rank_sum_pos - static_cast<double>(pos) *
                                (static_cast<double>(pos) + 1.0) / 2.0;
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

nlohmann::json fairness_report_to_json(const FairnessReport& r) {
  nlohmann::json subgroups = nlohmann::json::object();
  for (const auto& [g, s] : r.subgroups) {
    nlohmann::json cell{{"total", s.total}, {"toxic", s.toxic}};
    if (s.rate) cell["rate"] = *s.rate;
    if (s.deficit > 0) cell["deficit"] = s.deficit;
    if (s.auc) cell["auc"] = *s.auc;
    if (s.flip_rate_diff) cell["flip_rate_diff"] = *s.flip_rate_diff;
    subgroups[g] = std::move(cell);
  }
  return nlohmann::json{{"total", r.total},
                        {"toxic", r.toxic},
                        {"overall_rate", r.overall_rate},
                        {"subgroups", subgroups}};
}

}  // namespace tide::metrics
