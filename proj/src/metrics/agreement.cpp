#include "tide/metrics/agreement.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "tide/common/csv.hpp"
#include "tide/common/error.hpp"

namespace tide::metrics {

void JudgmentMatrix::add(const std::string& unit, const std::string& rater,
                         const std::string& category) {
  auto [uit, unew] = unit_of_.try_emplace(unit, unit_ids_.size());
  if (unew) {
    unit_ids_.push_back(unit);
    counts_.emplace_back(category_ids_.size(), 0);
  }
  auto [rit, rnew] = rater_of_.try_emplace(rater, rater_of_.size());
  auto [cit, cnew] = category_of_.try_emplace(category, category_ids_.size());
  if (cnew) {
    category_ids_.push_back(category);
    for (auto& row : counts_) row.resize(category_ids_.size(), 0);
  }
  auto key = std::make_pair(uit->second, rit->second);
  if (!seen_.emplace(key, cit->second).second)
    throw IntegrityError("judgments: rater '" + rater +
                         "' rated unit '" + unit + "' twice");
  ++counts_[uit->second][cit->second];
}

JudgmentMatrix JudgmentMatrix::from_csv(std::istream& in) {
  JudgmentMatrix m;
  std::optional<std::size_t> unit_col, rater_col, cat_col;
  csv::read(in, [&](const std::vector<std::string>& row, std::size_t line) {
    if (!unit_col) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == "unit_id") unit_col = i;
        if (row[i] == "rater_id") rater_col = i;
        if (row[i] == "category") cat_col = i;
      }
      if (!unit_col || !rater_col || !cat_col)
        throw FormatError(
            "judgments: header must name unit_id, rater_id and category");
      return;
    }
    std::size_t need = std::max({*unit_col, *rater_col, *cat_col});
    if (row.size() <= need)
      throw FormatError("judgments: line " + std::to_string(line) +
                        " has too few fields");
    m.add(row[*unit_col], row[*rater_col], row[*cat_col]);
  });
  return m;
}

JudgmentMatrix JudgmentMatrix::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("judgments: cannot open '" + path + "'");
  return from_csv(in);
}

namespace {

std::size_t row_total(const std::vector<std::size_t>& row) {
  std::size_t r = 0;
  for (std::size_t c : row) r += c;
  return r;
}

}  // namespace

double percent_agreement(const JudgmentMatrix& m) {
  double sum = 0.0;
  std::size_t eligible = 0;
  for (const auto& row : m.unit_category_counts()) {
    std::size_t r = row_total(row);
    if (r < 2) continue;
    std::size_t agree = 0;
    for (std::size_t c : row) agree += c * (c - 1);
    sum += static_cast<double>(agree) / static_cast<double>(r * (r - 1));
    ++eligible;
  }
  if (eligible == 0)
    throw UndefinedMetricError(
        "percent agreement: no unit has two or more ratings");
  return sum / static_cast<double>(eligible);
}

double krippendorff_alpha(const JudgmentMatrix& m) {
  std::size_t q = m.category_count();
  std::vector<std::vector<double>> o(q, std::vector<double>(q, 0.0));
  for (const auto& row : m.unit_category_counts()) {
    std::size_t r = row_total(row);
    if (r < 2) continue;
    for (std::size_t c = 0; c < q; ++c) {
      if (row[c] == 0) continue;
      for (std::size_t k = 0; k < q; ++k) {
        double pairs = static_cast<double>(row[c]) *
                       static_cast<double>(row[k] - (c == k ? 1 : 0));
        o[c][k] += pairs / static_cast<double>(r - 1);
      }
    }
  }
  std::vector<double> marginal(q, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t k = 0; k < q; ++k) marginal[c] += o[c][k];
    n += marginal[c];
  }
  if (n < 2.0)
    throw UndefinedMetricError("alpha: no unit has two or more ratings");
  double disagree_obs = 0.0, disagree_exp = 0.0;
  for (std::size_t c = 0; c < q; ++c)
    for (std::size_t k = 0; k < q; ++k) {
      if (c == k) continue;
      disagree_obs += o[c][k];
      disagree_exp += marginal[c] * marginal[k];
    }
  disagree_obs /= n;
  disagree_exp /= n * (n - 1.0);
  if (disagree_exp == 0.0)
    throw UndefinedMetricError(
        "alpha: a single observed category leaves expected disagreement "
        "zero");
  return 1.0 - disagree_obs / disagree_exp;
}

double gwet_ac1(const JudgmentMatrix& m) {
  double pa = percent_agreement(m);
  std::size_t q = m.category_count();
  if (q < 2)
    throw UndefinedMetricError("AC1: needs at least two categories");
  std::vector<double> pi(q, 0.0);
  std::size_t eligible = 0;
  for (const auto& row : m.unit_category_counts()) {
    std::size_t r = row_total(row);
    if (r < 2) continue;
    for (std::size_t c = 0; c < q; ++c)
      pi[c] += static_cast<double>(row[c]) / static_cast<double>(r);
    ++eligible;
  }
  for (double& p : pi) p /= static_cast<double>(eligible);
  double pe = 0.0;
  for (double p : pi) pe += p * (1.0 - p);
  pe /= static_cast<double>(q - 1);
  if (pe == 1.0)
    throw UndefinedMetricError("AC1: chance agreement is exactly 1");
  return (pa - pe) / (1.0 - pe);
}

}  // namespace tide::metrics
