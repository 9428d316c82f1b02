#include "tide/annotate/eval.hpp"

#include "tide/common/error.hpp"

namespace tide::annotate {

double GroupCounts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
}

double GroupCounts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
}

double GroupCounts::f1() const {
  std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
}

EvalReport evaluate_annotations(
    const std::map<std::string, std::vector<Mention>>& predicted,
    const std::map<std::string, std::set<lexicon::IdentityGroup>>& gold) {
  std::string orphans;
  for (const auto& [id, _] : predicted)
    if (!gold.count(id)) orphans += " " + id;
  for (const auto& [id, _] : gold)
    if (!predicted.count(id)) orphans += " " + id;
  if (!orphans.empty())
    throw ContractError("evaluation: doc ids on one side only:" + orphans);

  EvalReport r;
  for (const auto& [id, mentions] : predicted) {
    std::set<lexicon::IdentityGroup> pred_groups;
    for (const Mention& m : mentions) {
      if (!m.kept()) continue;
      for (const auto& s : m.senses) pred_groups.insert(s.group);
    }
    const auto& gold_groups = gold.at(id);
    for (auto g : {lexicon::IdentityGroup::kRne,
                   lexicon::IdentityGroup::kSogiesc,
                   lexicon::IdentityGroup::kReligion}) {
      bool p = pred_groups.count(g);
      bool t = gold_groups.count(g);
      GroupCounts& c = r.per_group[static_cast<std::size_t>(g)];
      if (p && t)
        ++c.tp;
      else if (p)
        ++c.fp;
      else if (t)
        ++c.fn;
    }
  }
  for (const GroupCounts& c : r.per_group) {
    r.micro.tp += c.tp;
    r.micro.fp += c.fp;
    r.micro.fn += c.fn;
  }
  r.micro_f1 = r.micro.f1();
  return r;
}

nlohmann::json eval_report_to_json(const EvalReport& r) {
  auto cell = [](const GroupCounts& c) {
    return nlohmann::json{{"tp", c.tp},
                          {"fp", c.fp},
                          {"fn", c.fn},
                          {"precision", c.precision()},
                          {"recall", c.recall()},
                          {"f1", c.f1()}};
  };
  return nlohmann::json{
      {"rne", cell(r.per_group[0])},
      {"sogiesc", cell(r.per_group[1])},
      {"religion", cell(r.per_group[2])},
      {"micro", cell(r.micro)},
      {"micro_f1", r.micro_f1},
  };
}

}  // namespace tide::annotate
