#pragma once

#include <optional>
#include <set>
#include <string>

namespace tide::debias {

enum class Split { kTrain, kTest, kUnsplit };

const char* to_string(Split s);

struct LabeledExample {
  std::string doc_id;
  std::string text;
  // Absent when the source row carried no usable label (agreement below
  // the ingestion threshold, or unlabeled supplement text).
  std::optional<double> toxicity;
  std::optional<double> identity_attack;
  std::set<std::string> gold_subgroups;
  Split split = Split::kUnsplit;

  bool toxic(double threshold = 0.5) const {
    return toxicity && *toxicity >= threshold;
  }
};

}  // namespace tide::debias
