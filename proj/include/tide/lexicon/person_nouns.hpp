#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_set>

namespace tide::lexicon {

// Flat list of person-denoting nouns ("person", "people", "man", ...),
// one term per line, used by the disambiguation filters and the fallback
// tagger. Terms are normalized like lexicon surfaces.
class PersonNounLexicon {
 public:
  PersonNounLexicon() = default;
  explicit PersonNounLexicon(std::initializer_list<std::string> terms);

  static PersonNounLexicon load(const std::string& path);

  void insert(std::string_view raw);
  bool contains(std::string_view normalized) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::unordered_set<std::string>& terms() const { return terms_; }

 private:
  std::unordered_set<std::string> terms_;
};

}  // namespace tide::lexicon
