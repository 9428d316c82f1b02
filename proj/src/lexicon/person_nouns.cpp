#include "tide/lexicon/person_nouns.hpp"

#include <fstream>

#include "tide/common/error.hpp"
#include "tide/lexicon/lexicon.hpp"

namespace tide::lexicon {

PersonNounLexicon::PersonNounLexicon(
    std::initializer_list<std::string> terms) {
  for (const std::string& t : terms) insert(t);
}

PersonNounLexicon PersonNounLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("person nouns: cannot open '" + path + "'");
  PersonNounLexicon lex;
  std::string line;
  while (std::getline(in, line)) lex.insert(line);
  return lex;
}

void PersonNounLexicon::insert(std::string_view raw) {
  std::string norm = normalize_term(raw);
  if (!norm.empty()) terms_.insert(std::move(norm));
}

bool PersonNounLexicon::contains(std::string_view normalized) const {
  return terms_.find(std::string(normalized)) != terms_.end();
}

}  // namespace tide::lexicon
