#include "tide/embed/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "tide/common/error.hpp"
#include "tide/common/text.hpp"
#include "tide/simd/kernels.hpp"

namespace tide::embed {

const std::vector<double>* EmbeddingTable::row(std::string_view word) const {
  auto it = rows_.find(lexicon::normalize_term(word));
  return it == rows_.end() ? nullptr : &it->second;
}

std::optional<std::vector<double>> EmbeddingTable::term_vector(
    std::string_view term) const {
  std::string norm = lexicon::normalize_term(term);
  if (norm.empty()) return std::nullopt;
  auto it = rows_.find(norm);
  if (it != rows_.end()) return it->second;
  if (norm.find(' ') == std::string::npos) return std::nullopt;

  std::vector<double> mean(dim_, 0.0);
  std::size_t words = 0;
  for (const std::string& w : text::split(norm, ' ')) {
    auto wit = rows_.find(w);
    if (wit == rows_.end()) return std::nullopt;
    simd::accumulate(mean.data(), wit->second.data(), dim_);
    ++words;
  }
  simd::scale(mean.data(), 1.0 / static_cast<double>(words), dim_);
  return mean;
}

void EmbeddingTable::insert(std::string key, std::vector<double> v) {
  rows_[std::move(key)] = std::move(v);
}

EmbeddingTable load_embeddings(std::istream& in, std::ostream* diag) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  bool first_content = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = text::trim(line);
    if (trimmed.empty()) continue;

    std::istringstream row(trimmed);
    if (first_content) {
      // "<count> <dim>" header: exactly two numeric fields.
      std::istringstream probe(trimmed);
      double a, b;
      std::string rest;
      if (probe >> a >> b && !(probe >> rest) && a == std::floor(a) &&
          b == std::floor(b) && b > 0) {
        dim = static_cast<std::size_t>(b);
        first_content = false;
        continue;
      }
      first_content = false;
    }

    std::string term;
    row >> term;
    std::vector<double> v;
    double x;
    while (row >> x) v.push_back(x);
    if (!row.eof())
      throw FormatError("embeddings: line " + std::to_string(line_no) +
                        ": non-numeric vector component");
    if (dim == 0) dim = v.size();
    if (v.empty() || v.size() != dim)
      throw FormatError("embeddings: line " + std::to_string(line_no) +
                        ": expected " + std::to_string(dim) +
                        " components, found " + std::to_string(v.size()));
    std::string key = lexicon::normalize_term(term);
    if (key.empty()) continue;
    if (diag && table.row(key))
      *diag << "embeddings: duplicate term '" << key << "' at line "
            << line_no << ", last row wins\n";
    table.insert(std::move(key), std::move(v));
  }
  table.set_dim(dim);
  return table;
}

EmbeddingTable load_embeddings(const std::string& path, std::ostream* diag) {
  std::ifstream in(path);
  if (!in) throw FormatError("embeddings: cannot open '" + path + "'");
  return load_embeddings(in, diag);
}

std::optional<std::size_t> Subspace::member_index(
    std::string_view term) const {
  auto it = std::lower_bound(member_terms.begin(), member_terms.end(), term);
  if (it == member_terms.end() || *it != term) return std::nullopt;
  return static_cast<std::size_t>(it - member_terms.begin());
}

Subspace build_subspace(const lexicon::Lexicon& lex,
                        const EmbeddingTable& table,
                        lexicon::IdentityGroup group,
                        std::size_t* oov_skipped) {
  std::set<std::string> surfaces;
  for (const auto& entry : lex.entries()) {
    for (const auto* s : lex.senses_of(entry)) {
      if (s->group == group) {
        surfaces.insert(entry.surface);
        break;
      }
    }
  }

  Subspace sub;
  sub.group = group;
  std::size_t oov = 0;
  for (const std::string& term : surfaces) {
    auto v = table.term_vector(term);
    if (!v) {
      ++oov;
      continue;
    }
    sub.member_terms.push_back(term);
    sub.member_vectors.push_back(std::move(*v));
  }
  if (oov_skipped) *oov_skipped = oov;
  if (sub.member_terms.size() < 2)
    throw ContractError(std::string("subspace for group ") +
                        lexicon::to_string(group) + " has " +
                        std::to_string(sub.member_terms.size()) +
                        " in-vocabulary members; at least 2 are required");

  sub.center.assign(table.dim(), 0.0);
  for (const auto& v : sub.member_vectors)
    simd::accumulate(sub.center.data(), v.data(), sub.center.size());
  simd::scale(sub.center.data(),
              1.0 / static_cast<double>(sub.member_vectors.size()),
              sub.center.size());
  return sub;
}

std::vector<double> reflect(const std::vector<double>& v,
                            const std::vector<double>& center) {
  if (v.size() != center.size())
    throw ContractError("reflect: dimension mismatch");
  std::vector<double> out(v.size());
  simd::reflect(center.data(), v.data(), out.data(), v.size());
  return out;
}

std::vector<std::pair<std::string, double>> least_similar(
    std::string_view term, const Subspace& s, std::size_t k,
    std::ostream* diag) {
  auto self = s.member_index(term);
  if (!self)
    throw ContractError("least_similar: '" + std::string(term) +
                        "' is not a subspace member");

  std::vector<double> target = reflect(s.member_vectors[*self], s.center);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(s.member_terms.size() - 1);
  for (std::size_t i = 0; i < s.member_terms.size(); ++i) {
    if (i == *self) continue;
    double d = std::sqrt(simd::squared_distance(
        target.data(), s.member_vectors[i].data(), target.size()));
    out.emplace_back(s.member_terms[i], d);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  if (k < out.size()) {
    out.resize(k);
  } else if (k > out.size() && diag) {
    *diag << "least_similar: asked for " << k << " terms but only "
          << out.size() << " other members exist; truncating\n";
  }
  return out;
}

std::optional<double> mean_cosine(const std::vector<double>& v,
                                  const EmbeddingTable& table,
                                  const std::vector<std::string>& anchors) {
  double vn = std::sqrt(simd::squared_norm(v.data(), v.size()));
  if (vn == 0.0) return std::nullopt;
  double sum = 0.0;
  std::size_t used = 0;
  for (const std::string& a : anchors) {
    const std::vector<double>* av = table.row(a);
    if (!av) continue;
    double an = std::sqrt(simd::squared_norm(av->data(), av->size()));
    if (an == 0.0) continue;
    sum += simd::dot(v.data(), av->data(), v.size()) / (vn * an);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return sum / static_cast<double>(used);
}

nlohmann::json subspace_to_json(const Subspace& s) {
  nlohmann::json members = nlohmann::json::array();
  for (const std::string& t : s.member_terms)
    members.push_back(nlohmann::json{{"term", t}});
  return nlohmann::json{{"group", lexicon::to_string(s.group)},
                        {"center", s.center},
                        {"members", members}};
}

}  // namespace tide::embed
