#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tide/lexicon/lexicon.hpp"

namespace tide::embed {

// Dense word vectors, keyed by normalized term. Immutable after load;
// concurrent reads are safe.
class EmbeddingTable {
 public:
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  // Exact single-key lookup (key is normalized before the probe).
  const std::vector<double>* row(std::string_view word) const;

  // Vector for a possibly multi-word term: the row itself for single
  // words, the componentwise mean of per-word rows when every word is in
  // vocabulary, absent otherwise.
  std::optional<std::vector<double>> term_vector(std::string_view term) const;

  bool contains(std::string_view term) const {
    return term_vector(term).has_value();
  }

  void insert(std::string key, std::vector<double> v);
  void set_dim(std::size_t d) { dim_ = d; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> rows_;
};

// Text format: an optional "<count> <dim>" header line, then one
// "term v1 ... vdim" row per line, space-separated. Without a header the
// dimension is inferred from the first row. Duplicate terms: last row
// wins (warned on `diag` when given). A row whose component count
// disagrees with the established dimension is a format error naming the
// line.
EmbeddingTable load_embeddings(std::istream& in, std::ostream* diag = nullptr);
EmbeddingTable load_embeddings(const std::string& path,
                               std::ostream* diag = nullptr);

struct Subspace {
  lexicon::IdentityGroup group = lexicon::IdentityGroup::kRne;
  // Sorted lexicographically; parallel to vectors.
  std::vector<std::string> member_terms;
  std::vector<std::vector<double>> member_vectors;
  std::vector<double> center;  // arithmetic mean of member vectors

  std::optional<std::size_t> member_index(std::string_view term) const;
};

// Collects the group's distinct in-vocabulary surfaces and their vectors
// and centers them. Out-of-vocabulary surfaces are skipped; the skip count
// lands in *oov_skipped when given. Fewer than two in-vocabulary members
// cannot span a usable subspace and is an error.
Subspace build_subspace(const lexicon::Lexicon& lex,
                        const EmbeddingTable& table,
                        lexicon::IdentityGroup group,
                        std::size_t* oov_skipped = nullptr);

// 2*center - v, componentwise. An involution; preserves distances.
std::vector<double> reflect(const std::vector<double>& v,
                            const std::vector<double>& center);

// The k members closest (Euclidean) to the reflection of `term` around
// the subspace center, ascending by distance, ties broken by term; the
// term itself is excluded. Asking for more members than exist truncates
// with a warning on `diag` rather than failing.
std::vector<std::pair<std::string, double>> least_similar(
    std::string_view term, const Subspace& s, std::size_t k,
    std::ostream* diag = nullptr);

// Mean cosine similarity of `v` against each anchor's vector; absent when
// no anchor is in vocabulary.
std::optional<double> mean_cosine(const std::vector<double>& v,
                                  const EmbeddingTable& table,
                                  const std::vector<std::string>& anchors);

nlohmann::json subspace_to_json(const Subspace& s);

}  // namespace tide::embed
