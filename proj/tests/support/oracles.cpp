#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "support/fixtures.hpp"

namespace tide::testing {

namespace {

uint64_t splitmix(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

AgreementOracle agreement_oracle(const RatingLists& units) {
  AgreementOracle out;

  std::set<int> observed;
  for (const auto& u : units)
    for (int c : u) observed.insert(c);
  std::size_t q = observed.size();

  std::vector<const std::vector<int>*> eligible;
  for (const auto& u : units)
    if (u.size() >= 2) eligible.push_back(&u);
  if (eligible.empty()) return out;  // everything undefined

  // Percent agreement: mean per-unit fraction of agreeing ordered pairs.
  double pa_sum = 0.0;
  for (const auto* u : eligible) {
    std::size_t agree = 0, total = 0;
    for (std::size_t i = 0; i < u->size(); ++i)
      for (std::size_t j = 0; j < u->size(); ++j) {
        if (i == j) continue;
        ++total;
        if ((*u)[i] == (*u)[j]) ++agree;
      }
    pa_sum += static_cast<double>(agree) / static_cast<double>(total);
  }
  double pa = pa_sum / static_cast<double>(eligible.size());
  out.percent_agreement = pa;

  // Alpha: coincidence mass accumulated pair by pair.
  std::map<std::pair<int, int>, double> coincidence;
  std::map<int, double> marginal;
  double n = 0.0;
  for (const auto* u : eligible) {
    double w = 1.0 / static_cast<double>(u->size() - 1);
    for (std::size_t i = 0; i < u->size(); ++i)
      for (std::size_t j = 0; j < u->size(); ++j) {
        if (i == j) continue;
        coincidence[{(*u)[i], (*u)[j]}] += w;
        marginal[(*u)[i]] += w;
        n += w;
      }
  }
  double disagree_obs = 0.0, disagree_exp = 0.0;
  for (const auto& [key, mass] : coincidence)
    if (key.first != key.second) disagree_obs += mass;
  for (const auto& [c, mc] : marginal)
    for (const auto& [k, mk] : marginal)
      if (c != k) disagree_exp += mc * mk;
  disagree_obs /= n;
  disagree_exp /= n * (n - 1.0);
  if (disagree_exp > 0.0) out.alpha = 1.0 - disagree_obs / disagree_exp;

  // AC1: prevalence from eligible units, category count from all data.
  if (q >= 2) {
    std::map<int, double> pi;
    for (const auto* u : eligible) {
      std::map<int, std::size_t> counts;
      for (int c : *u) ++counts[c];
      for (const auto& [c, cnt] : counts)
        pi[c] += static_cast<double>(cnt) / static_cast<double>(u->size());
    }
    double pe = 0.0;
    for (const auto& [c, sum] : pi) {
      double p = sum / static_cast<double>(eligible.size());
      pe += p * (1.0 - p);
    }
    pe /= static_cast<double>(q - 1);
    if (pe != 1.0) out.ac1 = (pa - pe) / (1.0 - pe);
  }
  return out;
}

RatingLists random_ratings(uint64_t seed, int max_units, int max_raters,
                           int max_cats, double missing) {
  uint64_t x = seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL;
  int units = 1 + static_cast<int>(splitmix(x) % max_units);
  int raters = 1 + static_cast<int>(splitmix(x) % max_raters);
  int cats = 1 + static_cast<int>(splitmix(x) % max_cats);
  RatingLists out(units);
  for (int u = 0; u < units; ++u)
    for (int r = 0; r < raters; ++r) {
      double roll = static_cast<double>(splitmix(x) % 10000) / 10000.0;
      if (roll < missing) continue;
      out[u].push_back(static_cast<int>(splitmix(x) % cats));
    }
  return out;
}

std::vector<std::pair<std::string, double>> brute_force_least_similar(
    const std::string& term, const embed::Subspace& s, std::size_t k) {
  std::size_t self = s.member_terms.size();
  for (std::size_t i = 0; i < s.member_terms.size(); ++i)
    if (s.member_terms[i] == term) self = i;

  std::size_t dim = s.center.size();
  std::vector<double> target(dim);
  const std::vector<double>& v = s.member_vectors[self];
  for (std::size_t i = 0; i < dim; ++i)
    target[i] = 2.0 * s.center[i] - v[i];

  std::vector<std::pair<std::string, double>> ranked;
  for (std::size_t m = 0; m < s.member_terms.size(); ++m) {
    if (m == self) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double d = target[i] - s.member_vectors[m][i];
      sum += d * d;
    }
    ranked.emplace_back(s.member_terms[m], std::sqrt(sum));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

embed::Subspace random_subspace(std::size_t members, std::size_t dim,
                                uint64_t seed) {
  embed::Subspace s;
  for (std::size_t m = 0; m < members; ++m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "m%04zu", m);
    s.member_terms.push_back(buf);
    s.member_vectors.push_back(grid_vector(dim, seed * 131 + m));
  }
  s.center.assign(dim, 0.0);
  for (const auto& v : s.member_vectors)
    for (std::size_t i = 0; i < dim; ++i) s.center[i] += v[i];
  for (double& c : s.center) c *= 1.0 / static_cast<double>(members);
  return s;
}

}  // namespace tide::testing
