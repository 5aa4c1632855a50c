// Test-only generators and brute-force oracles. Nothing here calls into the
// code paths it is used to check.
#ifndef ULTRA_TESTS_SUPPORT_HPP
#define ULTRA_TESTS_SUPPORT_HPP

#include "ultra/core.hpp"
#include "ultra/dissim.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace ultra::testing {

/// Random binary dendrogram with strictly increasing levels and random child order.
inline Dendrogram random_dendrogram(std::size_t n, std::mt19937_64& rng) {
  std::vector<NodeId> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::uniform_real_distribution<double> step(0.1, 1.0);
  std::vector<Merge> merges;
  double level = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::shuffle(active.begin(), active.end(), rng);
    const NodeId a = active.back();
    active.pop_back();
    const NodeId b = active.back();
    active.pop_back();
    level += step(rng);
    merges.push_back({a, b, level});
    active.push_back(n + k);
  }
  return Dendrogram(n, std::move(merges));
}

inline DataTable random_table(std::size_t n, std::size_t m, double lo, double hi,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(lo, hi);
  DataTable t;
  t.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < t.values.size(); ++i) t.values.data()[i] = unif(rng);
  return t;
}

/// Ancestors of a node including itself, found by scanning every merge.
inline std::set<NodeId> ancestors_brute(const Dendrogram& d, NodeId node) {
  std::set<NodeId> out{node};
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t k = 0; k < d.n_internal(); ++k) {
      const Merge& m = d.merges()[k];
      const NodeId self = d.n_terminals() + k;
      if ((out.count(m.left) || out.count(m.right)) && !out.count(self)) {
        out.insert(self);
        grew = true;
      }
    }
  }
  return out;
}

/// Cophenetic distance as the lowest level among all common ancestors.
inline double cophenetic_brute(const Dendrogram& d, std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  const auto ai = ancestors_brute(d, i);
  const auto aj = ancestors_brute(d, j);
  double best = std::numeric_limits<double>::infinity();
  for (NodeId a : ai) {
    if (aj.count(a)) best = std::min(best, d.level(a));
  }
  return best;
}

/// Merge identity independent of node numbering: (members of left+right, level).
struct MergeSignature {
  std::vector<std::size_t> members;
  double level;
};

inline std::vector<MergeSignature> merge_signatures(const Dendrogram& d) {
  std::vector<MergeSignature> out;
  for (std::size_t k = 0; k < d.n_internal(); ++k) {
    out.push_back({d.members(d.n_terminals() + k), d.merges()[k].level});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.members < b.members; });
  return out;
}

/// Squared Euclidean distances with all pairs distinct, from random points.
inline DistanceMatrix tie_free_euclidean(std::size_t n, std::size_t m, std::mt19937_64& rng) {
  for (;;) {
    const DataTable t = random_table(n, m, 0.0, 1.0, rng);
    DistanceMatrix d = euclidean_matrix(t);
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) v.push_back(d(i, j));
    }
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) == v.end()) return d;
  }
}

}  // namespace ultra::testing

#endif  // ULTRA_TESTS_SUPPORT_HPP
