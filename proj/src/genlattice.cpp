#include "ultra/genlattice.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

namespace ultra {

std::size_t Semilattice::find(const AttributeSet& set) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), set);
  if (it != vertices.end() && *it == set) return static_cast<std::size_t>(it - vertices.begin());
  return vertices.size();
}

Semilattice build_lattice(const SetValuedDistanceTable& table) {
  std::set<AttributeSet> closed;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) closed.insert(table.at(i, j));
  }
  // Joining each new vertex with everything seen so far reaches the closure.
  std::vector<AttributeSet> pending(closed.begin(), closed.end());
  while (!pending.empty()) {
    const AttributeSet cur = std::move(pending.back());
    pending.pop_back();
    std::vector<AttributeSet> fresh;
    for (const AttributeSet& other : closed) {
      AttributeSet joined = cur | other;
      if (!closed.contains(joined)) fresh.push_back(std::move(joined));
    }
    for (AttributeSet& f : fresh) {
      if (closed.insert(f).second) pending.push_back(std::move(f));
    }
  }

  Semilattice lattice;
  lattice.vertices.assign(closed.begin(), closed.end());
  const std::size_t v = lattice.vertices.size();
  for (std::size_t lo = 0; lo < v; ++lo) {
    for (std::size_t hi = 0; hi < v; ++hi) {
      const auto& a = lattice.vertices[lo];
      const auto& b = lattice.vertices[hi];
      if (a.size() >= b.size() || !a.is_subset_of(b)) continue;
      bool covered = true;
      for (std::size_t mid = 0; mid < v && covered; ++mid) {
        const auto& c = lattice.vertices[mid];
        if (c.size() > a.size() && c.size() < b.size() && a.is_subset_of(c) && c.is_subset_of(b)) {
          covered = false;
        }
      }
      if (covered) lattice.edges.emplace_back(lo, hi);
    }
  }
  return lattice;
}

std::vector<ObjectPair> pairs_for_node(const SetValuedDistanceTable& table,
                                       const AttributeSet& node) {
  if (!build_lattice(table).contains(node)) {
    throw std::invalid_argument("attribute set is not a lattice vertex");
  }
  std::vector<ObjectPair> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      if (table.at(i, j) == node) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<bool>>;

// Bron-Kerbosch with pivoting; cliques are emitted sorted.
void maximal_cliques(const Adjacency& adj, ObjectSet& r, ObjectSet p, ObjectSet x,
                     std::vector<ObjectSet>& out) {
  if (p.empty() && x.empty()) {
    ObjectSet clique = r;
    std::sort(clique.begin(), clique.end());
    out.push_back(std::move(clique));
    return;
  }
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t best = 0;
  for (const ObjectSet* s : {&p, &x}) {
    for (std::size_t u : *s) {
      std::size_t deg = 0;
      for (std::size_t w : p) deg += adj[u][w] ? 1 : 0;
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    }
  }
  const ObjectSet candidates = p;
  for (std::size_t v : candidates) {
    if (adj[pivot][v]) continue;
    ObjectSet np;
    ObjectSet nx;
    for (std::size_t w : p) {
      if (adj[v][w]) np.push_back(w);
    }
    for (std::size_t w : x) {
      if (adj[v][w]) nx.push_back(w);
    }
    r.push_back(v);
    maximal_cliques(adj, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<ObjectSet> clusters_at_level(const SetValuedDistanceTable& table, std::size_t k) {
  if (k > table.n_attributes()) {
    throw std::invalid_argument("level exceeds the number of attributes");
  }
  const std::size_t n = table.size();
  const Semilattice lattice = build_lattice(table);

  std::vector<AttributeSet> maximal;
  for (const AttributeSet& a : lattice.vertices) {
    if (a.size() > k) continue;
    const bool dominated = std::any_of(lattice.vertices.begin(), lattice.vertices.end(),
                                       [&](const AttributeSet& b) {
                                         return b.size() <= k && b.size() > a.size() &&
                                                a.is_subset_of(b);
                                       });
    if (!dominated) maximal.push_back(a);
  }

  std::vector<ObjectSet> found;
  for (const AttributeSet& node : maximal) {
    Adjacency adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        adj[i][j] = adj[j][i] = table.at(i, j).is_subset_of(node);
      }
    }
    ObjectSet all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    ObjectSet r;
    maximal_cliques(adj, r, std::move(all), {}, found);
  }
  if (maximal.empty()) {
    for (std::size_t i = 0; i < n; ++i) found.push_back({i});
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<ObjectSet> out;
  for (const ObjectSet& s : found) {
    const bool dominated = std::any_of(found.begin(), found.end(), [&](const ObjectSet& t) {
      return t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end());
    });
    if (!dominated) out.push_back(s);
  }
  return out;
}

}  // namespace ultra
