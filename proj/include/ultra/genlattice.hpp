#ifndef ULTRA_GENLATTICE_HPP
#define ULTRA_GENLATTICE_HPP

#include "ultra/dissim.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ultra {

/**
 * Join semilattice of attribute subsets generated by the observed pairwise
 * distance sets, ordered by inclusion and levelled by cardinality.
 *
 * Vertices are sorted by (level, lexicographic subset). Edges are the cover
 * relation: (lower, upper) vertex indices with lower strictly inside upper
 * and no vertex strictly between them.
 */
struct Semilattice {
  std::vector<AttributeSet> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t level(std::size_t vertex) const { return vertices.at(vertex).size(); }
  /// Index of the vertex equal to `set`, or vertices.size() if absent.
  std::size_t find(const AttributeSet& set) const;
  bool contains(const AttributeSet& set) const { return find(set) != vertices.size(); }
};

using ObjectPair = std::pair<std::size_t, std::size_t>;
using ObjectSet = std::vector<std::size_t>;

/// Union closure of the distinct off-diagonal distance sets.
Semilattice build_lattice(const SetValuedDistanceTable& table);

/// Pairs (i < j) whose distance set equals `node` exactly, lexicographic.
/// Throws std::invalid_argument if `node` is not a lattice vertex.
std::vector<ObjectPair> pairs_for_node(const SetValuedDistanceTable& table,
                                       const AttributeSet& node);

/**
 * Clusters at level k: for each maximal lattice vertex of cardinality <= k,
 * the maximal object sets whose internal pair distances all lie inside that
 * vertex. Sets dominated by another result are dropped; output is sorted
 * lexicographically. With no qualifying vertex every object is a singleton.
 */
std::vector<ObjectSet> clusters_at_level(const SetValuedDistanceTable& table, std::size_t k);

}  // namespace ultra

#endif  // ULTRA_GENLATTICE_HPP
