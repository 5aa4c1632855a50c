#ifndef ULTRA_SYMMETRY_HPP
#define ULTRA_SYMMETRY_HPP

#include "ultra/core.hpp"
#include "ultra/padic.hpp"

#include <set>
#include <utility>

namespace ultra {

/// Element of the wreath-product group: the internal nodes whose two
/// children are exchanged. Every other node is left as is.
struct NodePermutation {
  std::set<NodeId> swapped;

  bool is_identity() const { return swapped.empty(); }
  bool operator==(const NodePermutation&) const = default;
};

/// Swaps the children (and with them the +1/-1 labels) of each selected
/// node; subtrees keep their internal structure. Throws std::out_of_range
/// for ids that are not internal nodes.
Dendrogram apply_permutation(const Dendrogram& dend, const NodePermutation& perm);

/// Order of the child-swap group, 2^(n-1).
BigInt automorphism_count(const Dendrogram& dend);

/// Orbit representative: at every node the child holding the smallest
/// terminal index goes left. Returns the permutation that was applied.
std::pair<Dendrogram, NodePermutation> canonicalize(const Dendrogram& dend);

}  // namespace ultra

#endif  // ULTRA_SYMMETRY_HPP
