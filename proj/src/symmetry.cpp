#include "ultra/symmetry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ultra {

Dendrogram apply_permutation(const Dendrogram& dend, const NodePermutation& perm) {
  std::vector<Merge> merges = dend.merges();
  for (NodeId node : perm.swapped) {
    if (!dend.is_internal(node)) {
      throw std::out_of_range("cannot permute children of node " + std::to_string(node));
    }
    Merge& m = merges[node - dend.n_terminals()];
    std::swap(m.left, m.right);
  }
  Dendrogram out(dend.n_terminals(), std::move(merges));
  out.set_raw_levels(dend.raw_levels());
  return out;
}

BigInt automorphism_count(const Dendrogram& dend) {
  return BigInt(1) << dend.n_internal();
}

std::pair<Dendrogram, NodePermutation> canonicalize(const Dendrogram& dend) {
  const std::size_t n = dend.n_terminals();
  std::vector<std::size_t> smallest(dend.n_nodes());
  for (std::size_t t = 0; t < n; ++t) smallest[t] = t;
  NodePermutation perm;
  for (std::size_t k = 0; k < dend.n_internal(); ++k) {
    const Merge& m = dend.merges()[k];
    smallest[n + k] = std::min(smallest[m.left], smallest[m.right]);
    if (smallest[m.right] < smallest[m.left]) perm.swapped.insert(n + k);
  }
  return {apply_permutation(dend, perm), perm};
}

}  // namespace ultra
