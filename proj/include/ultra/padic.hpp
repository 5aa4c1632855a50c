#ifndef ULTRA_PADIC_HPP
#define ULTRA_PADIC_HPP

#include "ultra/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace ultra {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse sum of coeff * p^level with coefficients in {-1, +1}; absent levels are 0.
struct PadicCode {
  unsigned p = 2;
  std::map<std::size_t, int> coeffs;

  bool operator==(const PadicCode&) const = default;
};

bool is_prime(unsigned p);

/// Terminal-to-root code. The coefficient at rank j is the branch label of
/// the edge leaving the rank-j node on the path; levels are ranks, so any
/// real-valued agglomeration levels are ignored.
PadicCode encode(const Dendrogram& dend, unsigned p, std::size_t terminal);
std::vector<PadicCode> encode_all(const Dendrogram& dend, unsigned p);

BigInt decimal_exact(const PadicCode& code);
double decimal_value(const PadicCode& code);

/// True iff the terminals' decimal values are pairwise distinct.
bool check_uniqueness(const Dendrogram& dend, unsigned p);

/// Multiplication by 1/p: level j moves to j-1 and level 0 is dropped.
PadicCode dilate(const PadicCode& code);

/// Member sets from {terminal} up to the full index set, strictly increasing.
std::vector<std::vector<std::size_t>> cluster_chain(const Dendrogram& dend, std::size_t terminal);

/// Enumerates every maximal descending chain of clusters and checks that its
/// intersection is non-empty.
bool check_spherical_completeness(const Dendrogram& dend);

/// The dendrogram with its rank-1 merge collapsed into a single terminal,
/// i.e. the hierarchy one dilation step up.
struct RaisedHierarchy {
  Dendrogram tree;
  std::vector<std::size_t> terminal_map;  // old terminal -> new terminal
};

/// Requires at least 3 terminals.
RaisedHierarchy raise_one_level(const Dendrogram& dend);

}  // namespace ultra

#endif  // ULTRA_PADIC_HPP
