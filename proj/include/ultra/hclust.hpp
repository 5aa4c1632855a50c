#ifndef ULTRA_HCLUST_HPP
#define ULTRA_HCLUST_HPP

#include "ultra/core.hpp"

#include <cstddef>
#include <optional>
#include <string_view>

namespace ultra {

enum class MergeCriterion { single, complete, average, ward, median };

std::string_view to_string(MergeCriterion crit);
std::optional<MergeCriterion> parse_criterion(std::string_view name);

/// Reducible criteria are safe for nearest-neighbour chains.
bool is_reducible(MergeCriterion crit);

/// Ward and median work on squared input dissimilarities and report the
/// square root of the merge cost as the level.
bool works_on_squares(MergeCriterion crit);

/// Lance-Williams coefficients: d(k, i+j) = a_i d_ki + a_j d_kj + b d_ij + g |d_ki - d_kj|.
struct LanceWilliamsCoefficients {
  double alpha_i;
  double alpha_j;
  double beta;
  double gamma;
};

struct ClusterSizes {
  std::size_t i;
  std::size_t j;
  std::size_t k;
};

LanceWilliamsCoefficients lance_williams_coefficients(MergeCriterion crit, ClusterSizes sizes);

struct LanceWilliamsResult {
  double value;
  bool clamped;  // a negative update was raised to 0
};

LanceWilliamsResult lance_williams_update(double d_ki, double d_kj, double d_ij,
                                          ClusterSizes sizes, MergeCriterion crit);

/**
 * Reciprocal-nearest-neighbour chain agglomeration, O(n^2) time and one
 * n x n working matrix.
 *
 * Merges are reported in order of increasing level (stable with respect to
 * discovery), so ranks agree with the global closest-pair order. Throws
 * std::invalid_argument for non-reducible criteria; use naive_cluster.
 */
Dendrogram nn_chain_cluster(const DistanceMatrix& m, MergeCriterion crit);

/**
 * Repeatedly merges the globally closest pair, O(n^3).
 *
 * Ties go to the lexicographically smallest (min id, max id) pair. Level
 * inversions (median) are repaired to max(level, child levels); the
 * unrepaired levels are kept in Dendrogram::raw_levels().
 */
Dendrogram naive_cluster(const DistanceMatrix& m, MergeCriterion crit);

}  // namespace ultra

#endif  // ULTRA_HCLUST_HPP
