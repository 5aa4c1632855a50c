#ifndef ULTRA_CORE_HPP
#define ULTRA_CORE_HPP

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ultra {

/// Node identifier. Terminals are 0..n-1, internal nodes n..2n-2 in merge order.
using NodeId = std::size_t;

/// One agglomeration: `left` carries branch label +1, `right` carries -1.
struct Merge {
  NodeId left;
  NodeId right;
  double level;

  bool operator==(const Merge&) const = default;
};

/**
 * Binary, rank-ordered dendrogram over n terminals (an indexed hierarchy).
 *
 * Internal node n+k is created by merges()[k] and has rank k+1. Children
 * always have smaller ids than their parent, so a forward sweep over
 * merges() is a bottom-up traversal.
 *
 * Construction validates the structure: exactly n-1 merges, every non-root
 * node used as a child exactly once, and levels non-decreasing towards the
 * root. Levels are strictly increasing whenever the input dissimilarities
 * are tie-free; equal sibling levels are accepted so that tied data (for
 * instance an equilateral triangle) still yields a dendrogram.
 */
class Dendrogram {
 public:
  Dendrogram(std::size_t n_terminals, std::vector<Merge> merges);

  std::size_t n_terminals() const { return n_; }
  std::size_t n_internal() const { return merges_.size(); }
  std::size_t n_nodes() const { return 2 * n_ - 1; }
  NodeId root() const { return n_nodes() - 1; }

  const std::vector<Merge>& merges() const { return merges_; }
  const Merge& merge_of(NodeId internal) const;

  bool is_terminal(NodeId id) const { return id < n_; }
  bool is_internal(NodeId id) const { return id >= n_ && id < n_nodes(); }

  /// Level value; 0 for terminals.
  double level(NodeId id) const;
  /// Agglomeration rank 1..n-1 of an internal node.
  std::size_t rank(NodeId internal) const;
  /// Internal node with the given rank.
  NodeId node_at_rank(std::size_t rank) const;

  /// Parent id; empty for the root.
  std::optional<NodeId> parent(NodeId id) const;
  /// +1 if `child` is the left child of its parent, -1 otherwise.
  int branch_label(NodeId child) const;

  /// Internal nodes from the terminal's parent up to the root.
  std::vector<NodeId> root_path(NodeId terminal) const;

  /// Terminals of the subtree rooted at `id`, ascending.
  std::vector<std::size_t> members(NodeId id) const;
  /// Terminals of the subtree rooted at `id` in left-to-right leaf order.
  std::vector<std::size_t> leaf_order(NodeId id) const;

  /// Levels before any monotonicity repair (median criterion). Empty if none.
  const std::vector<double>& raw_levels() const { return raw_levels_; }
  void set_raw_levels(std::vector<double> raw);

  /// Same topology and child order with level(node) = rank(node).
  Dendrogram with_rank_levels() const;

  bool operator==(const Dendrogram& other) const {
    return n_ == other.n_ && merges_ == other.merges_;
  }

 private:
  void check_id(NodeId id) const;

  std::size_t n_;
  std::vector<Merge> merges_;
  std::vector<NodeId> parent_;
  std::vector<double> raw_levels_;
};

/// Symmetric, non-negative n x n dissimilarities with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Eigen::MatrixXd values);
  static DistanceMatrix zeros(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value);
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// A violated triangle: `slack` is how far d(i,k) exceeds the bound through j.
struct TripleViolation {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double slack;
};

double cophenetic_distance(const Dendrogram& dend, std::size_t i, std::size_t j);
DistanceMatrix cophenetic_matrix(const Dendrogram& dend);

/// Triples with d(i,k) > max(d(i,j), d(j,k)) + tol, i < k, sorted by (i,j,k).
std::vector<TripleViolation> verify_ultrametric(const DistanceMatrix& m, double tol = 0.0);
/// Triples with d(i,k) > d(i,j) + d(j,k) + tol, i < k, sorted by (i,j,k).
std::vector<TripleViolation> verify_metric(const DistanceMatrix& m, double tol = 0.0);

/// Terminals descending from `node` (a singleton for a terminal).
std::vector<std::size_t> cluster_members(const Dendrogram& dend, NodeId node);

}  // namespace ultra

#endif  // ULTRA_CORE_HPP
