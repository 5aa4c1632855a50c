#ifndef ULTRA_DISSIM_HPP
#define ULTRA_DISSIM_HPP

#include "ultra/core.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ultra {

/// Real-valued observations: rows are objects (I), columns attributes (J).
struct DataTable {
  Eigen::MatrixXd values;
  std::vector<std::string> row_labels;  // empty or one per row
  std::vector<std::string> col_labels;  // empty or one per column

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }

  /// Throws std::invalid_argument on non-finite values or label count mismatches.
  void validate() const;
  std::string row_label(std::size_t i) const;
  std::string col_label(std::size_t j) const;
};

/// Presence/absence observations.
struct BooleanTable {
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> values;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
  std::string row_label(std::size_t i) const;
  std::string col_label(std::size_t j) const;

  /// Converts a 0/1 data table; throws std::invalid_argument on other values.
  static BooleanTable from_data(const DataTable& data);
};

/**
 * Subset of the attribute index set J, kept as a sorted, duplicate-free
 * index list. Ordered by cardinality first, then lexicographically, which
 * is the rendering order for lattice vertices.
 */
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(std::initializer_list<std::size_t> indices);
  explicit AttributeSet(std::vector<std::size_t> indices);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t j) const;
  bool is_subset_of(const AttributeSet& other) const;

  AttributeSet operator|(const AttributeSet& other) const;

  bool operator==(const AttributeSet&) const = default;
  bool operator<(const AttributeSet& other) const;

 private:
  std::vector<std::size_t> indices_;
};

/// Pairwise distances between set-valued observations, indexed by unordered pair.
class SetValuedDistanceTable {
 public:
  SetValuedDistanceTable(std::size_t n, std::size_t n_attributes,
                         std::vector<std::string> object_labels = {},
                         std::vector<std::string> attribute_labels = {});

  std::size_t size() const { return n_; }
  std::size_t n_attributes() const { return m_; }
  std::size_t n_pairs() const { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

  /// Symmetric; i != j.
  const AttributeSet& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, AttributeSet value);

  std::string object_label(std::size_t i) const;
  std::string attribute_label(std::size_t j) const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::size_t m_;
  std::vector<AttributeSet> pairs_;
  std::vector<std::string> object_labels_;
  std::vector<std::string> attribute_labels_;
};

DistanceMatrix euclidean_matrix(const DataTable& data);
DistanceMatrix squared_euclidean_matrix(const DataTable& data);

/// Attributes j that the two rows do not both possess. Co-absence counts as
/// distance, so d(i,i) is the complement of row i's presence set.
AttributeSet simple_matching_setvalued(const BooleanTable& data, std::size_t i, std::size_t j);

SetValuedDistanceTable setvalued_table(const BooleanTable& data);

}  // namespace ultra

#endif  // ULTRA_DISSIM_HPP
