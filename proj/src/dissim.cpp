#include "ultra/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace ultra {

void DataTable::validate() const {
  if (!values.allFinite()) throw std::invalid_argument("data table contains non-finite values");
  if (!row_labels.empty() && row_labels.size() != rows()) {
    throw std::invalid_argument("row label count does not match row count");
  }
  if (!col_labels.empty() && col_labels.size() != cols()) {
    throw std::invalid_argument("column label count does not match column count");
  }
}

std::string DataTable::row_label(std::size_t i) const {
  return i < row_labels.size() ? row_labels[i] : std::to_string(i + 1);
}

std::string DataTable::col_label(std::size_t j) const {
  return j < col_labels.size() ? col_labels[j] : "v" + std::to_string(j + 1);
}

std::string BooleanTable::row_label(std::size_t i) const {
  return i < row_labels.size() ? row_labels[i] : std::to_string(i + 1);
}

std::string BooleanTable::col_label(std::size_t j) const {
  return j < col_labels.size() ? col_labels[j] : "v" + std::to_string(j + 1);
}

BooleanTable BooleanTable::from_data(const DataTable& data) {
  BooleanTable out;
  out.values.resize(data.values.rows(), data.values.cols());
  for (Eigen::Index i = 0; i < data.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.values.cols(); ++j) {
      const double v = data.values(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument("non-boolean value at row " + std::to_string(i + 1) +
                                    ", column " + std::to_string(j + 1));
      }
      out.values(i, j) = v == 1.0;
    }
  }
  out.row_labels = data.row_labels;
  out.col_labels = data.col_labels;
  return out;
}

AttributeSet::AttributeSet(std::initializer_list<std::size_t> indices)
    : AttributeSet(std::vector<std::size_t>(indices)) {}

AttributeSet::AttributeSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool AttributeSet::contains(std::size_t j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

AttributeSet AttributeSet::operator|(const AttributeSet& other) const {
  AttributeSet out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out.indices_));
  return out;
}

bool AttributeSet::operator<(const AttributeSet& other) const {
  if (size() != other.size()) return size() < other.size();
  return indices_ < other.indices_;
}

SetValuedDistanceTable::SetValuedDistanceTable(std::size_t n, std::size_t n_attributes,
                                               std::vector<std::string> object_labels,
                                               std::vector<std::string> attribute_labels)
    : n_(n),
      m_(n_attributes),
      pairs_(n < 2 ? 0 : n * (n - 1) / 2),
      object_labels_(std::move(object_labels)),
      attribute_labels_(std::move(attribute_labels)) {}

std::size_t SetValuedDistanceTable::index(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("object index out of range");
  if (i == j) throw std::invalid_argument("set-valued table stores distinct pairs only");
  if (i > j) std::swap(i, j);
  // Row-major upper triangle.
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

const AttributeSet& SetValuedDistanceTable::at(std::size_t i, std::size_t j) const {
  return pairs_[index(i, j)];
}

void SetValuedDistanceTable::set(std::size_t i, std::size_t j, AttributeSet value) {
  for (std::size_t a : value.indices()) {
    if (a >= m_) throw std::out_of_range("attribute index out of range");
  }
  pairs_[index(i, j)] = std::move(value);
}

std::string SetValuedDistanceTable::object_label(std::size_t i) const {
  return i < object_labels_.size() ? object_labels_[i] : std::to_string(i + 1);
}

std::string SetValuedDistanceTable::attribute_label(std::size_t j) const {
  return j < attribute_labels_.size() ? attribute_labels_[j] : "v" + std::to_string(j + 1);
}

DistanceMatrix squared_euclidean_matrix(const DataTable& data) {
  const Eigen::Index n = data.values.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (data.values.row(i) - data.values.row(j)).squaredNorm();
    }
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix euclidean_matrix(const DataTable& data) {
  const Eigen::Index n = data.values.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = (data.values.row(i) - data.values.row(j)).norm();
    }
  }
  return DistanceMatrix(std::move(d));
}

AttributeSet simple_matching_setvalued(const BooleanTable& data, std::size_t i, std::size_t j) {
  if (i >= data.rows() || j >= data.rows()) throw std::out_of_range("row index out of range");
  std::vector<std::size_t> out;
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  for (Eigen::Index col = 0; col < data.values.cols(); ++col) {
    if (!(data.values(a, col) && data.values(b, col))) out.push_back(static_cast<std::size_t>(col));
  }
  return AttributeSet(std::move(out));
}

SetValuedDistanceTable setvalued_table(const BooleanTable& data) {
  SetValuedDistanceTable table(data.rows(), data.cols(), data.row_labels, data.col_labels);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = i + 1; j < data.rows(); ++j) {
      table.set(i, j, simple_matching_setvalued(data, i, j));
    }
  }
  return table;
}

}  // namespace ultra
