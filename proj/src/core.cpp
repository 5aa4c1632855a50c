#include "ultra/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ultra {

Dendrogram::Dendrogram(std::size_t n_terminals, std::vector<Merge> merges)
    : n_(n_terminals), merges_(std::move(merges)) {
  if (n_ < 2) {
    throw std::invalid_argument("dendrogram needs at least 2 terminals");
  }
  if (merges_.size() != n_ - 1) {
    throw std::invalid_argument("dendrogram on " + std::to_string(n_) + " terminals needs " +
                                std::to_string(n_ - 1) + " merges, got " +
                                std::to_string(merges_.size()));
  }
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  parent_.assign(n_nodes(), kNone);
  for (std::size_t k = 0; k < merges_.size(); ++k) {
    const NodeId self = n_ + k;
    const Merge& m = merges_[k];
    if (!std::isfinite(m.level) || m.level < 0.0) {
      throw std::invalid_argument("merge " + std::to_string(k) + " has an invalid level");
    }
    for (NodeId child : {m.left, m.right}) {
      if (child >= self) {
        throw std::invalid_argument("merge " + std::to_string(k) + " references node " +
                                    std::to_string(child) + " before it exists");
      }
      if (parent_[child] != kNone) {
        throw std::invalid_argument("node " + std::to_string(child) + " merged twice");
      }
      parent_[child] = self;
    }
    if (m.left == m.right) {
      throw std::invalid_argument("merge " + std::to_string(k) + " joins a node with itself");
    }
    if (m.level < level(m.left) || m.level < level(m.right)) {
      throw std::invalid_argument("merge " + std::to_string(k) +
                                  " lies below one of its children");
    }
  }
  // n-1 merges of 2n-1 nodes with no node reused leaves exactly one parentless node.
}

void Dendrogram::check_id(NodeId id) const {
  if (id >= n_nodes()) {
    throw std::out_of_range("node id " + std::to_string(id) + " out of range");
  }
}

const Merge& Dendrogram::merge_of(NodeId internal) const {
  if (!is_internal(internal)) {
    throw std::out_of_range("node " + std::to_string(internal) + " is not internal");
  }
  return merges_[internal - n_];
}

double Dendrogram::level(NodeId id) const {
  check_id(id);
  return is_terminal(id) ? 0.0 : merges_[id - n_].level;
}

std::size_t Dendrogram::rank(NodeId internal) const {
  merge_of(internal);
  return internal - n_ + 1;
}

NodeId Dendrogram::node_at_rank(std::size_t rank) const {
  if (rank < 1 || rank > merges_.size()) {
    throw std::out_of_range("rank " + std::to_string(rank) + " out of range");
  }
  return n_ + rank - 1;
}

std::optional<NodeId> Dendrogram::parent(NodeId id) const {
  check_id(id);
  if (id == root()) return std::nullopt;
  return parent_[id];
}

int Dendrogram::branch_label(NodeId child) const {
  const auto p = parent(child);
  if (!p) throw std::invalid_argument("the root carries no branch label");
  return merges_[*p - n_].left == child ? +1 : -1;
}

std::vector<NodeId> Dendrogram::root_path(NodeId terminal) const {
  if (!is_terminal(terminal)) {
    throw std::out_of_range("terminal " + std::to_string(terminal) + " out of range");
  }
  std::vector<NodeId> path;
  for (NodeId cur = terminal; cur != root();) {
    cur = parent_[cur];
    path.push_back(cur);
  }
  return path;
}

std::vector<std::size_t> Dendrogram::leaf_order(NodeId id) const {
  check_id(id);
  std::vector<std::size_t> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    if (is_terminal(cur)) {
      out.push_back(cur);
    } else {
      const Merge& m = merges_[cur - n_];
      stack.push_back(m.right);
      stack.push_back(m.left);
    }
  }
  return out;
}

std::vector<std::size_t> Dendrogram::members(NodeId id) const {
  auto out = leaf_order(id);
  std::sort(out.begin(), out.end());
  return out;
}

void Dendrogram::set_raw_levels(std::vector<double> raw) {
  if (!raw.empty() && raw.size() != merges_.size()) {
    throw std::invalid_argument("raw levels must have one entry per merge");
  }
  raw_levels_ = std::move(raw);
}

Dendrogram Dendrogram::with_rank_levels() const {
  auto merges = merges_;
  for (std::size_t k = 0; k < merges.size(); ++k) merges[k].level = static_cast<double>(k + 1);
  return Dendrogram(n_, std::move(merges));
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("distance matrix must be square");
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be 0");
    for (Eigen::Index j = i + 1; j < values_.cols(); ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("distances must be finite and non-negative");
      }
      if (v != values_(j, i)) throw std::invalid_argument("distance matrix must be symmetric");
    }
  }
}

DistanceMatrix DistanceMatrix::zeros(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return DistanceMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= size() || j >= size()) throw std::out_of_range("distance index out of range");
  if (!std::isfinite(value) || value < 0.0 || (i == j && value != 0.0)) {
    throw std::invalid_argument("invalid distance value");
  }
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  values_(a, b) = value;
  values_(b, a) = value;
}

double cophenetic_distance(const Dendrogram& dend, std::size_t i, std::size_t j) {
  const std::size_t n = dend.n_terminals();
  if (i >= n || j >= n) throw std::out_of_range("terminal index out of range");
  if (i == j) return 0.0;
  // Ids grow towards the root, so the lower of the two cursors is always
  // the one that may still be below the common ancestor.
  NodeId a = i;
  NodeId b = j;
  while (a != b) {
    if (a < b) {
      a = *dend.parent(a);
    } else {
      b = *dend.parent(b);
    }
  }
  return dend.level(a);
}

DistanceMatrix cophenetic_matrix(const Dendrogram& dend) {
  const std::size_t n = dend.n_terminals();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
  std::vector<std::vector<std::size_t>> members(dend.n_nodes());
  for (std::size_t t = 0; t < n; ++t) members[t] = {t};
  for (std::size_t k = 0; k < dend.n_internal(); ++k) {
    const Merge& m = dend.merges()[k];
    auto& left = members[m.left];
    auto& right = members[m.right];
    for (std::size_t a : left) {
      for (std::size_t b : right) {
        values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = m.level;
        values(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = m.level;
      }
    }
    auto& merged = members[n + k];
    merged = std::move(left);
    merged.insert(merged.end(), right.begin(), right.end());
    right.clear();
  }
  return DistanceMatrix(std::move(values));
}

namespace {

template <typename Bound>
std::vector<TripleViolation> triangle_violations(const DistanceMatrix& m, double tol,
                                                 Bound bound) {
  std::vector<TripleViolation> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = i + 1; k < n; ++k) {
        if (k == j) continue;
        const double slack = m(i, k) - bound(m(i, j), m(j, k));
        if (slack > tol) out.push_back({i, j, k, slack});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<TripleViolation> verify_ultrametric(const DistanceMatrix& m, double tol) {
  return triangle_violations(m, tol, [](double a, double b) { return std::max(a, b); });
}

std::vector<TripleViolation> verify_metric(const DistanceMatrix& m, double tol) {
  return triangle_violations(m, tol, [](double a, double b) { return a + b; });
}

std::vector<std::size_t> cluster_members(const Dendrogram& dend, NodeId node) {
  return dend.members(node);
}

}  // namespace ultra
