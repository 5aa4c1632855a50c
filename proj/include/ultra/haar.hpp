#ifndef ULTRA_HAAR_HPP
#define ULTRA_HAAR_HPP

#include "ultra/core.hpp"
#include "ultra/dissim.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultra {

/**
 * Haar wavelet transform of a dendrogram (mean-based, unnormalised).
 *
 * At an internal node with left child smooth f' and right child smooth f'',
 *   s = (f' + f'') / 2,   d = s - f'' = (f' - f'') / 2,
 * so the left (+1) child is recovered as s + d and the right (-1) child as
 * s - d. Row k of `details` belongs to internal node n + k (rank k + 1).
 */
template <typename Scalar = double>
struct HaarTransform {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Dendrogram dend;
  Vector smooth;
  Matrix details;

  std::size_t dims() const { return static_cast<std::size_t>(smooth.size()); }

  auto detail(NodeId internal) const {
    return details.row(static_cast<Eigen::Index>(dend.rank(internal) - 1));
  }
  auto detail(NodeId internal) {
    return details.row(static_cast<Eigen::Index>(dend.rank(internal) - 1));
  }

  /// Sign with which `node`'s detail enters the reconstruction of `child`.
  int sign(NodeId node, NodeId child) const {
    if (dend.parent(child) != node) {
      throw std::invalid_argument("node " + std::to_string(child) + " is not a child of " +
                                  std::to_string(node));
    }
    return dend.branch_label(child);
  }
};

template <typename Derived>
HaarTransform<typename Derived::Scalar> forward(const Dendrogram& dend,
                                                const Eigen::MatrixBase<Derived>& data) {
  using Scalar = typename Derived::Scalar;
  using Matrix = typename HaarTransform<Scalar>::Matrix;
  const std::size_t n = dend.n_terminals();
  if (static_cast<std::size_t>(data.rows()) != n) {
    throw std::invalid_argument("data has " + std::to_string(data.rows()) +
                                " rows but the dendrogram has " + std::to_string(n) +
                                " terminals");
  }
  const Eigen::Index m = data.cols();
  // Smooths of all nodes; terminal smooths are the data rows.
  Matrix smooths(static_cast<Eigen::Index>(dend.n_nodes()), m);
  smooths.topRows(static_cast<Eigen::Index>(n)) = data;
  Matrix details(static_cast<Eigen::Index>(dend.n_internal()), m);
  for (std::size_t k = 0; k < dend.n_internal(); ++k) {
    const Merge& mg = dend.merges()[k];
    const auto left = smooths.row(static_cast<Eigen::Index>(mg.left));
    const auto right = smooths.row(static_cast<Eigen::Index>(mg.right));
    const auto self = static_cast<Eigen::Index>(n + k);
    smooths.row(self) = (left + right) / Scalar(2);
    details.row(static_cast<Eigen::Index>(k)) = smooths.row(self) - right;
  }
  HaarTransform<Scalar> out{dend, smooths.row(static_cast<Eigen::Index>(dend.root())).transpose(),
                            std::move(details)};
  return out;
}

inline HaarTransform<double> forward(const Dendrogram& dend, const DataTable& data) {
  return forward(dend, data.values);
}

/// Exact inverse of forward: one row per terminal.
template <typename Scalar>
typename HaarTransform<Scalar>::Matrix inverse(const HaarTransform<Scalar>& ht) {
  using Matrix = typename HaarTransform<Scalar>::Matrix;
  const Dendrogram& dend = ht.dend;
  const std::size_t n = dend.n_terminals();
  const auto m = static_cast<Eigen::Index>(ht.dims());
  Matrix smooths(static_cast<Eigen::Index>(dend.n_nodes()), m);
  smooths.row(static_cast<Eigen::Index>(dend.root())) = ht.smooth.transpose();
  for (std::size_t k = dend.n_internal(); k-- > 0;) {
    const Merge& mg = dend.merges()[k];
    const auto self = smooths.row(static_cast<Eigen::Index>(n + k));
    const auto d = ht.details.row(static_cast<Eigen::Index>(k));
    smooths.row(static_cast<Eigen::Index>(mg.left)) = self + d;
    smooths.row(static_cast<Eigen::Index>(mg.right)) = self - d;
  }
  return smooths.topRows(static_cast<Eigen::Index>(n));
}

/// Root-to-terminal reconstruction of a single row, summed in the same order
/// as inverse() so the two agree bit for bit.
template <typename Scalar>
typename HaarTransform<Scalar>::Vector reconstruct_one(const HaarTransform<Scalar>& ht,
                                                       std::size_t terminal) {
  const auto path = ht.dend.root_path(terminal);
  typename HaarTransform<Scalar>::Vector x = ht.smooth;
  for (std::size_t idx = path.size(); idx-- > 0;) {
    const NodeId child = idx == 0 ? terminal : path[idx - 1];
    const auto d = ht.detail(path[idx]).transpose();
    if (ht.dend.branch_label(child) > 0) {
      x = x + d;
    } else {
      x = x - d;
    }
  }
  return x;
}

template <typename Scalar>
struct ChainStep {
  typename HaarTransform<Scalar>::Vector partial;
  Scalar error;  // Euclidean distance to the reconstructed observation
};

/// s, s +/- d_root, ... down to the observation itself (error 0 at the end).
template <typename Scalar>
std::vector<ChainStep<Scalar>> approximation_chain(const HaarTransform<Scalar>& ht,
                                                   std::size_t terminal) {
  const auto path = ht.dend.root_path(terminal);
  std::vector<typename HaarTransform<Scalar>::Vector> partials{ht.smooth};
  for (std::size_t idx = path.size(); idx-- > 0;) {
    const NodeId child = idx == 0 ? terminal : path[idx - 1];
    const auto d = ht.detail(path[idx]).transpose();
    if (ht.dend.branch_label(child) > 0) {
      partials.push_back(partials.back() + d);
    } else {
      partials.push_back(partials.back() - d);
    }
  }
  const auto& target = partials.back();
  std::vector<ChainStep<Scalar>> chain;
  chain.reserve(partials.size());
  for (auto& p : partials) {
    const Scalar err = (p - target).norm();
    chain.push_back({std::move(p), err});
  }
  return chain;
}

enum class ThresholdMode {
  norm,        // zero whole detail vectors with Euclidean norm < tau
  coordinate,  // zero individual coefficients with |value| < tau
};

/// Hard thresholding of the detail coefficients; the smooth is kept.
template <typename Scalar>
HaarTransform<Scalar> threshold_regress(const HaarTransform<Scalar>& ht, Scalar tau,
                                        ThresholdMode mode = ThresholdMode::norm) {
  if (!(tau >= Scalar(0))) throw std::invalid_argument("threshold must be non-negative");
  HaarTransform<Scalar> out = ht;
  for (Eigen::Index k = 0; k < out.details.rows(); ++k) {
    auto row = out.details.row(k);
    if (mode == ThresholdMode::norm) {
      if (row.norm() < tau) row.setZero();
    } else {
      for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (std::abs(row(j)) < tau) row(j) = Scalar(0);
      }
    }
  }
  return out;
}

/// Forward transform of an external signal using an existing hierarchy.
template <typename Derived>
HaarTransform<typename Derived::Scalar> apply_to_signal(const Dendrogram& dend,
                                                        const Eigen::MatrixBase<Derived>& signal) {
  if (static_cast<std::size_t>(signal.rows()) != dend.n_terminals()) {
    throw std::invalid_argument("signal needs one row per terminal (" +
                                std::to_string(dend.n_terminals()) + "), got " +
                                std::to_string(signal.rows()));
  }
  return forward(dend, signal);
}

inline HaarTransform<double> apply_to_signal(const Dendrogram& dend, const DataTable& signal) {
  return apply_to_signal(dend, signal.values);
}

}  // namespace ultra

#endif  // ULTRA_HAAR_HPP
