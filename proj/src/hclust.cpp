#include "ultra/hclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace ultra {

std::string_view to_string(MergeCriterion crit) {
  switch (crit) {
    case MergeCriterion::single: return "single";
    case MergeCriterion::complete: return "complete";
    case MergeCriterion::average: return "average";
    case MergeCriterion::ward: return "ward";
    case MergeCriterion::median: return "median";
  }
  return "?";
}

std::optional<MergeCriterion> parse_criterion(std::string_view name) {
  for (auto c : {MergeCriterion::single, MergeCriterion::complete, MergeCriterion::average,
                 MergeCriterion::ward, MergeCriterion::median}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

bool is_reducible(MergeCriterion crit) { return crit != MergeCriterion::median; }

bool works_on_squares(MergeCriterion crit) {
  return crit == MergeCriterion::ward || crit == MergeCriterion::median;
}

LanceWilliamsCoefficients lance_williams_coefficients(MergeCriterion crit, ClusterSizes sizes) {
  const auto ni = static_cast<double>(sizes.i);
  const auto nj = static_cast<double>(sizes.j);
  const auto nk = static_cast<double>(sizes.k);
  switch (crit) {
    case MergeCriterion::single: return {0.5, 0.5, 0.0, -0.5};
    case MergeCriterion::complete: return {0.5, 0.5, 0.0, 0.5};
    case MergeCriterion::average: return {ni / (ni + nj), nj / (ni + nj), 0.0, 0.0};
    case MergeCriterion::ward: {
      const double total = ni + nj + nk;
      return {(ni + nk) / total, (nj + nk) / total, -nk / total, 0.0};
    }
    case MergeCriterion::median: return {0.5, 0.5, -0.25, 0.0};
  }
  throw std::invalid_argument("unknown merge criterion");
}

LanceWilliamsResult lance_williams_update(double d_ki, double d_kj, double d_ij,
                                          ClusterSizes sizes, MergeCriterion crit) {
  if (sizes.i == 0 || sizes.j == 0 || sizes.k == 0) {
    throw std::invalid_argument("cluster sizes must be positive");
  }
  // Closed forms for min/max keep single and complete linkage exact.
  double value;
  if (crit == MergeCriterion::single) {
    value = std::min(d_ki, d_kj);
  } else if (crit == MergeCriterion::complete) {
    value = std::max(d_ki, d_kj);
  } else {
    const auto c = lance_williams_coefficients(crit, sizes);
    value = c.alpha_i * d_ki + c.alpha_j * d_kj + c.beta * d_ij + c.gamma * std::abs(d_ki - d_kj);
  }
  if (value < 0.0) return {0.0, true};
  return {value, false};
}

namespace {

struct RawMerge {
  NodeId a;
  NodeId b;
  double cost;
};

Eigen::MatrixXd working_matrix(const DistanceMatrix& m, MergeCriterion crit) {
  if (m.size() < 2) throw std::invalid_argument("clustering needs at least 2 observations");
  Eigen::MatrixXd w = m.values();
  if (works_on_squares(crit)) w = w.cwiseProduct(w);
  return w;
}

/// Turns merges (children listed by node id, ids assigned in list order) into
/// a Dendrogram: older child on the left, levels converted and made monotone.
Dendrogram assemble(std::size_t n, const std::vector<RawMerge>& raw, MergeCriterion crit) {
  std::vector<Merge> merges;
  std::vector<double> raw_levels;
  merges.reserve(raw.size());
  raw_levels.reserve(raw.size());
  bool repaired = false;
  for (const RawMerge& r : raw) {
    const double level = works_on_squares(crit) ? std::sqrt(r.cost) : r.cost;
    const NodeId left = std::min(r.a, r.b);
    const NodeId right = std::max(r.a, r.b);
    auto level_of = [&](NodeId id) { return id < n ? 0.0 : merges[id - n].level; };
    const double fixed = std::max({level, level_of(left), level_of(right)});
    repaired = repaired || fixed != level;
    raw_levels.push_back(level);
    merges.push_back({left, right, fixed});
  }
  Dendrogram dend(n, std::move(merges));
  if (repaired || crit == MergeCriterion::median) dend.set_raw_levels(std::move(raw_levels));
  return dend;
}

}  // namespace

Dendrogram naive_cluster(const DistanceMatrix& m, MergeCriterion crit) {
  Eigen::MatrixXd w = working_matrix(m, crit);
  const std::size_t n = m.size();
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);
  std::vector<NodeId> node(n);
  std::iota(node.begin(), node.end(), 0);
  std::vector<std::size_t> size(n, 1);
  std::vector<RawMerge> raw;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    // Closest pair, ties to the smallest (min id, max id).
    std::size_t best_a = 0;
    std::size_t best_b = 1;
    auto best = std::make_tuple(std::numeric_limits<double>::infinity(), NodeId{0}, NodeId{0});
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const std::size_t a = active[x];
        const std::size_t b = active[y];
        auto key = std::make_tuple(w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                                   std::min(node[a], node[b]), std::max(node[a], node[b]));
        if (key < best) {
          best = key;
          best_a = a;
          best_b = b;
        }
      }
    }
    const auto ia = static_cast<Eigen::Index>(best_a);
    const auto ib = static_cast<Eigen::Index>(best_b);
    const double d_ab = w(ia, ib);
    raw.push_back({node[best_a], node[best_b], d_ab});

    for (std::size_t k : active) {
      if (k == best_a || k == best_b) continue;
      const auto ik = static_cast<Eigen::Index>(k);
      const auto upd =
          lance_williams_update(w(ik, ia), w(ik, ib), d_ab, {size[best_a], size[best_b], size[k]}, crit);
      w(ik, ia) = w(ia, ik) = upd.value;
    }
    size[best_a] += size[best_b];
    node[best_a] = n + step;
    active.erase(std::find(active.begin(), active.end(), best_b));
  }
  return assemble(n, raw, crit);
}

Dendrogram nn_chain_cluster(const DistanceMatrix& m, MergeCriterion crit) {
  if (!is_reducible(crit)) {
    throw std::invalid_argument(std::string("criterion '") + std::string(to_string(crit)) +
                                "' is not reducible; use naive_cluster instead");
  }
  Eigen::MatrixXd w = working_matrix(m, crit);
  const std::size_t n = m.size();
  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  // Cluster id per slot in discovery numbering: n + index into `found`.
  std::vector<NodeId> node(n);
  std::iota(node.begin(), node.end(), 0);
  std::vector<RawMerge> found;
  found.reserve(n - 1);
  std::vector<std::size_t> chain;
  chain.reserve(n);
  std::size_t first_active = 0;

  while (found.size() + 1 < n) {
    if (chain.empty()) {
      while (!active[first_active]) ++first_active;
      chain.push_back(first_active);
    }
    const std::size_t a = chain.back();
    const auto ia = static_cast<Eigen::Index>(a);
    const bool has_prev = chain.size() > 1;
    const std::size_t prev = has_prev ? chain[chain.size() - 2] : a;

    // Nearest active neighbour of a; the previous chain element wins ties
    // so the chain cannot cycle.
    std::size_t b = has_prev ? prev : n;
    double best = has_prev ? w(static_cast<Eigen::Index>(prev), ia)
                           : std::numeric_limits<double>::infinity();
    // Column scan: w is symmetric and column-major.
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == a) continue;
      const double v = w(static_cast<Eigen::Index>(c), ia);
      if (v < best) {
        best = v;
        b = c;
      }
    }

    if (!has_prev || b != prev) {
      chain.push_back(b);
      continue;
    }

    chain.pop_back();
    chain.pop_back();
    const std::size_t keep = std::min(a, b);
    const std::size_t drop = std::max(a, b);
    const auto ik = static_cast<Eigen::Index>(keep);
    const auto id = static_cast<Eigen::Index>(drop);
    found.push_back({node[keep], node[drop], best});
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == keep || c == drop) continue;
      const auto ic = static_cast<Eigen::Index>(c);
      const auto upd =
          lance_williams_update(w(ic, ik), w(ic, id), best, {size[keep], size[drop], size[c]}, crit);
      w(ic, ik) = w(ik, ic) = upd.value;
    }
    size[keep] += size[drop];
    active[drop] = false;
    node[keep] = n + found.size() - 1;
  }

  // Reorder by cost; a parent never precedes its children because its cost
  // is at least theirs (reducibility) and the sort is stable. The running
  // maximum absorbs last-bit rounding in the averaged updates.
  std::vector<double> key(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    double v = found[k].cost;
    for (NodeId child : {found[k].a, found[k].b}) {
      if (child >= n) v = std::max(v, key[child - n]);
    }
    key[k] = v;
  }
  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return key[x] < key[y]; });
  std::vector<NodeId> relabel(found.size());
  for (std::size_t r = 0; r < order.size(); ++r) relabel[order[r]] = n + r;
  auto remap = [&](NodeId id) { return id < n ? id : relabel[id - n]; };
  std::vector<RawMerge> sorted;
  sorted.reserve(found.size());
  for (std::size_t k : order) {
    sorted.push_back({remap(found[k].a), remap(found[k].b), found[k].cost});
  }
  return assemble(n, sorted, crit);
}

}  // namespace ultra
