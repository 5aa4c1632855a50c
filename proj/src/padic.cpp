#include "ultra/padic.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>

namespace ultra {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

PadicCode encode(const Dendrogram& dend, unsigned p, std::size_t terminal) {
  if (!is_prime(p)) throw std::invalid_argument("p-adic base must be prime, got " + std::to_string(p));
  PadicCode code{p, {}};
  NodeId child = terminal;
  for (NodeId node : dend.root_path(terminal)) {
    code.coeffs[dend.rank(node)] = dend.branch_label(child);
    child = node;
  }
  return code;
}

std::vector<PadicCode> encode_all(const Dendrogram& dend, unsigned p) {
  std::vector<PadicCode> out;
  out.reserve(dend.n_terminals());
  for (std::size_t t = 0; t < dend.n_terminals(); ++t) out.push_back(encode(dend, p, t));
  return out;
}

BigInt decimal_exact(const PadicCode& code) {
  BigInt total = 0;
  for (const auto& [level, coeff] : code.coeffs) {
    BigInt term = boost::multiprecision::pow(BigInt(code.p), static_cast<unsigned>(level));
    total += coeff * term;
  }
  return total;
}

double decimal_value(const PadicCode& code) {
  return decimal_exact(code).convert_to<double>();
}

bool check_uniqueness(const Dendrogram& dend, unsigned p) {
  std::set<BigInt> seen;
  for (std::size_t t = 0; t < dend.n_terminals(); ++t) {
    if (!seen.insert(decimal_exact(encode(dend, p, t))).second) return false;
  }
  return true;
}

PadicCode dilate(const PadicCode& code) {
  PadicCode out{code.p, {}};
  for (const auto& [level, coeff] : code.coeffs) {
    if (level >= 2) out.coeffs.emplace(level - 1, coeff);
  }
  return out;
}

std::vector<std::vector<std::size_t>> cluster_chain(const Dendrogram& dend, std::size_t terminal) {
  std::vector<std::vector<std::size_t>> chain{{terminal}};
  for (NodeId node : dend.root_path(terminal)) chain.push_back(dend.members(node));
  return chain;
}

bool check_spherical_completeness(const Dendrogram& dend) {
  // Each maximal descending chain runs from the root to one terminal.
  struct Frame {
    NodeId node;
    std::vector<std::size_t> intersection;
  };
  std::vector<Frame> stack{{dend.root(), dend.members(dend.root())}};
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    if (frame.intersection.empty()) return false;
    if (dend.is_terminal(frame.node)) continue;
    const Merge& m = dend.merge_of(frame.node);
    for (NodeId child : {m.left, m.right}) {
      const auto members = dend.members(child);
      std::vector<std::size_t> next;
      std::set_intersection(frame.intersection.begin(), frame.intersection.end(), members.begin(),
                            members.end(), std::back_inserter(next));
      stack.push_back({child, std::move(next)});
    }
  }
  return true;
}

RaisedHierarchy raise_one_level(const Dendrogram& dend) {
  const std::size_t n = dend.n_terminals();
  if (n < 3) throw std::invalid_argument("raising a hierarchy needs at least 3 terminals");
  const Merge& bottom = dend.merges().front();
  const std::size_t keep = std::min(bottom.left, bottom.right);
  const std::size_t gone = std::max(bottom.left, bottom.right);

  std::vector<std::size_t> terminal_map(n);
  for (std::size_t t = 0; t < n; ++t) terminal_map[t] = t < gone ? t : t - 1;
  terminal_map[gone] = terminal_map[keep];

  auto remap = [&](NodeId id) -> NodeId {
    if (id < n) return terminal_map[id];
    if (id == n) return terminal_map[keep];
    return id - 2;  // (n-1) new terminals, one fewer merge before it
  };
  std::vector<Merge> merges;
  for (std::size_t k = 1; k < dend.n_internal(); ++k) {
    const Merge& m = dend.merges()[k];
    merges.push_back({remap(m.left), remap(m.right), m.level});
  }
  return {Dendrogram(n - 1, std::move(merges)), std::move(terminal_map)};
}

}  // namespace ultra
