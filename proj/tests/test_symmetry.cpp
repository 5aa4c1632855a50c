#include "support.hpp"
#include "ultra/haar.hpp"
#include "ultra/padic.hpp"
#include "ultra/pipeline.hpp"
#include "ultra/symmetry.hpp"

#include <doctest.h>

using namespace ultra;

namespace {

NodePermutation random_permutation(const Dendrogram& d, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  NodePermutation p;
  for (NodeId node = d.n_terminals(); node < d.n_nodes(); ++node) {
    if (coin(rng)) p.swapped.insert(node);
  }
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("symmetry");

TEST_CASE("identity and involution") {
  const auto tree = embedded_golden_data().ranked8;
  CHECK(apply_permutation(tree, {}) == tree);
  const NodePermutation p{{8, 12, 14}};
  const auto once = apply_permutation(tree, p);
  CHECK_FALSE(once == tree);
  CHECK(apply_permutation(once, p) == tree);
  CHECK_THROWS_AS(apply_permutation(tree, NodePermutation{{3}}), std::out_of_range);
  CHECK_THROWS_AS(apply_permutation(tree, NodePermutation{{15}}), std::out_of_range);
}

TEST_CASE("group order") {
  CHECK(automorphism_count(Dendrogram(2, {{0, 1, 1}})) == 2);
  CHECK(automorphism_count(Dendrogram(3, {{0, 1, 1}, {3, 2, 2}})) == 4);
  CHECK(automorphism_count(embedded_golden_data().ranked8) == 128);
  std::mt19937_64 rng(1);
  CHECK(automorphism_count(testing::random_dendrogram(101, rng)) ==
        boost::multiprecision::pow(BigInt(2), 100));
}

TEST_CASE("canonical form") {
  const Dendrogram swapped(2, {{1, 0, 1.0}});
  const auto [canon, perm] = canonicalize(swapped);
  CHECK(canon.merges()[0] == Merge{0, 1, 1.0});
  CHECK(perm.swapped == std::set<NodeId>{2});

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 30; ++rep) {
    const Dendrogram d = testing::random_dendrogram(3 + rep % 12, rng);
    const auto c = canonicalize(d).first;
    CHECK(canonicalize(c).first == c);
    CHECK(canonicalize(c).second.is_identity());
    CHECK(canonicalize(apply_permutation(d, random_permutation(d, rng))).first == c);
    for (const Merge& m : c.merges()) CHECK(c.members(m.left).front() < c.members(m.right).front());
  }
}

TEST_CASE("child swaps preserve distances and flip signs only where swapped") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rep % 14;
    const Dendrogram d = testing::random_dendrogram(n, rng);
    const NodePermutation p = random_permutation(d, rng);
    const Dendrogram g = apply_permutation(d, p);

    CHECK(cophenetic_matrix(g).values() == cophenetic_matrix(d).values());
    for (NodeId node = 0; node < d.n_nodes(); ++node) CHECK(g.members(node) == d.members(node));

    const auto x = testing::random_table(n, 3, -10, 10, rng);
    const auto hd = forward(d, x);
    const auto hg = forward(g, x);
    CHECK(hg.smooth == hd.smooth);
    for (std::size_t k = 0; k < d.n_internal(); ++k) {
      const NodeId node = n + k;
      const double s = p.swapped.count(node) ? -1.0 : 1.0;
      CHECK((hg.detail(node) - s * hd.detail(node)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK((inverse(hg) - x.values).cwiseAbs().maxCoeff() <= 1e-12);

    for (std::size_t t = 0; t < n; ++t) {
      const auto cd = encode(d, 3, t).coeffs;
      const auto cg = encode(g, 3, t).coeffs;
      REQUIRE(cd.size() == cg.size());
      for (const auto& [level, c] : cd) {
        const NodeId node = d.node_at_rank(level);
        CHECK(cg.at(level) == (p.swapped.count(node) ? -c : c));
      }
    }
  }
}

TEST_SUITE_END();
