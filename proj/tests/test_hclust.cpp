#include "support.hpp"
#include "ultra/hclust.hpp"
#include "ultra/pipeline.hpp"

#include <doctest.h>

#include <cmath>

using namespace ultra;

namespace {

DistanceMatrix points_1d(std::initializer_list<double> xs) {
  DataTable t;
  t.values.resize(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) t.values(i++, 0) = x;
  return euclidean_matrix(t);
}

constexpr MergeCriterion kReducible[] = {MergeCriterion::single, MergeCriterion::complete,
                                         MergeCriterion::average, MergeCriterion::ward};

}  // namespace

TEST_SUITE_BEGIN("hclust");

TEST_CASE("lance-williams updates") {
  const ClusterSizes one{1, 1, 1};
  CHECK(lance_williams_update(2, 5, 3, one, MergeCriterion::single).value == 2);
  CHECK(lance_williams_update(2, 5, 3, one, MergeCriterion::complete).value == 5);
  CHECK(lance_williams_update(4, 4, 4, one, MergeCriterion::median).value == 3);
  CHECK(lance_williams_update(2, 4, 3, {1, 3, 1}, MergeCriterion::average).value ==
        doctest::Approx(3.5));
  // ward: ((1+1)*2 + (1+1)*4 - 1*3) / 3 = 3
  CHECK(lance_williams_update(2, 4, 3, one, MergeCriterion::ward).value == doctest::Approx(3.0));

  const auto neg = lance_williams_update(0.1, 0.1, 4, one, MergeCriterion::median);
  CHECK(neg.value == 0.0);
  CHECK(neg.clamped);
  CHECK_FALSE(lance_williams_update(4, 4, 4, one, MergeCriterion::median).clamped);
  CHECK_THROWS(lance_williams_update(1, 1, 1, {0, 1, 1}, MergeCriterion::average));
}

TEST_CASE("criterion names round-trip") {
  for (auto c : {MergeCriterion::single, MergeCriterion::complete, MergeCriterion::average,
                 MergeCriterion::ward, MergeCriterion::median}) {
    CHECK(parse_criterion(to_string(c)) == c);
  }
  CHECK_FALSE(parse_criterion("centroid").has_value());
}

TEST_CASE("two points") {
  const auto d = points_1d({0, 1});
  for (auto c : kReducible) {
    const auto a = nn_chain_cluster(d, c);
    const auto b = naive_cluster(d, c);
    REQUIRE(a.n_internal() == 1);
    CHECK(a.merges()[0] == Merge{0, 1, 1.0});
    CHECK(a == b);
  }
  CHECK(naive_cluster(d, MergeCriterion::median).merges()[0] == Merge{0, 1, 1.0});
}

TEST_CASE("single linkage on 0, 1, 3") {
  const auto d = points_1d({0, 1, 3});
  for (const auto& dend : {nn_chain_cluster(d, MergeCriterion::single),
                           naive_cluster(d, MergeCriterion::single)}) {
    CHECK(dend.merges()[0] == Merge{0, 1, 1.0});
    CHECK(dend.merges()[1] == Merge{2, 3, 2.0});
  }
}

TEST_CASE("equilateral triangle uses the tie-break rule") {
  Eigen::Matrix3d v;
  v << 0, 1, 1,
       1, 0, 1,
       1, 1, 0;
  const DistanceMatrix d(v);
  for (auto c : {MergeCriterion::single, MergeCriterion::complete, MergeCriterion::average}) {
    const auto dend = naive_cluster(d, c);
    CHECK(dend.merges()[0] == Merge{0, 1, 1.0});
    CHECK(dend.merges()[1] == Merge{2, 3, 1.0});
  }
}

TEST_CASE("median criterion on the iris rows") {
  const auto iris = embedded_golden_data().iris8;
  const auto dend = naive_cluster(euclidean_matrix(iris), MergeCriterion::median);
  // Expected merge order from an independent run of the textbook median
  // (Gower) recurrence on squared distances.
  const std::vector<std::pair<NodeId, NodeId>> want{{0, 4}, {7, 8},  {2, 3}, {6, 10},
                                                    {1, 11}, {9, 12}, {5, 13}};
  const std::vector<double> levels{0.14142136, 0.18708287, 0.24494897, 0.27386128,
                                   0.39210968, 0.43120471, 0.84829793};
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(dend.merges()[k].left == want[k].first);
    CHECK(dend.merges()[k].right == want[k].second);
    CHECK(dend.merges()[k].level == doctest::Approx(levels[k]).epsilon(1e-7));
  }
  CHECK(dend.raw_levels().size() == 7);
  CHECK_THROWS_AS(nn_chain_cluster(euclidean_matrix(iris), MergeCriterion::median),
                  std::invalid_argument);
}

TEST_CASE("median inversions are repaired and the raw levels kept") {
  // Three nearly equilateral points: merging the closest pair pulls the
  // median of the merged cluster closer to the third point.
  Eigen::Matrix3d v;
  v << 0, 1.0, 1.1,
       1.0, 0, 1.1,
       1.1, 1.1, 0;
  const auto dend = naive_cluster(DistanceMatrix(v), MergeCriterion::median);
  const double raw = dend.raw_levels()[1];
  CHECK(raw == doctest::Approx(std::sqrt(0.5 * 1.21 + 0.5 * 1.21 - 0.25 * 1.0)));
  CHECK(raw < dend.raw_levels()[0]);
  CHECK(dend.merges()[1].level == dend.merges()[0].level);
}

TEST_CASE("nn-chain agrees with the naive oracle") {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 25; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep) * 2;
    const auto d = testing::tie_free_euclidean(n, 3, rng);
    for (auto c : kReducible) {
      const auto fast = nn_chain_cluster(d, c);
      const auto slow = naive_cluster(d, c);
      const auto a = testing::merge_signatures(fast);
      const auto b = testing::merge_signatures(slow);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].members == b[k].members);
        CHECK(a[k].level == doctest::Approx(b[k].level).epsilon(1e-12));
      }
      for (std::size_t k = 1; k < fast.n_internal(); ++k) {
        CHECK(fast.merges()[k - 1].level <= fast.merges()[k].level);
      }
    }
  }
}

TEST_CASE("fifty random points, every reducible criterion") {
  std::mt19937_64 rng(50);
  const auto d = testing::tie_free_euclidean(50, 4, rng);
  for (auto c : kReducible) {
    const auto fast = nn_chain_cluster(d, c);
    const auto slow = naive_cluster(d, c);
    CHECK(fast.n_internal() == 49);
    const auto a = testing::merge_signatures(fast);
    const auto b = testing::merge_signatures(slow);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].members == b[k].members);
      CHECK(a[k].level == doctest::Approx(b[k].level).epsilon(1e-12));
    }
  }
}

TEST_CASE("left child is the older cluster") {
  std::mt19937_64 rng(77);
  const auto d = testing::tie_free_euclidean(30, 2, rng);
  for (auto c : kReducible) {
    for (const Merge& m : nn_chain_cluster(d, c).merges()) CHECK(m.left < m.right);
  }
  for (const Merge& m : naive_cluster(d, MergeCriterion::median).merges()) CHECK(m.left < m.right);
}

TEST_CASE("clustering needs two observations") {
  CHECK_THROWS_AS(naive_cluster(DistanceMatrix::zeros(1), MergeCriterion::single),
                  std::invalid_argument);
  CHECK_THROWS_AS(nn_chain_cluster(DistanceMatrix::zeros(1), MergeCriterion::single),
                  std::invalid_argument);
}

TEST_SUITE_END();
