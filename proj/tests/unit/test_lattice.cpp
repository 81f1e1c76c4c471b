#include <random>

#include <gtest/gtest.h>

#include "nplet/errors.hpp"
#include "nplet/lattice.hpp"
#include "nplet/search.hpp"
#include "oracles.hpp"

using namespace nplet;

namespace {

Integer norm_sq(std::span<const std::int64_t> a) {
  Integer s = 0;
  for (auto x : a) s += Integer(static_cast<long>(x)) * static_cast<long>(x);
  return s;
}

Integer square_det(const std::vector<IntVector>& m) {
  std::vector<std::vector<Integer>> z;
  for (const auto& r : m) {
    std::vector<Integer> row;
    for (auto x : r) row.emplace_back(static_cast<long>(x));
    z.push_back(row);
  }
  return brute::leibniz_determinant(z);
}

}  // namespace

TEST(Norms, Basics) {
  const IntVector v{1, -3, 0, 2};
  EXPECT_EQ(l1_norm(v), 6);
  EXPECT_EQ(degree_norm(v), 3);
  EXPECT_EQ(dot(v, IntVector{1, 1, 1, 1}), 0);
  EXPECT_EQ(degree_norm(IntVector{0, 0}), 0);
}

TEST(Kernel, OrthogonalAndFullCovolume) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto a = brute::random_coprime_tuple(rng, 3 + i % 4, 200);
    const auto b = kernel_basis(a);
    ASSERT_EQ(b.size(), a.size() - 1);
    for (const auto& v : b) EXPECT_EQ(dot(v, a), 0);
    EXPECT_EQ(gram_determinant(b), norm_sq(a));
  }
  EXPECT_THROW(kernel_basis(std::vector<std::int64_t>{5}), InvalidInput);
}

TEST(Lattice, SmallestQuadruple) {
  const auto b = orthogonal_lattice(ExponentTuple::make({1, 2, 3, 4}));
  ASSERT_EQ(b.vectors.size(), 3u);
  EXPECT_EQ(b.norms[0].l1, 3);
  EXPECT_EQ(b.norms[1].l1, 3);
  for (const auto& v : b.vectors) EXPECT_EQ(dot(v, IntVector{1, 2, 3, 4}), 0);
  EXPECT_EQ(gram_determinant(b.vectors), 30);
  EXPECT_EQ(to_text(b).substr(0, 1), "(");
  EXPECT_NE(to_text(b).find("[l1=3,deg="), std::string::npos);
}

TEST(Lattice, BasisPropertiesForOtherLengths) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    const auto a = brute::random_coprime_tuple(rng, 3 + i % 4, 60);
    const auto b = orthogonal_lattice(ExponentTuple::make(a));
    ASSERT_EQ(b.vectors.size(), a.size() - 1);
    EXPECT_EQ(gram_determinant(b.vectors), norm_sq(a));
    EXPECT_LE(b.norms[0].l1, b.norms[1].l1);
    for (std::size_t k = 2; k < b.norms.size(); ++k) EXPECT_LE(b.norms[k - 1].l1, b.norms[k].l1);
  }
}

// Exhaustive agreement with a brute-force scan of the whole L1 ball.
TEST(Lattice, MinimaMatchBruteForceUpTo30) {
  TupleEnumerator it(4, 30);
  std::size_t checked = 0;
  while (it.next()) {
    const auto& a = it.current();
    const auto b = orthogonal_lattice(ExponentTuple::make(a));
    const auto brute = brute::brute_l1_minima(a, b.norms[1].l1);
    ASSERT_EQ(brute.lambda1, b.norms[0].l1) << ExponentTuple::make(a).to_string();
    ASSERT_EQ(brute.lambda2, b.norms[1].l1) << ExponentTuple::make(a).to_string();
    ++checked;
  }
  EXPECT_GT(checked, 20000u);
}

TEST(Completion, UnimodularWithGivenRows) {
  const std::vector<IntVector> rows{{2, 3, 5, 0}, {1, 1, 1, 1}};
  const auto m = complete_to_unimodular(rows, 4);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_EQ(m[0], rows[0]);
  EXPECT_EQ(m[1], rows[1]);
  EXPECT_EQ(abs(square_det(m)), 1);
}

TEST(Completion, RejectsImprimitive) {
  EXPECT_THROW(complete_to_unimodular({{2, 4, 0}}, 3), InvalidInput);
  EXPECT_THROW(complete_to_unimodular({{1, 0}, {0, 2}}, 2), InvalidInput);
  EXPECT_THROW(complete_to_unimodular({{1}, {1}}, 1), InvalidInput);
}

TEST(Completion, RandomPrimitivePairs) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> c(-9, 9);
  int done = 0;
  while (done < 100) {
    std::vector<IntVector> rows(2, IntVector(4));
    for (auto& r : rows) {
      for (auto& x : r) x = c(rng);
    }
    try {
      const auto m = complete_to_unimodular(rows, 4);
      EXPECT_EQ(abs(square_det(m)), 1);
      ++done;
    } catch (const InvalidInput&) {
    }
  }
}

TEST(DegreeBound, ExactFloor) {
  EXPECT_EQ(degree_bound(1), 96);
  EXPECT_EQ(degree_bound(4), 241);  // 96 * 4^(2/3) = 241.9
  EXPECT_EQ(degree_bound(5), 280);
  EXPECT_EQ(degree_bound(100), 2068);
  EXPECT_EQ(degree_bound(8), 384);  // exact cube: 96 * 4
  EXPECT_THROW(degree_bound(0), InvalidInput);
  EXPECT_THROW(degree_bound(ExponentTuple::make({1, 2, 3})), InvalidInput);
  EXPECT_EQ(degree_bound(ExponentTuple::make({1, 2, 3, 5})), 280);
}

TEST(Minkowski, HoldsAndReportsMargin) {
  const auto m = minkowski_check(orthogonal_lattice(ExponentTuple::make({1, 2, 3, 5})));
  EXPECT_NEAR(m.bound, 280.7, 0.05);
  EXPECT_LE(static_cast<double>(m.product), m.bound);
  EXPECT_NEAR(m.margin, static_cast<double>(m.product) / m.bound, 1e-15);
}

TEST(Minkowski, ViolationThrows) {
  LatticeBasis fake{ExponentTuple::make({1, 2, 3, 4}), {{1, 1, -1, 0}, {1, 0, 1, -1}, {0, 2, 0, -1}},
                    {{100, 1}, {100, 1}, {3, 2}}};
  EXPECT_THROW(minkowski_check(fake), TheoremViolation);
  EXPECT_THROW(minkowski_check(orthogonal_lattice(ExponentTuple::make({1, 2, 3}))), InvalidInput);
}

TEST(Minkowski, DegreeNormRatio) {
  const auto b = orthogonal_lattice(ExponentTuple::make({1, 2, 3, 4}));
  EXPECT_NEAR(degree_norm_ratio(b),
              static_cast<double>(b.norms[0].degree * b.norms[1].degree) / std::pow(4.0, 2.0 / 3.0), 1e-15);
}
