#include <algorithm>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "nplet/roots.hpp"

using namespace nplet;

namespace {

// Eigenvalues of the companion matrix, as an independent root oracle.
std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
  const auto n = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double max_matching_distance(const std::vector<RootApproximation>& got, std::vector<Complex> want) {
  double worst = 0.0;
  for (const auto& r : got) {
    auto it = std::min_element(want.begin(), want.end(), [&](Complex a, Complex b) {
      return std::abs(a - r.value) < std::abs(b - r.value);
    });
    worst = std::max(worst, std::abs(*it - r.value));
    want.erase(it);
  }
  return worst;
}

}  // namespace

TEST(Roots, UnitsOfOrderFive) {
  // z^5 - 1
  const std::vector<Complex> c{-1, 0, 0, 0, 0, 1};
  const auto r = find_roots(c);
  ASSERT_TRUE(r.converged);
  ASSERT_EQ(r.roots.size(), 5u);
  for (const auto& x : r.roots) {
    EXPECT_NEAR(std::abs(x.value), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(std::pow(x.value, 5.0) - 1.0), 0.0, 1e-13);
  }
  EXPECT_NEAR(r.roots.front().value.real(), std::cos(-4 * std::numbers::pi / 5), 1e-13);
}

TEST(Roots, ZeroRootsSplitExactly) {
  // z^3 (z - 2)
  const std::vector<Complex> c{0, 0, 0, -2, 1};
  const auto r = find_roots(c);
  ASSERT_EQ(r.roots.size(), 4u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.roots[i].value, Complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(r.roots[3].value - 2.0), 0.0, 1e-14);
}

TEST(Roots, LeadingZerosIgnored) {
  const std::vector<Complex> c{-6, 1, 1, 0, 0};
  const auto r = find_roots(c);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(r.roots[0].value.real(), 2.0, 1e-14);
  EXPECT_NEAR(r.roots[1].value.real(), -3.0, 1e-14);
}

TEST(Roots, InclusionRadiusContainsTrueRoot) {
  // (z - 1/3)(z - 7)(z^2 + 2)
  const std::vector<Complex> lin1{-1.0 / 3.0, 1}, lin2{-7, 1};
  std::vector<Complex> c{-14.0 / 3.0, 22.0 / 3.0 + 0.0, -7.0 / 3.0 - 7.0 + 2.0, -22.0 / 3.0 + 0.0, 1};
  // Expand numerically instead of by hand to avoid slips.
  std::vector<Complex> p{1};
  for (const std::vector<Complex>& f : {lin1, lin2, std::vector<Complex>{2, 0, 1}}) {
    std::vector<Complex> q(p.size() + f.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) q[i + j] += p[i] * f[j];
    }
    p = q;
  }
  const auto r = find_roots(p);
  const std::vector<Complex> truth{1.0 / 3.0, 7.0, Complex(0, std::sqrt(2.0)), Complex(0, -std::sqrt(2.0))};
  for (const auto& t : truth) {
    bool inside = false;
    for (const auto& x : r.roots) inside = inside || std::abs(x.value - t) <= x.radius + 1e-15;
    EXPECT_TRUE(inside);
  }
  (void)c;
}

TEST(Roots, MultipleRootFlaggedAsClustered) {
  // (z - 1)^4
  const std::vector<Complex> c{1, -4, 6, -4, 1};
  const auto r = find_roots(c);
  EXPECT_TRUE(r.clustered);
  for (const auto& x : r.roots) EXPECT_NEAR(std::abs(x.value - 1.0), 0.0, 1e-3);
}

TEST(Roots, AgreesWithCompanionEigenvalues) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 2 + trial % 30;
    std::vector<Complex> c;
    for (int i = 0; i <= degree; ++i) c.emplace_back(coef(rng));
    if (c.back() == 0.0) c.back() = 1.0;
    if (c.front() == 0.0) c.front() = 1.0;
    const auto r = find_roots(c);
    ASSERT_TRUE(r.converged);
    ASSERT_EQ(r.roots.size(), static_cast<std::size_t>(degree));
    EXPECT_LT(max_matching_distance(r.roots, companion_roots(c)), 1e-7) << "degree " << degree;
  }
}

TEST(Roots, SortedByModulusThenArgument) {
  const std::vector<Complex> c{-8, 0, 0, 1};  // z^3 - 8
  const auto r = find_roots(c);
  for (std::size_t i = 1; i < r.roots.size(); ++i) {
    const auto& a = r.roots[i - 1].value;
    const auto& b = r.roots[i].value;
    EXPECT_LE(std::abs(a), std::abs(b) + 1e-12);
  }
}

TEST(Roots, EvaluateLargeArgument) {
  const std::vector<Complex> c{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
  EXPECT_NEAR(std::abs(evaluate(c, Complex(10.0, 0.0)) - (1e10 + 1.0)), 0.0, 1e-3);
}
