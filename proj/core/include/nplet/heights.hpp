#pragma once

// Weil heights, Mahler measures and the explicit bounds that make the
// quadruple case a finite computation. Natural logarithms throughout.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nplet/poly.hpp"
#include "nplet/ranktest.hpp"

namespace nplet {

struct HeightReport {
  DensePolynomial minpoly;
  std::int64_t degree = 0;
  double mahler_measure = 1.0;
  double log_mahler_measure = 0.0;
  /// log M(p) / deg p.
  double weil_height = 0.0;
  /// Bound on |computed - true| weil_height from the root inclusion radii.
  double height_error = 0.0;
  /// Overlapping inclusion disks or non-convergence; error bound widened.
  bool ill_conditioned = false;
  bool is_reciprocal = false;
};

/// z^deg p(1/z) == +-p(z).
bool is_reciprocal(const DensePolynomial& p);

/// Throws InvalidInput for constant p.
HeightReport weil_height(const DensePolynomial& p);

/// Lower bound on log M for non-reciprocal integer polynomials.
inline constexpr double kSmythLowerBound = 0.28;
/// The real root of z^3 = z + 1.
double smyth_theta0();

/// True iff p is reciprocal or degree * height >= 0.28. False means a
/// computation bug, since the bound is a theorem.
bool smyth_check(const HeightReport& report);

/// Exponent ladder m_0 > m_1 > ... > m_h = 0 of a vanishing sum
/// xi^(m_0) + gamma_1 xi^(m_1) + ... + gamma_h, the projective height of
/// (1 : gamma_1 : ... : gamma_h) and the index l of a non-vanishing initial
/// subsum.
struct Lemma4Input {
  std::vector<std::int64_t> exponents;
  double coefficient_height = 0.0;
  std::size_t split = 0;
};

/// (coefficient_height + log max{l + 1, h - l}) / (m_l - m_(l+1)).
/// Throws InvalidInput on a malformed ladder or l >= h.
double lemma4_bound(const Lemma4Input& input);

/// h(c_0 : ... : c_k) for integers: log(max |c_i| / gcd(c_i)).
double projective_height(std::span<const Integer> coefficients);

/// log(8^3 / 18).
double step1_log_constant();

/// (9 log d - log(512/18)) / d, the height bound for every solution with
/// largest exponent d. Throws InvalidInput for d < 2.
double step1_bound(double d);

struct ThresholdSides {
  double d = 0.0;
  /// 0.28 d^(1/3) / 96^(2/3).
  double lhs = 0.0;
  /// 9 log d - log(512/18).
  double rhs = 0.0;
  /// lhs <= rhs: d is not excluded.
  bool holds = false;
};

ThresholdSides threshold_sides(double d);

struct ThresholdSolution {
  /// Largest root of lhs = rhs; every solution has d <= d_star.
  double d_star = 0.0;
  ThresholdSides below;  // bracket end where the inequality holds
  ThresholdSides above;  // bracket end where it fails
  int iterations = 0;
};

/// Bisection in log d to relative tolerance 1e-9.
ThresholdSolution final_threshold();

struct ConsistencyReport {
  bool vacuous = false;
  bool routed_to_classification = false;
  std::optional<HeightReport> height;
  double height_bound = 0.0;
  bool height_ok = true;
  std::optional<std::int64_t> degree_bound;
  bool degree_ok = true;
  bool smyth_ok = true;
  /// A reciprocal witness contradicts the five-distinct-zeros argument.
  bool reciprocal_witness = false;
  bool consistent = true;
  /// Diagnostic only: log max(|lead|, |const|) / deg.
  double trivial_height_lower_bound = 0.0;
  std::string to_json() const;
};

/// Checks an anomalous certificate's residual against the height bound for
/// d = a_n, the degree cap (when given) and Smyth's inequality.
ConsistencyReport solution_consistency(const RankCertificate& cert,
                                       std::optional<std::int64_t> degree_bound);

/// Diagnostic for the unit case: (d (d - r) / (s (s - r)))^(1 / (d - s)),
/// the approximate cap on |conjugate| of a unit solution. Never used to prune.
double unit_conjugate_bound(std::int64_t d, std::int64_t r, std::int64_t s);

}  // namespace nplet
