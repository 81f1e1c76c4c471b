#pragma once

#include <cstdint>
#include <vector>

#include "nplet/poly.hpp"

namespace nplet {

struct CyclotomicVerdict {
  bool is_product_of_cyclotomics = false;
  /// Distinct orders m with Phi_m | p, ascending; empty when false.
  std::vector<std::uint64_t> orders;
};

/// Decides whether every complex root of p is a root of unity.
///
/// Numeric roots of the squarefree part prune first; the verdict is then
/// confirmed exactly. A "true" is confirmed by the squarefree part dividing
/// z^N - 1 for N = lcm(orders). A "false" is confirmed by a non-unit leading
/// or constant coefficient, or by a Graeffe iterate whose coefficients break
/// the binomial bound that every product of cyclotomics respects.
///
/// Preconditions: p nonconstant, p(0) != 0 (InvalidInput otherwise).
/// Throws Inconclusive when the numeric and exact evidence disagree.
CyclotomicVerdict classify_cyclotomic(const DensePolynomial& p);

/// z^N - 1 mod p for monic-up-to-sign p, by repeated squaring.
DensePolynomial power_of_z_minus_one_mod(std::uint64_t n, const DensePolynomial& p);

/// Polynomial whose roots are the squares of the roots of p.
DensePolynomial graeffe_step(const DensePolynomial& p);

}  // namespace nplet
