#pragma once

// Exact univariate integer polynomials in z.
//
// Two representations are kept: SparseIntegerPolynomial, which is what the
// minor systems and certificates carry, and DensePolynomial, the workhorse
// for division and GCD. Both are canonical at all times (no stored zero
// coefficients, no trailing zeros), so operator== is structural equality.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace nplet {

using Integer = mpz_class;

/// Sparse to dense conversion is refused beyond this degree.
inline constexpr std::int64_t kDenseDegreeCap = 10000;

class DensePolynomial;

struct Term {
  std::uint64_t exponent = 0;
  Integer coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

class SparseIntegerPolynomial {
 public:
  SparseIntegerPolynomial() = default;

  /// Sorts by exponent, merges duplicates and drops zero coefficients.
  static SparseIntegerPolynomial from_terms(std::vector<Term> terms);
  static SparseIntegerPolynomial monomial(Integer coefficient, std::uint64_t exponent);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const;
  Integer coefficient(std::uint64_t exponent) const;

  Integer evaluate(const Integer& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;

  /// p(z^h).
  SparseIntegerPolynomial substitute_power(std::uint64_t h) const;

  /// Throws ArithmeticRefusal past kDenseDegreeCap.
  DensePolynomial to_dense() const;

  SparseIntegerPolynomial operator-() const;
  friend SparseIntegerPolynomial operator+(const SparseIntegerPolynomial& p,
                                           const SparseIntegerPolynomial& q);
  friend SparseIntegerPolynomial operator-(const SparseIntegerPolynomial& p,
                                           const SparseIntegerPolynomial& q);
  friend SparseIntegerPolynomial operator*(const SparseIntegerPolynomial& p,
                                           const SparseIntegerPolynomial& q);
  friend SparseIntegerPolynomial operator*(const Integer& c, const SparseIntegerPolynomial& p);
  friend bool operator==(const SparseIntegerPolynomial&, const SparseIntegerPolynomial&) = default;

 private:
  std::vector<Term> terms_;
};

class DensePolynomial {
 public:
  DensePolynomial() = default;
  /// coefficients[i] multiplies z^i; trailing zeros are trimmed.
  explicit DensePolynomial(std::vector<Integer> coefficients);
  DensePolynomial(std::initializer_list<long> coefficients);

  static DensePolynomial monomial(Integer coefficient, std::size_t exponent);
  /// (z - 1)^k.
  static DensePolynomial z_minus_one_power(std::size_t k);

  std::span<const Integer> coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Coefficient of z^i, zero past the degree.
  Integer coefficient(std::size_t i) const;
  /// Undefined for the zero polynomial.
  const Integer& leading() const { return coeffs_.back(); }

  Integer evaluate(const Integer& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;
  std::vector<std::complex<double>> to_complex() const;

  DensePolynomial derivative() const;
  /// z^deg * p(1/z).
  DensePolynomial reversed() const;
  /// p(-z).
  DensePolynomial negate_variable() const;

  SparseIntegerPolynomial to_sparse() const;

  DensePolynomial operator-() const;
  friend DensePolynomial operator+(const DensePolynomial& p, const DensePolynomial& q);
  friend DensePolynomial operator-(const DensePolynomial& p, const DensePolynomial& q);
  friend DensePolynomial operator*(const DensePolynomial& p, const DensePolynomial& q);
  friend DensePolynomial operator*(const Integer& c, const DensePolynomial& p);
  friend bool operator==(const DensePolynomial&, const DensePolynomial&) = default;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

DensePolynomial pow(const DensePolynomial& p, unsigned k);

/// p = sign * content * primitive, with content > 0 and the primitive part
/// carrying a positive leading coefficient.
struct ContentSplit {
  Integer content;
  DensePolynomial primitive;
  int sign = 1;
};

/// Throws InvalidInput on the zero polynomial.
ContentSplit content_and_primitive(const DensePolynomial& p);
DensePolynomial primitive_part(const DensePolynomial& p);

/// Remainder of lc(b)^(deg a - deg b + 1) * a modulo b.
DensePolynomial pseudo_remainder(const DensePolynomial& a, const DensePolynomial& b);

/// Quotient of an exact division in Z[z]; nullopt when the division leaves a
/// remainder or is not integral. Throws InvalidInput for a zero divisor.
std::optional<DensePolynomial> divide_exact(const DensePolynomial& numerator,
                                            const DensePolynomial& divisor);
bool divides(const DensePolynomial& divisor, const DensePolynomial& p);

/// Primitive, positive-leading generator of gcd over Q, by a primitive
/// pseudo-remainder sequence. Throws InvalidInput if both inputs are zero.
DensePolynomial gcd(const DensePolynomial& p, const DensePolynomial& q);
DensePolynomial gcd(const SparseIntegerPolynomial& p, const SparseIntegerPolynomial& q);

/// True only when p and q are proven coprime over Q by a reduction modulo a
/// large prime that keeps both degrees. False means "not proven", not
/// "shares a factor".
bool certainly_coprime(const DensePolynomial& p, const DensePolynomial& q);

struct Deflation {
  std::int64_t multiplicity = 0;
  DensePolynomial residual;
};

/// p = (z - 1)^multiplicity * residual with residual(1) != 0.
Deflation deflate_at_one(const DensePolynomial& p);

/// p / gcd(p, p'), made primitive with positive leading coefficient.
DensePolynomial squarefree_part(const DensePolynomial& p);

/// Certificate text form: "c0 + c1*z^e1 + ..." with ascending exponents and
/// decimal coefficients. The zero polynomial is "0".
std::string to_text(const SparseIntegerPolynomial& p);
std::string to_text(const DensePolynomial& p);
/// Inverse of to_text; accepts only the canonical form. Throws InvalidInput.
SparseIntegerPolynomial parse_polynomial(std::string_view text);

}  // namespace nplet
