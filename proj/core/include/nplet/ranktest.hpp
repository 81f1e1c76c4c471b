#pragma once

// Exact rank-drop decision for exponent tuples.
//
// For a tuple 0 < a_1 < ... < a_n the augmented matrix B(z) has the n + 1
// rows (z^m, m^(n-2), ..., m, 1) for m in {0, a_1, ..., a_n}. It has rank
// below n exactly when the n x (n-1) matrix with rows
// (a_i, a_i^2, ..., a_i^(n-2), z^(a_i) - 1) has rank below n - 1, so the
// common zeros of the n + 1 maximal minors of B(z) are precisely the rank
// drops. z = 1 is always one of them.
//
// Sign convention: each minor is expanded along the z column with its rows
// sorted by ascending exponent, so the minor with rows r_0 < ... < r_(n-1) is
//
//   sum_j (-1)^j z^(r_j) V(r_0, ..., r_(j-1), r_(j+1), ..., r_(n-1))
//
// where V(x_0, ..., x_(n-2)) = prod_{i<k} (x_i - x_k) is the determinant of
// the decreasing-power Vandermonde block.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nplet/poly.hpp"

namespace nplet {

/// Strictly increasing positive exponents with gcd 1 and n >= 3.
class ExponentTuple {
 public:
  /// Throws InvalidInput unless the invariants hold.
  static ExponentTuple make(std::vector<std::int64_t> exponents);

  struct Normalized;
  /// Divides a strictly increasing positive sequence by its gcd h; a rank
  /// drop at z for the input is a rank drop at z^h for the result.
  static Normalized normalize(std::vector<std::int64_t> exponents);

  std::size_t n() const { return exponents_.size(); }
  std::span<const std::int64_t> exponents() const { return exponents_; }
  std::int64_t operator[](std::size_t i) const { return exponents_[i]; }
  std::int64_t last() const { return exponents_.back(); }
  std::string to_string() const;

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;

 private:
  explicit ExponentTuple(std::vector<std::int64_t> e) : exponents_(std::move(e)) {}
  std::vector<std::int64_t> exponents_;
};

struct ExponentTuple::Normalized {
  ExponentTuple tuple;
  std::int64_t divisor = 1;
};

/// Throws InvalidInput unless the sequence is strictly increasing, positive
/// and has at least three entries. No gcd requirement.
void require_increasing(std::span<const std::int64_t> exponents);

struct MinorSystem {
  ExponentTuple tuple;
  /// n + 1 minors; minors[0] omits the row for exponent 0, minors[i] omits
  /// the row for a_i.
  std::vector<SparseIntegerPolynomial> minors;
};

/// The n + 1 minors for any strictly increasing positive exponent set,
/// coprime or not (used for scaled and planted cases).
std::vector<SparseIntegerPolynomial> build_minors(std::span<const std::int64_t> exponents);

MinorSystem build_minor_system(const ExponentTuple& tuple);

/// Same minors, computed by Laplace expansion with fraction-free integer
/// determinants of each cofactor rather than the Vandermonde product
/// formula. Slower; used for independent re-checking.
std::vector<SparseIntegerPolynomial> build_minors_by_elimination(
    std::span<const std::int64_t> exponents);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer integer_determinant(std::vector<std::vector<Integer>> matrix);

enum class Classification { trivial, root_of_unity, genuine, inconclusive };

std::string to_string(Classification c);
/// Throws InvalidInput on an unknown name.
Classification classification_from_string(const std::string& name);

struct RankCertificate {
  ExponentTuple tuple;
  std::vector<std::int64_t> minor_degrees;
  DensePolynomial gcd;
  std::int64_t one_multiplicity = 0;
  DensePolynomial residual;
  bool anomalous = false;
  Classification classification = Classification::trivial;
  /// Residual kept as the container of any witness; set when anomalous.
  std::optional<DensePolynomial> witness_minpoly;
  std::vector<std::uint64_t> cyclotomic_orders;
  /// |z| of the residual roots, ascending; set when anomalous.
  std::vector<double> root_moduli;
  /// Free-form JSON object attached by the search driver; empty when none.
  std::string validation;
  double elapsed_ms = 0.0;
};

/// GCD of all n + 1 minors, deflated at z = 1, with the residual classified.
RankCertificate decide(const ExponentTuple& tuple);

/// Numeric rank of the n x (n-1) matrix (a_i, ..., a_i^(n-2), z^(a_i) - 1),
/// counting singular values above tolerance * max(1, sigma_max).
int rank_at(std::span<const std::int64_t> exponents, std::complex<double> z,
            double tolerance = 1e-9);
int rank_at(const ExponentTuple& tuple, std::complex<double> z, double tolerance = 1e-9);

struct ScalingCheck {
  bool holds = false;
  /// h^((n-1)(n-2)/2), the factor produced by scaling the m-columns.
  Integer factor;
  std::vector<bool> per_minor;
};

/// Checks M_scaled(z) = h^((n-1)(n-2)/2) * M(z^h) exactly for every minor of
/// the exponent set scaled by h (which bypasses the gcd invariant).
ScalingCheck scaling_transport(const ExponentTuple& tuple, std::int64_t h);

}  // namespace nplet
