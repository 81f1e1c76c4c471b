#pragma once

// The lattice of integer vectors orthogonal to an exponent tuple, its L1
// successive minima, and the degree cap that follows from them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nplet/ranktest.hpp"

namespace nplet {

using IntVector = std::vector<std::int64_t>;

std::int64_t l1_norm(std::span<const std::int64_t> v);
/// max(sum of positive entries, -sum of negative entries): the degree of the
/// closure of the hypersurface x^v = 1.
std::int64_t degree_norm(std::span<const std::int64_t> v);
std::int64_t dot(std::span<const std::int64_t> u, std::span<const std::int64_t> v);

struct VectorNorms {
  std::int64_t l1 = 0;
  std::int64_t degree = 0;
};

struct LatticeBasis {
  ExponentTuple tuple;
  /// n - 1 vectors; vectors[0] attains the first L1 minimum, vectors[1] the
  /// second, the rest complete an integral basis. Ascending L1.
  std::vector<IntVector> vectors;
  std::vector<VectorNorms> norms;
};

/// A basis of {v in Z^n : v . a = 0} by extended-gcd column reduction.
std::vector<IntVector> kernel_basis(std::span<const std::int64_t> a);

/// Integral basis whose first two vectors realise the L1 successive minima,
/// found by exhaustive enumeration of every lattice vector inside the
/// Euclidean ball that contains the relevant L1 ball.
LatticeBasis orthogonal_lattice(const ExponentTuple& tuple);

/// Rows of a primitive r x k integer matrix completed to a unimodular k x k
/// matrix with the given rows first. Throws InvalidInput if not primitive.
std::vector<IntVector> complete_to_unimodular(const std::vector<IntVector>& rows, std::size_t k);

/// det of the Gram matrix; equals |a|_2^2 for a basis of the orthogonal
/// lattice of a primitive a.
Integer gram_determinant(const std::vector<IntVector>& vectors);

struct MinkowskiCheck {
  std::int64_t product = 0;  // |l1|_1 * |l2|_1
  double bound = 0.0;        // 96 d^(2/3)
  double margin = 0.0;       // product / bound
};

/// Verifies |l1|_1 |l2|_1 <= 96 d^(2/3) exactly (as product^3 <= 96^3 d^2).
/// Requires n = 4. Throws TheoremViolation when the bound fails.
MinkowskiCheck minkowski_check(const LatticeBasis& basis);

/// floor(96 d^(2/3)), computed as an exact integer cube root.
std::int64_t degree_bound(std::int64_t d);
/// Requires n = 4.
std::int64_t degree_bound(const ExponentTuple& tuple);

/// Diagnostic: deg(l1) deg(l2) / d^(2/3). No pass/fail is attached.
double degree_norm_ratio(const LatticeBasis& basis);

/// "(1,1,-1,0)[l1=3,deg=2] (1,0,1,-1)[l1=3,deg=2] ..."
std::string to_text(const LatticeBasis& basis);

}  // namespace nplet
