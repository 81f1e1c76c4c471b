#pragma once

// Floating-point incidence checks for the monomial curve t -> (t^a_1, ..., t^a_n).
// v(z) lies on the osculating (n-2)-plane at v(t0) exactly when the matrix
// with rows (a t0^a, a^2 t0^a, ..., a^(n-2) t0^a, z^a - t0^a) drops rank.
// Nothing here consults the exact pipeline.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nplet/ranktest.hpp"
#include "nplet/roots.hpp"

namespace nplet {

struct IncidenceCandidate {
  /// In the basepoint-1 coordinate, i.e. already divided by t0.
  Complex z;
  double min_singular_value = 0.0;
  /// max over the other minors of |M(w)| / sum |terms of M at w|.
  double residual = 0.0;
};

struct IncidenceScan {
  std::vector<std::int64_t> exponents;
  Complex basepoint{1.0, 0.0};
  std::vector<IncidenceCandidate> candidates;
  /// Roots excluded as approximations of z = 1.
  int excluded_at_one = 0;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  /// Multiplicity of z = 1 in the exact gcd, if known.
  std::optional<std::int64_t> one_multiplicity;
  double residual_tolerance = 1e-7;
  double exclusion_radius = 1e-6;
  Complex basepoint{1.0, 0.0};
};

/// Smallest singular value of the n x (n-1) matrix
/// (a_i, ..., a_i^(n-2), z^(a_i) - 1).
double osculating_incidence(std::span<const std::int64_t> exponents, Complex z);
double osculating_incidence(const ExponentTuple& tuple, Complex z);

/// Singular values, descending, of the basepoint-t0 matrix at w.
std::vector<double> incidence_spectrum(std::span<const std::int64_t> exponents, Complex t0,
                                       Complex w);

/// Roots of the minor omitting a_n, kept when every other minor nearly
/// vanishes there and the root is not an approximation of z = 1. Works on
/// any strictly increasing exponent set, coprime or not.
IncidenceScan root_scan(std::span<const std::int64_t> exponents, const ScanOptions& options = {});
IncidenceScan root_scan(const ExponentTuple& tuple, const ScanOptions& options = {});

/// Scans at basepoint t0 and at 1, matches the candidate sets under
/// w -> w / t0 and compares singular spectra at (t0, z t0) after row
/// rescaling with those at (1, z) on a fixed set of sample points. Returns
/// the largest deviation; an unmatched candidate counts as infinity.
/// Throws InvalidInput for t0 = 0.
double basepoint_invariance(std::span<const std::int64_t> exponents, Complex t0);

}  // namespace nplet
