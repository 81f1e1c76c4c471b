#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nplet {

using Complex = std::complex<double>;

struct RootApproximation {
  Complex value;
  /// Inclusion radius: the union of all disks contains every root, and each
  /// connected component of k disks contains exactly k roots.
  double radius = 0.0;
};

struct RootFindResult {
  std::vector<RootApproximation> roots;
  bool converged = false;
  int iterations = 0;
  /// True when some inclusion disks overlap (clustered or multiple roots).
  bool clustered = false;
};

/// All complex roots of sum coefficients[i] z^i by Aberth-Ehrlich iteration
/// in double precision. Leading zero coefficients are ignored; zero roots
/// are split off exactly. The result is sorted by (|z|, arg z).
RootFindResult find_roots(std::span<const Complex> coefficients, int max_iterations = 1000);

/// Horner evaluation, switching to the reversed polynomial for |z| > 1.
Complex evaluate(std::span<const Complex> coefficients, Complex z);

}  // namespace nplet
