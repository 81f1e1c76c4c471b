#include "nplet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "nplet/errors.hpp"

namespace nplet {

namespace {

using Matrix = Eigen::MatrixXcd;

Complex ipow(Complex base, std::int64_t e) {
  Complex out{1.0, 0.0};
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

Matrix incidence_matrix(std::span<const std::int64_t> a, Complex t0, Complex w) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Matrix m(n, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex ta = ipow(t0, a[i]);
    double power = 1.0;
    for (Eigen::Index k = 0; k + 1 < n - 1; ++k) {
      power *= static_cast<double>(a[i]);
      m(i, k) = power * ta;
    }
    m(i, n - 2) = ipow(w, a[i]) - ta;
  }
  return m;
}

std::vector<double> spectrum(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

// A maximal minor of the incidence matrix as a polynomial in w:
// sum_k coefficient_k w^(exponent_k) + constant.
struct NumericMinor {
  std::vector<std::int64_t> exponents;
  std::vector<Complex> coefficients;
  Complex constant{0.0, 0.0};
};

NumericMinor minor_omitting(std::span<const std::int64_t> a, std::size_t omit, Complex t0) {
  const std::size_t n = a.size();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != omit) rows.push_back(i);
  }
  const auto size = static_cast<Eigen::Index>(n - 2);
  NumericMinor out;
  for (std::size_t p = 0; p < rows.size(); ++p) {
    Matrix block(size, size);
    Eigen::Index r = 0;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == p) continue;
      const std::int64_t e = a[rows[q]];
      const Complex te = ipow(t0, e);
      double power = 1.0;
      for (Eigen::Index k = 0; k < size; ++k) {
        power *= static_cast<double>(e);
        block(r, k) = power * te;
      }
      ++r;
    }
    // Laplace along the last column (index n - 2).
    const double sign = ((p + n - 2) % 2 == 0) ? 1.0 : -1.0;
    const Complex cofactor = sign * (size == 0 ? Complex{1.0, 0.0} : block.determinant());
    out.exponents.push_back(a[rows[p]]);
    out.coefficients.push_back(cofactor);
    out.constant -= cofactor * ipow(t0, a[rows[p]]);
  }
  return out;
}

double normalized_residual(const NumericMinor& m, Complex w) {
  Complex value = m.constant;
  double scale = std::abs(m.constant);
  for (std::size_t k = 0; k < m.exponents.size(); ++k) {
    const Complex term = m.coefficients[k] * ipow(w, m.exponents[k]);
    value += term;
    scale += std::abs(term);
  }
  if (scale == 0.0) return 0.0;
  return std::abs(value) / scale;
}

// Number of leading derivatives (order 0, 1, ...) of m vanishing at t0.
int vanishing_order(const NumericMinor& m, Complex t0, int limit) {
  int order = 0;
  for (int j = 0; j <= limit; ++j) {
    Complex value = (j == 0) ? m.constant : Complex{0.0, 0.0};
    double scale = std::abs(value);
    for (std::size_t k = 0; k < m.exponents.size(); ++k) {
      const std::int64_t e = m.exponents[k];
      if (e < j) continue;
      double falling = 1.0;
      for (int f = 0; f < j; ++f) falling *= static_cast<double>(e - f);
      const Complex term = m.coefficients[k] * falling * ipow(t0, e - j);
      value += term;
      scale += std::abs(term);
    }
    if (scale == 0.0 || std::abs(value) <= 1e-9 * scale) {
      ++order;
    } else {
      break;
    }
  }
  return order;
}

}  // namespace

double osculating_incidence(std::span<const std::int64_t> exponents, Complex z) {
  require_increasing(exponents);
  const auto s = spectrum(incidence_matrix(exponents, {1.0, 0.0}, z));
  return s.back();
}

double osculating_incidence(const ExponentTuple& tuple, Complex z) {
  return osculating_incidence(tuple.exponents(), z);
}

std::vector<double> incidence_spectrum(std::span<const std::int64_t> exponents, Complex t0,
                                       Complex w) {
  require_increasing(exponents);
  return spectrum(incidence_matrix(exponents, t0, w));
}

IncidenceScan root_scan(std::span<const std::int64_t> exponents, const ScanOptions& options) {
  require_increasing(exponents);
  const Complex t0 = options.basepoint;
  if (t0 == Complex{0.0, 0.0}) throw InvalidInput("root_scan: basepoint must be nonzero");
  const std::size_t n = exponents.size();

  IncidenceScan scan;
  scan.exponents.assign(exponents.begin(), exponents.end());
  scan.basepoint = t0;

  std::vector<NumericMinor> minors;
  for (std::size_t i = 0; i < n; ++i) minors.push_back(minor_omitting(exponents, i, t0));
  const NumericMinor& chosen = minors[n - 1];

  std::vector<Complex> dense(static_cast<std::size_t>(exponents[n - 2]) + 1, Complex{0.0, 0.0});
  dense[0] = chosen.constant;
  for (std::size_t k = 0; k < chosen.exponents.size(); ++k) {
    dense[static_cast<std::size_t>(chosen.exponents[k])] += chosen.coefficients[k];
  }
  const RootFindResult found = find_roots(dense);
  if (!found.converged) scan.warnings.push_back("root finder did not converge");

  const int order = vanishing_order(chosen, t0, static_cast<int>(dense.size()) - 1);
  const auto known = static_cast<int>(options.one_multiplicity.value_or(0));
  const int skip = std::max(order, known);
  if (known > order) scan.warnings.push_back("exact multiplicity at 1 exceeds the numeric one");

  std::vector<std::size_t> by_distance(found.roots.size());
  for (std::size_t i = 0; i < by_distance.size(); ++i) by_distance[i] = i;
  std::sort(by_distance.begin(), by_distance.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(found.roots[x].value - t0) < std::abs(found.roots[y].value - t0);
  });
  std::vector<bool> excluded(found.roots.size(), false);
  const double radius = options.exclusion_radius * std::abs(t0);
  for (std::size_t r = 0; r < by_distance.size(); ++r) {
    const std::size_t i = by_distance[r];
    if (static_cast<int>(r) < skip || std::abs(found.roots[i].value - t0) <= radius) {
      excluded[i] = true;
      ++scan.excluded_at_one;
    }
  }

  // The multiple root at 1 always clusters; only other overlaps matter.
  for (std::size_t i = 0; i < found.roots.size(); ++i) {
    if (excluded[i]) continue;
    const auto& ri = found.roots[i];
    bool overlaps = false;
    for (std::size_t j = 0; j < found.roots.size() && !overlaps; ++j) {
      const auto& rj = found.roots[j];
      overlaps = j != i && std::abs(ri.value - rj.value) <= ri.radius + rj.radius;
    }
    if (overlaps) {
      std::ostringstream msg;
      msg << "clustered roots near z = " << ri.value / t0;
      scan.warnings.push_back(msg.str());
    }
  }

  std::vector<std::pair<IncidenceCandidate, double>> raw;
  for (std::size_t i = 0; i < found.roots.size(); ++i) {
    if (excluded[i]) continue;
    const Complex w = found.roots[i].value;
    double residual = 0.0;
    for (std::size_t m = 0; m + 1 < n; ++m) residual = std::max(residual, normalized_residual(minors[m], w));
    if (residual < options.residual_tolerance) {
      const Complex z = w / t0;
      raw.push_back({{z, osculating_incidence(exponents, z), residual}, found.roots[i].radius});
    } else if (residual < 1e3 * options.residual_tolerance) {
      std::ostringstream msg;
      msg << "near miss at z = " << w / t0 << " with residual " << residual;
      scan.warnings.push_back(msg.str());
    }
  }
  // Copies of one multiple root collapse to a single candidate.
  std::vector<double> radii;
  for (const auto& [candidate, rad] : raw) {
    bool merged = false;
    for (std::size_t k = 0; k < scan.candidates.size(); ++k) {
      auto& kept = scan.candidates[k];
      if (std::abs(kept.z - candidate.z) <= std::max(1e-6, (rad + radii[k]) / std::abs(t0))) {
        if (candidate.residual < kept.residual) kept = candidate;
        merged = true;
        break;
      }
    }
    if (!merged) {
      scan.candidates.push_back(candidate);
      radii.push_back(rad);
    }
  }
  std::sort(scan.candidates.begin(), scan.candidates.end(),
            [](const IncidenceCandidate& x, const IncidenceCandidate& y) {
              if (std::arg(x.z) != std::arg(y.z)) return std::arg(x.z) < std::arg(y.z);
              return std::abs(x.z) < std::abs(y.z);
            });
  return scan;
}

IncidenceScan root_scan(const ExponentTuple& tuple, const ScanOptions& options) {
  return root_scan(tuple.exponents(), options);
}

double basepoint_invariance(std::span<const std::int64_t> exponents, Complex t0) {
  if (t0 == Complex{0.0, 0.0}) throw InvalidInput("basepoint_invariance: t0 must be nonzero");
  const IncidenceScan at_one = root_scan(exponents);
  ScanOptions shifted;
  shifted.basepoint = t0;
  const IncidenceScan at_t0 = root_scan(exponents, shifted);
  if (at_one.candidates.size() != at_t0.candidates.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double deviation = 0.0;
  for (const auto& c : at_one.candidates) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& d : at_t0.candidates) nearest = std::min(nearest, std::abs(c.z - d.z));
    deviation = std::max(deviation, nearest);
  }

  const Complex samples[] = {{0.5, 0.3}, {-0.7, 0.2}, {1.3, 0.0}, {0.0, 0.9}, {0.95, -0.31}};
  for (const Complex z : samples) {
    Matrix scaled = incidence_matrix(exponents, t0, z * t0);
    for (Eigen::Index i = 0; i < scaled.rows(); ++i) scaled.row(i) /= ipow(t0, exponents[i]);
    const auto lhs = spectrum(scaled);
    const auto rhs = spectrum(incidence_matrix(exponents, {1.0, 0.0}, z));
    const double scale = std::max(1.0, rhs.front());
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      deviation = std::max(deviation, std::abs(lhs[k] - rhs[k]) / scale);
    }
  }
  return deviation;
}

}  // namespace nplet
