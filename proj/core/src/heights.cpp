#include "nplet/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nplet/errors.hpp"
#include "nplet/roots.hpp"

namespace nplet {

bool is_reciprocal(const DensePolynomial& p) {
  if (p.is_zero()) return false;
  const DensePolynomial r = p.reversed();
  // A factor z makes the reversal drop degree.
  if (r.degree() != p.degree()) return false;
  return r == p || r == -p;
}

HeightReport weil_height(const DensePolynomial& p) {
  if (p.is_constant()) throw InvalidInput("weil_height: constant polynomial");
  HeightReport report;
  report.minpoly = p;
  report.degree = p.degree();
  report.is_reciprocal = is_reciprocal(p);

  const auto coeffs = p.to_complex();
  const RootFindResult found = find_roots(coeffs);
  double log_m = std::log(std::abs(p.leading().get_d()));
  double error = 0.0;
  for (const auto& r : found.roots) {
    const double modulus = std::abs(r.value);
    if (modulus > 1.0) log_m += std::log(modulus);
    // |log+ x - log+ y| <= |x - y| / min(x, y) over the disk, and 0 inside it.
    if (modulus + r.radius > 1.0) {
      const double inner = std::max(1.0, modulus - r.radius);
      error += std::isfinite(r.radius) ? r.radius / inner : std::numeric_limits<double>::infinity();
    }
  }
  report.ill_conditioned = found.clustered || !found.converged;
  const auto deg = static_cast<double>(report.degree);
  report.log_mahler_measure = log_m;
  report.mahler_measure = std::exp(log_m);
  report.weil_height = log_m / deg;
  report.height_error = error / deg;
  if (!found.converged) report.height_error = std::numeric_limits<double>::infinity();
  return report;
}

double smyth_theta0() {
  const std::vector<Complex> cubic{{-1, 0}, {-1, 0}, {0, 0}, {1, 0}};
  for (const auto& r : find_roots(cubic).roots) {
    if (std::abs(r.value.imag()) < 1e-12 && r.value.real() > 1.0) return r.value.real();
  }
  throw TheoremViolation("smyth_theta0: real root of z^3 - z - 1 not found");
}

bool smyth_check(const HeightReport& report) {
  if (report.is_reciprocal) return true;
  const double deg = static_cast<double>(report.degree);
  return deg * (report.weil_height + report.height_error) >= kSmythLowerBound;
}

double lemma4_bound(const Lemma4Input& input) {
  const auto& m = input.exponents;
  if (m.size() < 2) throw InvalidInput("lemma4_bound: need at least two exponents");
  if (m.back() != 0) throw InvalidInput("lemma4_bound: exponent ladder must end at 0");
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] >= m[i - 1]) throw InvalidInput("lemma4_bound: exponents must strictly decrease");
  }
  const std::size_t h = m.size() - 1;
  const std::size_t l = input.split;
  if (l >= h) throw InvalidInput("lemma4_bound: split index must be below h");
  const auto gap = static_cast<double>(m[l] - m[l + 1]);
  const auto arm = static_cast<double>(std::max(l + 1, h - l));
  return (input.coefficient_height + std::log(arm)) / gap;
}

double projective_height(std::span<const Integer> coefficients) {
  Integer g = 0;
  Integer largest = 0;
  for (const auto& c : coefficients) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (abs(c) > largest) largest = abs(c);
  }
  if (g == 0) throw InvalidInput("projective_height: all coordinates are zero");
  Integer q = largest / g;
  // log of an mpz via its mantissa and exponent.
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, q.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double step1_log_constant() { return std::log(512.0 / 18.0); }

double step1_bound(double d) {
  if (!(d >= 2.0)) throw InvalidInput("step1_bound: d must be at least 2");
  return (9.0 * std::log(d) - step1_log_constant()) / d;
}

ThresholdSides threshold_sides(double d) {
  ThresholdSides s;
  s.d = d;
  s.lhs = kSmythLowerBound * std::cbrt(d) / std::pow(96.0, 2.0 / 3.0);
  s.rhs = 9.0 * std::log(d) - step1_log_constant();
  s.holds = s.lhs <= s.rhs;
  return s;
}

ThresholdSolution final_threshold() {
  // The inequality holds on a middle range and fails for large d; walk up
  // by doubling from d = 3 until it fails, then bisect in log d.
  double lo = 3.0;
  if (!threshold_sides(lo).holds) throw TheoremViolation("final_threshold: no admissible start");
  double hi = lo;
  while (threshold_sides(hi).holds) {
    lo = hi;
    hi *= 2.0;
  }
  ThresholdSolution out;
  while ((hi - lo) / hi > 1e-9) {
    const double mid = std::sqrt(lo * hi);
    if (threshold_sides(mid).holds) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++out.iterations;
  }
  out.below = threshold_sides(lo);
  out.above = threshold_sides(hi);
  out.d_star = lo;
  return out;
}

std::string ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["vacuous"] = vacuous;
  j["routed_to_classification"] = routed_to_classification;
  if (height) {
    j["weil_height"] = height->weil_height;
    j["height_error"] = height->height_error;
    j["mahler_measure"] = height->mahler_measure;
    j["degree"] = height->degree;
    j["reciprocal"] = height->is_reciprocal;
    j["ill_conditioned"] = height->ill_conditioned;
  }
  j["height_bound"] = height_bound;
  j["height_ok"] = height_ok;
  if (degree_bound) j["degree_bound"] = *degree_bound;
  j["degree_ok"] = degree_ok;
  j["smyth_ok"] = smyth_ok;
  j["reciprocal_witness"] = reciprocal_witness;
  j["trivial_height_lower_bound"] = trivial_height_lower_bound;
  j["consistent"] = consistent;
  return j.dump();
}

ConsistencyReport solution_consistency(const RankCertificate& cert,
                                       std::optional<std::int64_t> degree_bound) {
  ConsistencyReport out;
  out.degree_bound = degree_bound;
  if (!cert.anomalous || cert.residual.is_constant()) {
    out.vacuous = true;
    return out;
  }
  if (cert.classification == Classification::root_of_unity) {
    out.routed_to_classification = true;
    return out;
  }
  const DensePolynomial witness = squarefree_part(cert.residual);
  HeightReport h = weil_height(witness);
  const auto d = static_cast<double>(cert.tuple.last());
  out.height_bound = step1_bound(std::max(2.0, d));
  out.height_ok = h.weil_height - h.height_error <= out.height_bound;
  out.degree_ok = !degree_bound || h.degree <= *degree_bound;
  out.smyth_ok = smyth_check(h);
  out.reciprocal_witness = h.is_reciprocal;
  const Integer lead = abs(witness.leading());
  const Integer tail = abs(witness.coefficient(0));
  out.trivial_height_lower_bound =
      std::log(std::max(lead, tail).get_d()) / static_cast<double>(h.degree);
  out.consistent = out.height_ok && out.degree_ok && out.smyth_ok && !out.reciprocal_witness;
  out.height = std::move(h);
  return out;
}

double unit_conjugate_bound(std::int64_t d, std::int64_t r, std::int64_t s) {
  if (!(0 < r && r < s && s < d)) throw InvalidInput("unit_conjugate_bound: need 0 < r < s < d");
  const double ratio = static_cast<double>(d) * static_cast<double>(d - r) /
                       (static_cast<double>(s) * static_cast<double>(s - r));
  return std::pow(ratio, 1.0 / static_cast<double>(d - s));
}

}  // namespace nplet
