#include "nplet/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "nplet/errors.hpp"
#include "nplet/roots.hpp"

namespace nplet {

namespace {

constexpr double kUnitTolerance = 1e-10;
constexpr int kGraeffeIterations = 64;
constexpr std::uint64_t kDivisibilityOrderCap = 10'000'000;

// Remainder modulo p, whose leading coefficient is +-1.
DensePolynomial reduce_unit_lead(const DensePolynomial& a, const DensePolynomial& p) {
  const std::int64_t dp = p.degree();
  if (a.degree() < dp) return a;
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  auto pc = p.coefficients();
  const bool negative = p.leading() < 0;
  Integer f;
  for (std::int64_t k = a.degree(); k >= dp; --k) {
    if (r[k] == 0) continue;
    f = negative ? Integer(-r[k]) : r[k];
    for (std::int64_t i = 0; i <= dp; ++i) {
      mpz_submul(r[k - dp + i].get_mpz_t(), f.get_mpz_t(), pc[i].get_mpz_t());
    }
  }
  r.resize(static_cast<std::size_t>(dp));
  return DensePolynomial(std::move(r));
}

DensePolynomial cyclotomic_polynomial(std::uint64_t m, std::map<std::uint64_t, DensePolynomial>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  DensePolynomial num = DensePolynomial::monomial(1, m) - DensePolynomial{1};
  for (std::uint64_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto q = divide_exact(num, cyclotomic_polynomial(d, memo));
    if (!q) throw TheoremViolation("cyclotomic_polynomial: inexact division");
    num = std::move(*q);
  }
  memo.emplace(m, num);
  return num;
}

std::uint64_t totient(std::uint64_t m) {
  std::uint64_t result = m;
  for (std::uint64_t f = 2; f * f <= m; ++f) {
    if (m % f != 0) continue;
    while (m % f == 0) m /= f;
    result -= result / f;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::uint64_t smallest_order(double turns, std::uint64_t max_order) {
  for (std::uint64_t m = 1; m <= max_order; ++m) {
    const double x = turns * static_cast<double>(m);
    if (std::abs(x - std::round(x)) <= 1e-9 * static_cast<double>(m)) return m;
  }
  return 0;
}

// Exact witness that p is not a product of cyclotomics. nullopt when none
// was found within the iteration budget.
std::optional<bool> exact_non_cyclotomic_witness(const DensePolynomial& q) {
  if (abs(q.leading()) != 1 || abs(q.coefficient(0)) != 1) return true;
  const auto d = static_cast<unsigned long>(q.degree());
  std::vector<Integer> binom(d + 1);
  for (unsigned long j = 0; j <= d; ++j) mpz_bin_uiui(binom[j].get_mpz_t(), d, j);
  DensePolynomial g = q;
  for (int k = 0; k < kGraeffeIterations; ++k) {
    g = graeffe_step(g);
    auto gc = g.coefficients();
    std::size_t bits = 0;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      if (abs(gc[j]) > binom[j]) return true;
      bits = std::max(bits, mpz_sizeinbase(gc[j].get_mpz_t(), 2));
    }
    if (bits > 1'000'000) break;
  }
  return std::nullopt;
}

}  // namespace

DensePolynomial graeffe_step(const DensePolynomial& p) {
  const DensePolynomial prod = p * p.negate_variable();
  auto pc = prod.coefficients();
  std::vector<Integer> out((pc.size() + 1) / 2);
  const bool flip = p.degree() % 2 == 1;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = flip ? Integer(-pc[2 * k]) : pc[2 * k];
  return DensePolynomial(std::move(out));
}

DensePolynomial power_of_z_minus_one_mod(std::uint64_t n, const DensePolynomial& p) {
  if (p.is_zero() || abs(p.leading()) != 1) {
    throw InvalidInput("power_of_z_minus_one_mod: modulus must have unit leading coefficient");
  }
  DensePolynomial result = reduce_unit_lead(DensePolynomial{1}, p);
  DensePolynomial base = reduce_unit_lead(DensePolynomial{0, 1}, p);
  while (n > 0) {
    if (n & 1U) result = reduce_unit_lead(result * base, p);
    n >>= 1U;
    if (n > 0) base = reduce_unit_lead(base * base, p);
  }
  return reduce_unit_lead(result - DensePolynomial{1}, p);
}

CyclotomicVerdict classify_cyclotomic(const DensePolynomial& p) {
  if (p.is_constant()) throw InvalidInput("classify_cyclotomic: constant polynomial");
  if (p.coefficient(0) == 0) throw InvalidInput("classify_cyclotomic: p(0) == 0");

  const DensePolynomial q = squarefree_part(p);
  const auto coeffs = q.to_complex();
  const RootFindResult found = find_roots(coeffs);
  const auto degree = static_cast<std::uint64_t>(q.degree());
  const std::uint64_t max_order = std::max<std::uint64_t>(2, 2 * degree * degree);

  bool numeric_unit = found.converged;
  std::vector<std::uint64_t> orders;
  for (const auto& r : found.roots) {
    if (!numeric_unit) break;
    if (std::abs(std::abs(r.value) - 1.0) > kUnitTolerance + r.radius) {
      numeric_unit = false;
      break;
    }
    double turns = std::arg(r.value) / (2.0 * std::numbers::pi);
    if (turns < 0) turns += 1.0;
    const std::uint64_t m = smallest_order(turns, max_order);
    if (m == 0) {
      numeric_unit = false;
      break;
    }
    orders.push_back(m);
  }

  if (!numeric_unit) {
    if (exact_non_cyclotomic_witness(q).value_or(false)) return {};
    throw Inconclusive("classify_cyclotomic: numeric roots leave the unit circle but no exact "
                       "witness was found for " + to_text(q));
  }

  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  std::map<std::uint64_t, DensePolynomial> memo;
  DensePolynomial product{1};
  // N = lcm(orders); past the cap the z^N - 1 test is skipped.
  std::uint64_t n = 1;
  bool overflow = false;
  for (auto m : orders) {
    product = product * cyclotomic_polynomial(m, memo);
    if (overflow) continue;
    const auto next = static_cast<unsigned __int128>(n / std::gcd(n, m)) * m;
    if (next > kDivisibilityOrderCap) {
      overflow = true;
    } else {
      n = static_cast<std::uint64_t>(next);
    }
  }

  if (product == q) {
    if (!overflow && !power_of_z_minus_one_mod(n, q).is_zero()) {
      throw Inconclusive("classify_cyclotomic: cyclotomic product does not divide z^N - 1");
    }
    return {true, orders};
  }
  if (!overflow && power_of_z_minus_one_mod(n, q).is_zero()) {
    // The numeric orders were off; read the exact ones from the divisors of N.
    std::vector<std::uint64_t> exact;
    DensePolynomial rebuilt{1};
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (n % m != 0 || totient(m) > degree) continue;
      const DensePolynomial phi = cyclotomic_polynomial(m, memo);
      if (divides(phi, q)) {
        exact.push_back(m);
        rebuilt = rebuilt * phi;
      }
    }
    if (rebuilt == q) return {true, exact};
  }
  throw Inconclusive("classify_cyclotomic: roots look like roots of unity but " + to_text(q) +
                     " does not divide z^N - 1");
}

}  // namespace nplet
