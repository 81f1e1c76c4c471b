#include "nplet/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "nplet/errors.hpp"

namespace nplet {

// ---------------------------------------------------------------------------
// SparseIntegerPolynomial

SparseIntegerPolynomial SparseIntegerPolynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  SparseIntegerPolynomial out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent) {
      out.terms_.back().coefficient += t.coefficient;
      if (out.terms_.back().coefficient == 0) out.terms_.pop_back();
    } else if (t.coefficient != 0) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

SparseIntegerPolynomial SparseIntegerPolynomial::monomial(Integer coefficient,
                                                          std::uint64_t exponent) {
  SparseIntegerPolynomial out;
  if (coefficient != 0) out.terms_.push_back({exponent, std::move(coefficient)});
  return out;
}

std::int64_t SparseIntegerPolynomial::degree() const {
  return terms_.empty() ? -1 : static_cast<std::int64_t>(terms_.back().exponent);
}

Integer SparseIntegerPolynomial::coefficient(std::uint64_t exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, std::uint64_t e) { return t.exponent < e; });
  if (it != terms_.end() && it->exponent == exponent) return it->coefficient;
  return 0;
}

Integer SparseIntegerPolynomial::evaluate(const Integer& z) const {
  Integer acc = 0;
  Integer power;
  for (const auto& t : terms_) {
    mpz_pow_ui(power.get_mpz_t(), z.get_mpz_t(), t.exponent);
    acc += t.coefficient * power;
  }
  return acc;
}

std::complex<double> SparseIntegerPolynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (const auto& t : terms_) {
    acc += t.coefficient.get_d() * std::pow(z, static_cast<double>(t.exponent));
  }
  return acc;
}

SparseIntegerPolynomial SparseIntegerPolynomial::substitute_power(std::uint64_t h) const {
  if (h == 0) throw InvalidInput("substitute_power: h must be positive");
  SparseIntegerPolynomial out = *this;
  for (auto& t : out.terms_) t.exponent *= h;
  return out;
}

DensePolynomial SparseIntegerPolynomial::to_dense() const {
  if (degree() > kDenseDegreeCap) {
    throw ArithmeticRefusal("dense conversion refused: degree " + std::to_string(degree()) +
                            " exceeds cap " + std::to_string(kDenseDegreeCap));
  }
  std::vector<Integer> coeffs(static_cast<std::size_t>(degree() + 1));
  for (const auto& t : terms_) coeffs[t.exponent] = t.coefficient;
  return DensePolynomial(std::move(coeffs));
}

SparseIntegerPolynomial SparseIntegerPolynomial::operator-() const {
  SparseIntegerPolynomial out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

SparseIntegerPolynomial operator+(const SparseIntegerPolynomial& p,
                                  const SparseIntegerPolynomial& q) {
  std::vector<Term> terms = p.terms_;
  terms.insert(terms.end(), q.terms_.begin(), q.terms_.end());
  return SparseIntegerPolynomial::from_terms(std::move(terms));
}

SparseIntegerPolynomial operator-(const SparseIntegerPolynomial& p,
                                  const SparseIntegerPolynomial& q) {
  return p + (-q);
}

SparseIntegerPolynomial operator*(const SparseIntegerPolynomial& p,
                                  const SparseIntegerPolynomial& q) {
  std::map<std::uint64_t, Integer> acc;
  for (const auto& a : p.terms_) {
    for (const auto& b : q.terms_) acc[a.exponent + b.exponent] += a.coefficient * b.coefficient;
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc) terms.push_back({e, std::move(c)});
  return SparseIntegerPolynomial::from_terms(std::move(terms));
}

SparseIntegerPolynomial operator*(const Integer& c, const SparseIntegerPolynomial& p) {
  if (c == 0) return {};
  SparseIntegerPolynomial out = p;
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

// ---------------------------------------------------------------------------
// DensePolynomial

DensePolynomial::DensePolynomial(std::vector<Integer> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

DensePolynomial::DensePolynomial(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

void DensePolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

DensePolynomial DensePolynomial::monomial(Integer coefficient, std::size_t exponent) {
  std::vector<Integer> coeffs(exponent + 1);
  coeffs[exponent] = std::move(coefficient);
  return DensePolynomial(std::move(coeffs));
}

DensePolynomial DensePolynomial::z_minus_one_power(std::size_t k) {
  std::vector<Integer> coeffs(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    mpz_bin_uiui(coeffs[i].get_mpz_t(), k, i);
    if ((k - i) % 2 == 1) coeffs[i] = -coeffs[i];
  }
  return DensePolynomial(std::move(coeffs));
}

Integer DensePolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Integer(0);
}

Integer DensePolynomial::evaluate(const Integer& z) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> DensePolynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

std::vector<std::complex<double>> DensePolynomial::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.emplace_back(c.get_d(), 0.0);
  return out;
}

DensePolynomial DensePolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return DensePolynomial(std::move(out));
}

DensePolynomial DensePolynomial::reversed() const {
  std::vector<Integer> out(coeffs_.rbegin(), coeffs_.rend());
  return DensePolynomial(std::move(out));
}

DensePolynomial DensePolynomial::negate_variable() const {
  DensePolynomial out = *this;
  for (std::size_t i = 1; i < out.coeffs_.size(); i += 2) out.coeffs_[i] = -out.coeffs_[i];
  return out;
}

SparseIntegerPolynomial DensePolynomial::to_sparse() const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) terms.push_back({i, coeffs_[i]});
  }
  return SparseIntegerPolynomial::from_terms(std::move(terms));
}

DensePolynomial DensePolynomial::operator-() const {
  DensePolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

DensePolynomial operator+(const DensePolynomial& p, const DensePolynomial& q) {
  std::vector<Integer> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] += p.coeffs_[i];
  for (std::size_t i = 0; i < q.coeffs_.size(); ++i) out[i] += q.coeffs_[i];
  return DensePolynomial(std::move(out));
}

DensePolynomial operator-(const DensePolynomial& p, const DensePolynomial& q) { return p + (-q); }

DensePolynomial operator*(const DensePolynomial& p, const DensePolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Integer> out(p.coeffs_.size() + q.coeffs_.size() - 1);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    if (p.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), p.coeffs_[i].get_mpz_t(), q.coeffs_[j].get_mpz_t());
    }
  }
  return DensePolynomial(std::move(out));
}

DensePolynomial operator*(const Integer& c, const DensePolynomial& p) {
  if (c == 0) return {};
  DensePolynomial out = p;
  for (auto& x : out.coeffs_) x *= c;
  return out;
}

DensePolynomial pow(const DensePolynomial& p, unsigned k) {
  DensePolynomial result{1};
  DensePolynomial base = p;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Content, division, GCD

ContentSplit content_and_primitive(const DensePolynomial& p) {
  if (p.is_zero()) throw InvalidInput("content_and_primitive: zero polynomial");
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  ContentSplit out;
  out.sign = sgn(p.leading()) < 0 ? -1 : 1;
  out.content = g;
  std::vector<Integer> coeffs(p.coefficients().begin(), p.coefficients().end());
  for (auto& c : coeffs) {
    if (g != 1) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    if (out.sign < 0) c = -c;
  }
  out.primitive = DensePolynomial(std::move(coeffs));
  return out;
}

DensePolynomial primitive_part(const DensePolynomial& p) {
  return content_and_primitive(p).primitive;
}

DensePolynomial pseudo_remainder(const DensePolynomial& a, const DensePolynomial& b) {
  if (b.is_zero()) throw InvalidInput("pseudo_remainder: zero divisor");
  const std::int64_t db = b.degree();
  std::vector<Integer> r(a.coefficients().begin(), a.coefficients().end());
  auto bc = b.coefficients();
  const Integer& lb = b.leading();
  std::int64_t dr = a.degree();
  const std::int64_t steps = dr - db + 1;
  std::int64_t done = 0;
  Integer lr;
  while (dr >= db) {
    lr = r[dr];
    const std::int64_t shift = dr - db;
    // r <- lb * r - lr * z^shift * b; the top coefficient cancels.
    for (std::int64_t i = 0; i < dr; ++i) {
      r[i] *= lb;
      if (i >= shift) mpz_submul(r[i].get_mpz_t(), lr.get_mpz_t(), bc[i - shift].get_mpz_t());
    }
    r.resize(dr);
    ++done;
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<std::int64_t>(r.size()) - 1;
  }
  if (done < steps && steps > 0) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(steps - done));
    for (auto& c : r) c *= scale;
  }
  return DensePolynomial(std::move(r));
}

std::optional<DensePolynomial> divide_exact(const DensePolynomial& numerator,
                                            const DensePolynomial& divisor) {
  if (divisor.is_zero()) throw InvalidInput("divide_exact: zero divisor");
  if (numerator.is_zero()) return DensePolynomial{};
  const std::int64_t dn = numerator.degree();
  const std::int64_t dd = divisor.degree();
  if (dn < dd) return std::nullopt;
  std::vector<Integer> r(numerator.coefficients().begin(), numerator.coefficients().end());
  std::vector<Integer> q(static_cast<std::size_t>(dn - dd + 1));
  auto dc = divisor.coefficients();
  const Integer& ld = divisor.leading();
  for (std::int64_t k = dn - dd; k >= 0; --k) {
    Integer& top = r[k + dd];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), ld.get_mpz_t())) return std::nullopt;
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), ld.get_mpz_t());
    for (std::int64_t i = 0; i <= dd; ++i) {
      mpz_submul(r[k + i].get_mpz_t(), q[k].get_mpz_t(), dc[i].get_mpz_t());
    }
  }
  for (std::int64_t i = 0; i < dd; ++i) {
    if (r[i] != 0) return std::nullopt;
  }
  return DensePolynomial(std::move(q));
}

bool divides(const DensePolynomial& divisor, const DensePolynomial& p) {
  return divide_exact(p, divisor).has_value();
}

DensePolynomial gcd(const DensePolynomial& p, const DensePolynomial& q) {
  if (p.is_zero() && q.is_zero()) throw InvalidInput("gcd: both arguments are zero");
  if (p.is_zero()) return primitive_part(q);
  if (q.is_zero()) return primitive_part(p);
  DensePolynomial a = primitive_part(p);
  DensePolynomial b = primitive_part(q);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.is_constant()) return DensePolynomial{1};
    DensePolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : primitive_part(r);
  }
  return a;
}

DensePolynomial gcd(const SparseIntegerPolynomial& p, const SparseIntegerPolynomial& q) {
  return gcd(p.to_dense(), q.to_dense());
}

namespace {

// 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1U) r = mul_mod(r, a);
    a = mul_mod(a, a);
    e >>= 1U;
  }
  return r;
}

std::vector<std::uint64_t> reduce_mod(const DensePolynomial& p) {
  std::vector<std::uint64_t> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), kPrime));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// In-place a mod b over F_p; b nonzero with nonzero leading coefficient.
void rem_mod(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv = pow_mod(b.back(), kPrime - 2);
  while (a.size() >= b.size()) {
    const std::uint64_t f = mul_mod(a.back(), inv);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t t = mul_mod(f, b[i]);
      std::uint64_t& x = a[shift + i];
      x = x >= t ? x - t : x + kPrime - t;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
}

}  // namespace

bool certainly_coprime(const DensePolynomial& p, const DensePolynomial& q) {
  if (p.is_zero() || q.is_zero()) return false;
  auto a = reduce_mod(p);
  auto b = reduce_mod(q);
  // A degree drop modulo the prime would void the argument.
  if (static_cast<std::int64_t>(a.size()) - 1 != p.degree()) return false;
  if (static_cast<std::int64_t>(b.size()) - 1 != q.degree()) return false;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) return true;
    rem_mod(a, b);
    std::swap(a, b);
  }
  return a.size() == 1;
}

Deflation deflate_at_one(const DensePolynomial& p) {
  if (p.is_zero()) throw InvalidInput("deflate_at_one: zero polynomial");
  Deflation out;
  std::vector<Integer> c(p.coefficients().begin(), p.coefficients().end());
  for (;;) {
    Integer sum = 0;
    for (const auto& x : c) sum += x;
    if (sum != 0) break;
    // Synthetic division by (z - 1): q_{i-1} = c_i + q_i.
    std::vector<Integer> q(c.size() - 1);
    Integer carry = 0;
    for (std::size_t i = c.size() - 1; i >= 1; --i) {
      carry += c[i];
      q[i - 1] = carry;
    }
    c = std::move(q);
    ++out.multiplicity;
  }
  out.residual = DensePolynomial(std::move(c));
  return out;
}

DensePolynomial squarefree_part(const DensePolynomial& p) {
  if (p.is_zero()) throw InvalidInput("squarefree_part: zero polynomial");
  DensePolynomial prim = primitive_part(p);
  if (prim.is_constant()) return prim;
  DensePolynomial g = gcd(prim, prim.derivative());
  if (g.is_constant()) return prim;
  auto q = divide_exact(prim, g);
  if (!q) throw TheoremViolation("squarefree_part: gcd does not divide its argument");
  return primitive_part(*q);
}

// ---------------------------------------------------------------------------
// Text form

std::string to_text(const SparseIntegerPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += t.coefficient.get_str(10);
    if (t.exponent > 0) {
      out += "*z^";
      out += std::to_string(t.exponent);
    }
  }
  return out;
}

std::string to_text(const DensePolynomial& p) { return to_text(p.to_sparse()); }

namespace {

bool canonical_integer(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && s[0] == '-') i = 1;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() - i > 1) return false;
  if (i == 1 && s.size() == 2 && s[1] == '0') return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return true;
}

bool canonical_exponent(std::string_view s) {
  if (s.empty() || s.size() > 19) return false;
  if (s[0] == '0') return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

SparseIntegerPolynomial parse_polynomial(std::string_view text) {
  if (text == "0") return {};
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (true) {
    const std::size_t sep = text.find(" + ", pos);
    std::string_view term = text.substr(pos, sep == std::string_view::npos ? std::string_view::npos
                                                                            : sep - pos);
    std::string_view coeff = term;
    std::uint64_t exponent = 0;
    if (const std::size_t star = term.find("*z^"); star != std::string_view::npos) {
      coeff = term.substr(0, star);
      std::string_view e = term.substr(star + 3);
      if (!canonical_exponent(e)) {
        throw InvalidInput("parse_polynomial: bad exponent in '" + std::string(term) + "'");
      }
      exponent = std::stoull(std::string(e));
    }
    if (!canonical_integer(coeff) || coeff == "0") {
      throw InvalidInput("parse_polynomial: bad coefficient in '" + std::string(term) + "'");
    }
    if (!terms.empty() && terms.back().exponent >= exponent) {
      throw InvalidInput("parse_polynomial: exponents must be strictly increasing");
    }
    terms.push_back({exponent, Integer(std::string(coeff), 10)});
    if (sep == std::string_view::npos) break;
    pos = sep + 3;
  }
  return SparseIntegerPolynomial::from_terms(std::move(terms));
}

}  // namespace nplet
