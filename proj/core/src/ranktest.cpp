#include "nplet/ranktest.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <Eigen/Dense>

#include "nplet/cyclotomic.hpp"
#include "nplet/errors.hpp"
#include "nplet/roots.hpp"

namespace nplet {

// ---------------------------------------------------------------------------
// ExponentTuple

void require_increasing(std::span<const std::int64_t> exponents) {
  if (exponents.size() < 3) throw InvalidInput("exponent tuple needs at least three entries");
  if (exponents.front() <= 0) throw InvalidInput("exponents must be positive");
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw InvalidInput("exponents must be strictly increasing");
    }
  }
}

namespace {

std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  return g;
}

}  // namespace

ExponentTuple ExponentTuple::make(std::vector<std::int64_t> exponents) {
  require_increasing(exponents);
  if (gcd_of(exponents) != 1) {
    throw InvalidInput("exponents must be coprime; normalize " +
                       ExponentTuple(exponents).to_string() + " first");
  }
  return ExponentTuple(std::move(exponents));
}

ExponentTuple::Normalized ExponentTuple::normalize(std::vector<std::int64_t> exponents) {
  require_increasing(exponents);
  const std::int64_t h = gcd_of(exponents);
  for (auto& e : exponents) e /= h;
  return {ExponentTuple(std::move(exponents)), h};
}

std::string ExponentTuple::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(exponents_[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// Minors

namespace {

std::vector<std::int64_t> rows_with_zero(std::span<const std::int64_t> exponents) {
  std::vector<std::int64_t> rows;
  rows.reserve(exponents.size() + 1);
  rows.push_back(0);
  rows.insert(rows.end(), exponents.begin(), exponents.end());
  return rows;
}

// prod_{i<k} (x_i - x_k) over x = rows without positions skip_a and skip_b.
Integer vandermonde_without(const std::vector<std::int64_t>& rows, std::size_t skip_a,
                            std::size_t skip_b) {
  Integer acc = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    for (std::size_t k = i + 1; k < rows.size(); ++k) {
      if (k == skip_a || k == skip_b) continue;
      acc *= static_cast<long>(rows[i] - rows[k]);
    }
  }
  return acc;
}

}  // namespace

std::vector<SparseIntegerPolynomial> build_minors(std::span<const std::int64_t> exponents) {
  require_increasing(exponents);
  const auto rows = rows_with_zero(exponents);
  std::vector<SparseIntegerPolynomial> minors;
  minors.reserve(rows.size());
  for (std::size_t omit = 0; omit < rows.size(); ++omit) {
    std::vector<Term> terms;
    std::size_t j = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == omit) continue;
      Integer c = vandermonde_without(rows, omit, r);
      if (j % 2 == 1) c = -c;
      terms.push_back({static_cast<std::uint64_t>(rows[r]), std::move(c)});
      ++j;
    }
    minors.push_back(SparseIntegerPolynomial::from_terms(std::move(terms)));
  }
  return minors;
}

MinorSystem build_minor_system(const ExponentTuple& tuple) {
  return {tuple, build_minors(tuple.exponents())};
}

Integer integer_determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
    }
    prev = a[k][k];
  }
  return sign < 0 ? Integer(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

std::vector<SparseIntegerPolynomial> build_minors_by_elimination(
    std::span<const std::int64_t> exponents) {
  require_increasing(exponents);
  const auto rows = rows_with_zero(exponents);
  const std::size_t n = exponents.size();
  std::vector<SparseIntegerPolynomial> minors;
  for (std::size_t omit = 0; omit < rows.size(); ++omit) {
    std::vector<std::int64_t> kept;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != omit) kept.push_back(rows[r]);
    }
    std::vector<Term> terms;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      // Cofactor of (j, 0): columns m^(n-2), ..., m, 1 of the other rows.
      std::vector<std::vector<Integer>> block;
      for (std::size_t r = 0; r < kept.size(); ++r) {
        if (r == j) continue;
        std::vector<Integer> row(n - 1);
        for (std::size_t c = 0; c + 1 < n; ++c) {
          mpz_ui_pow_ui(row[c].get_mpz_t(), static_cast<unsigned long>(kept[r]),
                        static_cast<unsigned long>(n - 2 - c));
        }
        block.push_back(std::move(row));
      }
      Integer c = integer_determinant(std::move(block));
      if (j % 2 == 1) c = -c;
      terms.push_back({static_cast<std::uint64_t>(kept[j]), std::move(c)});
    }
    minors.push_back(SparseIntegerPolynomial::from_terms(std::move(terms)));
  }
  return minors;
}

// ---------------------------------------------------------------------------
// Classification names

std::string to_string(Classification c) {
  switch (c) {
    case Classification::trivial:
      return "trivial";
    case Classification::root_of_unity:
      return "root_of_unity";
    case Classification::genuine:
      return "genuine";
    case Classification::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Classification classification_from_string(const std::string& name) {
  if (name == "trivial") return Classification::trivial;
  if (name == "root_of_unity") return Classification::root_of_unity;
  if (name == "genuine") return Classification::genuine;
  if (name == "inconclusive") return Classification::inconclusive;
  throw InvalidInput("unknown classification '" + name + "'");
}

// ---------------------------------------------------------------------------
// Decision

RankCertificate decide(const ExponentTuple& tuple) {
  const auto start = std::chrono::steady_clock::now();
  const MinorSystem system = build_minor_system(tuple);

  RankCertificate cert{.tuple = tuple};
  std::vector<DensePolynomial> residuals;
  std::int64_t multiplicity = -1;
  for (const auto& m : system.minors) {
    cert.minor_degrees.push_back(m.degree());
    Deflation d = deflate_at_one(m.to_dense());
    multiplicity = multiplicity < 0 ? d.multiplicity : std::min(multiplicity, d.multiplicity);
    residuals.push_back(std::move(d.residual));
  }
  // (z - 1) is coprime to every residual, so the GCD splits into the
  // smallest multiplicity at 1 times the GCD of the residuals.
  std::sort(residuals.begin(), residuals.end(),
            [](const DensePolynomial& a, const DensePolynomial& b) { return a.degree() < b.degree(); });
  DensePolynomial common = primitive_part(residuals.front());
  for (std::size_t i = 1; i < residuals.size() && !common.is_constant(); ++i) {
    if (certainly_coprime(common, residuals[i])) {
      common = DensePolynomial{1};
      break;
    }
    common = gcd(common, residuals[i]);
  }

  cert.one_multiplicity = multiplicity;
  cert.residual = common;
  cert.gcd = DensePolynomial::z_minus_one_power(static_cast<std::size_t>(multiplicity)) * common;
  cert.anomalous = !common.is_constant();
  if (cert.anomalous) {
    cert.witness_minpoly = common;
    try {
      const CyclotomicVerdict v = classify_cyclotomic(common);
      cert.classification =
          v.is_product_of_cyclotomics ? Classification::root_of_unity : Classification::genuine;
      cert.cyclotomic_orders = v.orders;
    } catch (const Inconclusive&) {
      cert.classification = Classification::inconclusive;
    }
    const auto coeffs = common.to_complex();
    for (const auto& r : find_roots(coeffs).roots) cert.root_moduli.push_back(std::abs(r.value));
    std::sort(cert.root_moduli.begin(), cert.root_moduli.end());
  }
  cert.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

// ---------------------------------------------------------------------------
// Numeric rank

int rank_at(std::span<const std::int64_t> exponents, std::complex<double> z, double tolerance) {
  require_increasing(exponents);
  const auto n = static_cast<Eigen::Index>(exponents.size());
  Eigen::MatrixXcd a(n, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = static_cast<double>(exponents[i]);
    double power = 1.0;
    for (Eigen::Index c = 0; c + 1 < n - 1; ++c) {
      power *= e;
      a(i, c) = power;
    }
    a(i, n - 2) = std::pow(z, e) - 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  const double threshold = tolerance * std::max(1.0, s(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

int rank_at(const ExponentTuple& tuple, std::complex<double> z, double tolerance) {
  return rank_at(tuple.exponents(), z, tolerance);
}

// ---------------------------------------------------------------------------
// Scaling covariance

ScalingCheck scaling_transport(const ExponentTuple& tuple, std::int64_t h) {
  if (h < 1) throw InvalidInput("scaling_transport: h must be positive");
  std::vector<std::int64_t> scaled(tuple.exponents().begin(), tuple.exponents().end());
  for (auto& e : scaled) e *= h;
  const auto base = build_minors(tuple.exponents());
  const auto big = build_minors(scaled);
  const std::size_t n = tuple.n();
  ScalingCheck out;
  mpz_ui_pow_ui(out.factor.get_mpz_t(), static_cast<unsigned long>(h),
                static_cast<unsigned long>((n - 1) * (n - 2) / 2));
  out.holds = true;
  for (std::size_t k = 0; k < base.size(); ++k) {
    const bool ok = big[k] == out.factor * base[k].substitute_power(static_cast<std::uint64_t>(h));
    out.per_minor.push_back(ok);
    out.holds = out.holds && ok;
  }
  return out;
}

}  // namespace nplet
