#pragma once

// Brute-force reference computations shared by the unit and acceptance
// tests. Each one is deliberately naive and shares no code with the library
// routine it checks.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace nplet::brute {

using Cx = std::complex<double>;

/// Sign of a permutation by counting inversions.
inline int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  }
  return inversions % 2 ? -1 : 1;
}

/// Leibniz expansion over all permutations.
template <class T>
T leibniz_determinant(const std::vector<std::vector<T>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  T total = T(0);
  do {
    T term = T(permutation_sign(p));
    for (int i = 0; i < n; ++i) term = term * m[i][p[i]];
    total = total + term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Row (z^m, m^(n-2), ..., m, 1) of the augmented matrix, evaluated.
inline std::vector<Cx> augmented_row(std::int64_t m, std::size_t n, Cx z) {
  std::vector<Cx> row{std::pow(z, static_cast<double>(m))};
  for (std::size_t k = n - 2; k >= 1; --k) row.push_back(std::pow(static_cast<double>(m), static_cast<double>(k)));
  row.push_back(1.0);
  return row;
}

/// Minor of the augmented matrix omitting the row for `omit`
/// (0 means the row for exponent 0), rows in ascending exponent order.
inline Cx numeric_augmented_minor(const std::vector<std::int64_t>& a, std::size_t omit, Cx z) {
  std::vector<std::int64_t> rows{0};
  rows.insert(rows.end(), a.begin(), a.end());
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(omit));
  std::vector<std::vector<Cx>> m;
  for (auto r : rows) m.push_back(augmented_row(r, a.size(), z));
  return leibniz_determinant(m);
}

/// Expected coefficient pattern of the quadruple minor on rows
/// p < q < r < s: sum of (-1)^j z^(x_j) V(others) with V(x,y,w) =
/// (x - y)(x - w)(y - w). Returned as (exponent, coefficient) pairs.
inline std::vector<std::pair<std::int64_t, mpz_class>> quadrinomial(std::int64_t p, std::int64_t q,
                                                                    std::int64_t r, std::int64_t s) {
  auto v = [](std::int64_t x, std::int64_t y, std::int64_t w) -> mpz_class {
    return mpz_class(x - y) * mpz_class(x - w) * mpz_class(y - w);
  };
  return {{p, v(q, r, s)}, {q, -v(p, r, s)}, {r, v(p, q, s)}, {s, -v(p, q, r)}};
}

struct BruteMinima {
  std::int64_t lambda1 = 0;
  std::int64_t lambda2 = 0;  // 0 when not reached within the radius
};

/// L1 successive minima of {v in Z^4 : v . a = 0} by scanning every
/// (v1, v2, v3) with |v1| + |v2| + |v3| <= radius and solving for v4.
inline BruteMinima brute_l1_minima(const std::vector<std::int64_t>& a, std::int64_t radius) {
  struct Hit {
    std::int64_t l1;
    std::int64_t v[4];
  };
  std::vector<Hit> hits;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    const std::int64_t rx = radius - std::abs(x);
    for (std::int64_t y = -rx; y <= rx; ++y) {
      const std::int64_t ry = rx - std::abs(y);
      for (std::int64_t w = -ry; w <= ry; ++w) {
        const std::int64_t partial = x * a[0] + y * a[1] + w * a[2];
        if (partial % a[3] != 0) continue;
        const std::int64_t t = -partial / a[3];
        const std::int64_t l1 = std::abs(x) + std::abs(y) + std::abs(w) + std::abs(t);
        if (l1 == 0 || l1 > radius) continue;
        hits.push_back({l1, {x, y, w, t}});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& u, const Hit& v) { return u.l1 < v.l1; });
  BruteMinima out;
  if (hits.empty()) return out;
  out.lambda1 = hits.front().l1;
  const Hit& first = hits.front();
  for (const Hit& h : hits) {
    bool parallel = true;
    for (int i = 0; i < 4 && parallel; ++i) {
      for (int j = i + 1; j < 4 && parallel; ++j) parallel = first.v[i] * h.v[j] == first.v[j] * h.v[i];
    }
    if (!parallel) {
      out.lambda2 = h.l1;
      break;
    }
  }
  return out;
}

/// Minimal polynomial z^2 - s_k z + c^k of xi^k for a root xi of
/// z^2 - t z + c, from the Lucas recurrence s_k = t s_(k-1) - c s_(k-2).
inline std::vector<long> quadratic_power_minpoly(long t, long c, int k) {
  long s_prev = 2;
  long s = t;
  for (int i = 1; i < k; ++i) {
    const long next = t * s - c * s_prev;
    s_prev = s;
    s = next;
  }
  long ck = 1;
  for (int i = 0; i < k; ++i) ck *= c;
  return {ck, -s, 1};
}

/// Random strictly increasing tuple in [1, max_value] with gcd 1.
inline std::vector<std::int64_t> random_coprime_tuple(std::mt19937_64& rng, std::size_t n,
                                                      std::int64_t max_value) {
  std::uniform_int_distribution<std::int64_t> pick(1, max_value);
  for (;;) {
    std::vector<std::int64_t> v;
    while (v.size() < n) {
      const auto x = pick(rng);
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    std::sort(v.begin(), v.end());
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x);
    if (g == 1) return v;
  }
}

}  // namespace nplet::brute
