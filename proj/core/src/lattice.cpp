#include "nplet/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nplet/errors.hpp"

namespace nplet {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticRefusal("lattice: int64 overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticRefusal("lattice: int64 overflow");
  return r;
}

// u <- u + s * v
void axpy(IntVector& u, std::int64_t s, const IntVector& v) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = checked_add(u[i], checked_mul(s, v[i]));
}

struct ExtGcd {
  std::int64_t g, s, t;  // s * a + t * b = g >= 0
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

void normalize_sign(IntVector& v) {
  for (auto x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    return;
  }
}

bool parallel(const IntVector& u, const IntVector& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      if (static_cast<__int128>(u[i]) * v[j] != static_cast<__int128>(u[j]) * v[i]) return false;
    }
  }
  return true;
}

// gcd of the 2 x 2 minors is 1.
bool primitive_pair(const IntVector& u, const IntVector& v) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const std::int64_t m = checked_add(checked_mul(u[i], v[j]), -checked_mul(u[j], v[i]));
      g = std::gcd(g, m);
      if (g == 1) return true;
    }
  }
  return false;
}

// Ordering used to pick among vectors of equal L1 norm.
struct Ranked {
  IntVector v;
  IntVector coeffs;
  std::int64_t l1 = 0;
  std::int64_t degree = 0;
  bool set = false;
};

bool ranks_before(const IntVector& v, std::int64_t l1, std::int64_t deg, const Ranked& best) {
  if (!best.set) return true;
  if (l1 != best.l1) return l1 < best.l1;
  if (deg != best.degree) return deg < best.degree;
  return v < best.v;
}

// Gram-Schmidt data in flat row-major storage, reused across LLL steps.
struct Gso {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<double> mu;
  std::vector<double> norm_sq;
  std::vector<double> star;
  double& m(std::size_t i, std::size_t j) { return mu[i * k + j]; }
  double m(std::size_t i, std::size_t j) const { return mu[i * k + j]; }
};

void gram_schmidt(const std::vector<IntVector>& b, Gso& g) {
  g.k = b.size();
  g.n = b.empty() ? 0 : b[0].size();
  const std::size_t k = g.k;
  const std::size_t n = g.n;
  g.mu.assign(k * k, 0.0);
  g.norm_sq.assign(k, 0.0);
  g.star.resize(k * n);
  for (std::size_t i = 0; i < k; ++i) {
    double* si = &g.star[i * n];
    for (std::size_t c = 0; c < n; ++c) si[c] = static_cast<double>(b[i][c]);
    for (std::size_t j = 0; j < i; ++j) {
      const double* sj = &g.star[j * n];
      double d = 0;
      for (std::size_t c = 0; c < n; ++c) d += static_cast<double>(b[i][c]) * sj[c];
      const double mij = d / g.norm_sq[j];
      g.m(i, j) = mij;
      for (std::size_t c = 0; c < n; ++c) si[c] -= mij * sj[c];
    }
    double s = 0;
    for (std::size_t c = 0; c < n; ++c) s += si[c] * si[c];
    g.norm_sq[i] = s;
    g.m(i, i) = 1.0;
  }
}

void lll_reduce(std::vector<IntVector>& b, Gso& g, double delta = 0.99) {
  const std::size_t k = b.size();
  std::size_t i = 1;
  while (i < k) {
    gram_schmidt(b, g);
    for (std::size_t j = i; j-- > 0;) {
      const double q = std::round(g.m(i, j));
      if (q == 0.0) continue;
      axpy(b[i], -static_cast<std::int64_t>(q), b[j]);
      for (std::size_t l = 0; l <= j; ++l) g.m(i, l) -= q * g.m(j, l);
    }
    const double m = g.m(i, i - 1);
    if (g.norm_sq[i] >= (delta - m * m) * g.norm_sq[i - 1]) {
      ++i;
    } else {
      std::swap(b[i], b[i - 1]);
      i = std::max<std::size_t>(i - 1, 1);
    }
  }
  gram_schmidt(b, g);
}

// Every nonzero v = sum x_i b_i with |v|_2^2 <= radius_sq, one of each +-v
// pair. radius_sq may shrink from inside the visitor.
template <class Visit>
class Enumerator {
 public:
  Enumerator(const std::vector<IntVector>& b, const Gso& g, double& radius_sq, Visit& visit)
      : b_(b), g_(g), radius_sq_(radius_sq), visit_(visit), x_(b.size(), 0), v_(b[0].size(), 0) {}

  void run() { level(b_.size() - 1, 0.0, true); }

 private:
  void level(std::size_t i, double partial, bool higher_zero) {
    const std::size_t k = b_.size();
    double c = 0;
    for (std::size_t j = i + 1; j < k; ++j) c -= static_cast<double>(x_[j]) * g_.m(j, i);
    const double room = radius_sq_ - partial;
    if (room < 0) return;
    const double r = std::sqrt(room / g_.norm_sq[i]) + 1e-9;
    auto lo = static_cast<std::int64_t>(std::ceil(c - r));
    const auto hi = static_cast<std::int64_t>(std::floor(c + r));
    if (higher_zero) lo = std::max<std::int64_t>(lo, 0);
    for (std::int64_t xi = lo; xi <= hi; ++xi) {
      const double y = static_cast<double>(xi) - c;
      const double next = partial + g_.norm_sq[i] * y * y;
      if (next > radius_sq_ * (1.0 + 1e-12) + 1e-9) continue;
      x_[i] = xi;
      if (i == 0) {
        if (higher_zero && xi == 0) continue;
        std::fill(v_.begin(), v_.end(), 0);
        for (std::size_t j = 0; j < k; ++j) {
          if (x_[j] != 0) axpy(v_, x_[j], b_[j]);
        }
        visit_(x_, v_);
      } else {
        level(i - 1, next, higher_zero && xi == 0);
      }
    }
    x_[i] = 0;
  }

  const std::vector<IntVector>& b_;
  const Gso& g_;
  double& radius_sq_;
  Visit& visit_;
  IntVector x_;
  IntVector v_;
};

template <class Visit>
void enumerate(const std::vector<IntVector>& b, const Gso& g, double& radius_sq, Visit visit) {
  Enumerator<Visit>(b, g, radius_sq, visit).run();
}

double ball_for(std::int64_t l1) {
  const auto r = static_cast<double>(l1);
  return r * r * (1.0 + 1e-9) + 1e-9;
}

}  // namespace

std::int64_t l1_norm(std::span<const std::int64_t> v) {
  std::int64_t s = 0;
  for (auto x : v) s = checked_add(s, x < 0 ? -x : x);
  return s;
}

std::int64_t degree_norm(std::span<const std::int64_t> v) {
  std::int64_t pos = 0;
  std::int64_t neg = 0;
  for (auto x : v) {
    if (x > 0) pos = checked_add(pos, x);
    if (x < 0) neg = checked_add(neg, -x);
  }
  return std::max(pos, neg);
}

std::int64_t dot(std::span<const std::int64_t> u, std::span<const std::int64_t> v) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s = checked_add(s, checked_mul(u[i], v[i]));
  return s;
}

std::vector<IntVector> kernel_basis(std::span<const std::int64_t> a) {
  const std::size_t n = a.size();
  if (n < 2) throw InvalidInput("kernel_basis: need at least two coordinates");
  // Columns of u; invariant: a . u[c] == r[c].
  std::vector<IntVector> u(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  IntVector r(a.begin(), a.end());
  for (std::size_t i = 1; i < n; ++i) {
    if (r[i] == 0) continue;
    const ExtGcd e = ext_gcd(r[0], r[i]);
    const std::int64_t p = r[0] / e.g;
    const std::int64_t q = r[i] / e.g;
    IntVector c0 = u[0];
    IntVector ci = u[i];
    for (std::size_t t = 0; t < n; ++t) {
      u[0][t] = checked_add(checked_mul(e.s, c0[t]), checked_mul(e.t, ci[t]));
      u[i][t] = checked_add(checked_mul(q, c0[t]), -checked_mul(p, ci[t]));
    }
    r[0] = e.g;
    r[i] = 0;
  }
  return {u.begin() + 1, u.end()};
}

std::vector<IntVector> complete_to_unimodular(const std::vector<IntVector>& rows, std::size_t k) {
  const std::size_t r = rows.size();
  if (r > k) throw InvalidInput("complete_to_unimodular: more rows than columns");
  std::vector<IntVector> m = rows;
  // vinv starts as the identity; column operations T on m act on it as
  // T^(-1) from the left.
  std::vector<IntVector> vinv(k, IntVector(k, 0));
  for (std::size_t i = 0; i < k; ++i) vinv[i][i] = 1;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (m[i][j] == 0) continue;
      if (m[i][i] == 0) {
        for (auto& row : m) std::swap(row[i], row[j]);
        std::swap(vinv[i], vinv[j]);
        continue;
      }
      const ExtGcd e = ext_gcd(m[i][i], m[i][j]);
      const std::int64_t a = m[i][i] / e.g;
      const std::int64_t bq = m[i][j] / e.g;
      for (auto& row : m) {
        const std::int64_t ci = row[i];
        const std::int64_t cj = row[j];
        row[i] = checked_add(checked_mul(e.s, ci), checked_mul(e.t, cj));
        row[j] = checked_add(-checked_mul(bq, ci), checked_mul(a, cj));
      }
      const IntVector ri = vinv[i];
      const IntVector rj = vinv[j];
      for (std::size_t c = 0; c < k; ++c) {
        vinv[i][c] = checked_add(checked_mul(a, ri[c]), checked_mul(bq, rj[c]));
        vinv[j][c] = checked_add(-checked_mul(e.t, ri[c]), checked_mul(e.s, rj[c]));
      }
    }
    if (m[i][i] != 1 && m[i][i] != -1) {
      throw InvalidInput("complete_to_unimodular: rows are not primitive");
    }
  }
  for (std::size_t i = 0; i < r; ++i) vinv[i] = rows[i];
  return vinv;
}

Integer gram_determinant(const std::vector<IntVector>& vectors) {
  std::vector<std::vector<Integer>> gram(vectors.size(), std::vector<Integer>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i; j < vectors.size(); ++j) {
      Integer s = 0;
      for (std::size_t c = 0; c < vectors[i].size(); ++c) {
        s += Integer(static_cast<long>(vectors[i][c])) * static_cast<long>(vectors[j][c]);
      }
      gram[i][j] = s;
      gram[j][i] = s;
    }
  }
  return integer_determinant(std::move(gram));
}

LatticeBasis orthogonal_lattice(const ExponentTuple& tuple) {
  const auto a = tuple.exponents();
  std::vector<IntVector> b = kernel_basis(a);
  Gso g;
  lll_reduce(b, g);

  Ranked first;
  for (std::size_t i = 0; i < b.size(); ++i) {
    IntVector v = b[i];
    IntVector x(b.size(), 0);
    x[i] = 1;
    const IntVector raw = v;
    normalize_sign(v);
    if (v != raw) x[i] = -1;
    const std::int64_t l1 = l1_norm(v);
    const std::int64_t deg = degree_norm(v);
    if (ranks_before(v, l1, deg, first)) first = {v, x, l1, deg, true};
  }
  IntVector v;  // scratch, reused by both visitors
  IntVector cx;
  double radius_sq = ball_for(first.l1);
  enumerate(b, g, radius_sq, [&](const IntVector& x, const IntVector& raw) {
    const std::int64_t l1 = l1_norm(raw);
    if (l1 > first.l1) return;
    v.assign(raw.begin(), raw.end());
    cx.assign(x.begin(), x.end());
    normalize_sign(v);
    if (v != raw) {
      for (auto& c : cx) c = -c;
    }
    const std::int64_t deg = degree_norm(v);
    if (ranks_before(v, l1, deg, first)) {
      first = {v, cx, l1, deg, true};
      radius_sq = ball_for(l1);
    }
  });

  // Second minimum among vectors independent of the first. Taking only
  // vectors that form a primitive pair with it loses nothing: inside the
  // rank-2 sublattice a minimal independent vector can always be traded for
  // one of the same norm that completes a basis.
  std::int64_t cap = -1;
  for (const auto& row : b) {
    if (parallel(row, first.v)) continue;
    const std::int64_t l1 = l1_norm(row);
    if (cap < 0 || l1 < cap) cap = l1;
  }
  Ranked second;
  radius_sq = ball_for(cap);
  enumerate(b, g, radius_sq, [&](const IntVector& x, const IntVector& raw) {
    const std::int64_t l1 = l1_norm(raw);
    if (second.set && l1 > second.l1) return;
    if (parallel(raw, first.v) || !primitive_pair(raw, first.v)) return;
    v.assign(raw.begin(), raw.end());
    cx.assign(x.begin(), x.end());
    normalize_sign(v);
    if (v != raw) {
      for (auto& c : cx) c = -c;
    }
    const std::int64_t deg = degree_norm(v);
    if (ranks_before(v, l1, deg, second)) {
      second = {v, cx, l1, deg, true};
      radius_sq = ball_for(l1);
    }
  });
  if (!second.set) throw TheoremViolation("orthogonal_lattice: no second minimum found");

  const std::size_t k = b.size();
  const auto coeffs = complete_to_unimodular({first.coeffs, second.coeffs}, k);
  std::vector<IntVector> basis;
  for (const auto& row : coeffs) {
    IntVector v(a.size(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (row[j] != 0) axpy(v, row[j], b[j]);
    }
    basis.push_back(std::move(v));
  }
  // Shorten the completion vectors greedily by adding +-(other basis vectors).
  for (std::size_t i = 2; i < basis.size(); ++i) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == i) continue;
        for (std::int64_t s : {1, -1}) {
          IntVector w = basis[i];
          axpy(w, s, basis[j]);
          if (l1_norm(w) < l1_norm(basis[i])) {
            basis[i] = std::move(w);
            improved = true;
          }
        }
      }
    }
    normalize_sign(basis[i]);
  }
  std::sort(basis.begin() + 2, basis.end(), [](const IntVector& u, const IntVector& v) {
    const auto lu = l1_norm(u);
    const auto lv = l1_norm(v);
    if (lu != lv) return lu < lv;
    return u < v;
  });

  LatticeBasis out{tuple, {}, {}};
  for (auto& v : basis) {
    out.norms.push_back({l1_norm(v), degree_norm(v)});
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::int64_t degree_bound(std::int64_t d) {
  if (d < 1) throw InvalidInput("degree_bound: d must be positive");
  Integer x = Integer(96) * 96 * 96;
  x *= Integer(static_cast<long>(d));
  x *= Integer(static_cast<long>(d));
  Integer root;
  mpz_root(root.get_mpz_t(), x.get_mpz_t(), 3);
  return root.get_si();
}

std::int64_t degree_bound(const ExponentTuple& tuple) {
  if (tuple.n() != 4) throw InvalidInput("degree_bound: defined for quadruples only");
  return degree_bound(tuple.last());
}

MinkowskiCheck minkowski_check(const LatticeBasis& basis) {
  if (basis.tuple.n() != 4) throw InvalidInput("minkowski_check: defined for quadruples only");
  const std::int64_t d = basis.tuple.last();
  MinkowskiCheck out;
  out.product = basis.norms[0].l1 * basis.norms[1].l1;
  out.bound = 96.0 * std::pow(static_cast<double>(d), 2.0 / 3.0);
  out.margin = static_cast<double>(out.product) / out.bound;
  Integer lhs = Integer(static_cast<long>(out.product));
  lhs = lhs * lhs * lhs;
  Integer rhs = Integer(96) * 96 * 96;
  rhs *= Integer(static_cast<long>(d));
  rhs *= Integer(static_cast<long>(d));
  if (lhs > rhs) {
    throw TheoremViolation("minkowski_check: |l1|*|l2| = " + std::to_string(out.product) +
                           " exceeds 96 d^(2/3) = " + std::to_string(out.bound) + " for " +
                           basis.tuple.to_string() + "; basis " + to_text(basis));
  }
  return out;
}

double degree_norm_ratio(const LatticeBasis& basis) {
  const double d = static_cast<double>(basis.tuple.last());
  return static_cast<double>(basis.norms[0].degree * basis.norms[1].degree) /
         std::pow(d, 2.0 / 3.0);
}

std::string to_text(const LatticeBasis& basis) {
  std::string out;
  for (std::size_t i = 0; i < basis.vectors.size(); ++i) {
    if (i > 0) out += " ";
    out += "(";
    for (std::size_t c = 0; c < basis.vectors[i].size(); ++c) {
      if (c > 0) out += ",";
      out += std::to_string(basis.vectors[i][c]);
    }
    out += ")[l1=" + std::to_string(basis.norms[i].l1) +
           ",deg=" + std::to_string(basis.norms[i].degree) + "]";
  }
  return out;
}

}  // namespace nplet
