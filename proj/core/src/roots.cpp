#include "nplet/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nplet/errors.hpp"

namespace nplet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Evaluation {
  Complex ratio;         // p / p'
  double log_abs_value;  // log |p(z)|
  bool small;            // |p(z)| within rounding noise of zero
};

// p and p/p' at z for monic-free coefficients c[0..m], c[m] != 0.
Evaluation evaluate_with_ratio(std::span<const Complex> c, Complex z) {
  const std::size_t m = c.size() - 1;
  const double az = std::abs(z);
  Evaluation out{};
  if (az <= 1.0) {
    Complex p = c[m];
    Complex dp = 0;
    double bound = std::abs(c[m]);
    for (std::size_t k = m; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
      bound = bound * az + std::abs(c[k]);
    }
    out.ratio = dp == Complex(0) ? Complex(0) : p / dp;
    out.log_abs_value = std::log(std::abs(p));
    out.small = std::abs(p) <= 4.0 * static_cast<double>(m) * kEps * bound;
    if (dp == Complex(0)) out.small = true;
    return out;
  }
  // p(z) = z^m q(w) with w = 1/z and q the reversed polynomial.
  const Complex w = 1.0 / z;
  const double aw = 1.0 / az;
  Complex q = c[0];
  Complex dq = 0;
  double bound = std::abs(c[0]);
  for (std::size_t k = 1; k <= m; ++k) {
    dq = dq * w + q;
    q = q * w + c[k];
    bound = bound * aw + std::abs(c[k]);
  }
  const Complex denom = static_cast<double>(m) - w * dq / q;
  out.ratio = (q == Complex(0) || denom == Complex(0)) ? Complex(0) : z / denom;
  out.log_abs_value = static_cast<double>(m) * std::log(az) + std::log(std::abs(q));
  out.small = std::abs(q) <= 4.0 * static_cast<double>(m) * kEps * bound;
  if (q == Complex(0)) out.small = true;
  return out;
}

// Starting points on circles read off the upper convex hull of
// (i, log|c_i|), one circle per hull edge.
std::vector<Complex> initial_points(std::span<const Complex> c) {
  const std::size_t m = c.size() - 1;
  std::vector<std::size_t> idx;
  std::vector<double> lg(c.size());
  for (std::size_t i = 0; i <= m; ++i) {
    if (c[i] != Complex(0)) lg[i] = std::log(std::abs(c[i]));
  }
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i <= m; ++i) {
    if (c[i] == Complex(0)) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b when it lies on or below segment a -> i.
      const double cross = (static_cast<double>(b) - static_cast<double>(a)) * (lg[i] - lg[a]) -
                           (lg[b] - lg[a]) * (static_cast<double>(i) - static_cast<double>(a));
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<Complex> pts;
  pts.reserve(m);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t i0 = hull[h];
    const std::size_t i1 = hull[h + 1];
    const std::size_t count = i1 - i0;
    const double radius = std::exp((lg[i0] - lg[i1]) / static_cast<double>(count));
    for (std::size_t j = 0; j < count; ++j) {
      const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(count) +
                           kTwoPi * static_cast<double>(i0) / static_cast<double>(m) + 0.7;
      pts.push_back(std::polar(radius, angle));
    }
  }
  return pts;
}

}  // namespace

Complex evaluate(std::span<const Complex> coefficients, Complex z) {
  if (coefficients.empty()) return 0;
  if (std::abs(z) <= 1.0) {
    Complex p = 0;
    for (std::size_t k = coefficients.size(); k-- > 0;) p = p * z + coefficients[k];
    return p;
  }
  const Complex w = 1.0 / z;
  Complex q = 0;
  for (const auto& c : coefficients) q = q * w + c;
  return std::pow(z, static_cast<double>(coefficients.size() - 1)) * q;
}

RootFindResult find_roots(std::span<const Complex> coefficients, int max_iterations) {
  std::size_t top = coefficients.size();
  while (top > 0 && coefficients[top - 1] == Complex(0)) --top;
  if (top == 0) throw InvalidInput("find_roots: zero polynomial");
  std::size_t low = 0;
  while (coefficients[low] == Complex(0)) ++low;

  RootFindResult result;
  for (std::size_t i = 0; i < low; ++i) result.roots.push_back({Complex(0), 0.0});
  std::span<const Complex> c = coefficients.subspan(low, top - low);
  const std::size_t m = c.size() - 1;
  result.converged = true;
  if (m == 0) return result;
  if (low > 1) result.clustered = true;

  std::vector<Complex> z = initial_points(c);
  std::vector<bool> done(m, false);
  if (m == 1) {
    z[0] = -c[0] / c[1];
    done[0] = true;
  }
  int it = 0;
  for (; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i]) continue;
      const Evaluation ev = evaluate_with_ratio(c, z[i]);
      if (ev.small) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex s = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (diff != Complex(0)) s += 1.0 / diff;
      }
      const Complex corr = ev.ratio / (1.0 - ev.ratio * s);
      z[i] -= corr;
      if (std::abs(corr) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) break;
  }
  result.iterations = it;
  result.converged = std::all_of(done.begin(), done.end(), [](bool b) { return b; });

  const double log_lead = std::log(std::abs(c[m]));
  const double log_m = std::log(static_cast<double>(m));
  std::vector<RootApproximation> found(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Evaluation ev = evaluate_with_ratio(c, z[i]);
    double log_den = log_lead;
    bool coincident = false;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double d = std::abs(z[i] - z[j]);
      if (d == 0) {
        coincident = true;
        break;
      }
      log_den += std::log(d);
    }
    double radius = 0.0;
    if (coincident) {
      radius = std::numeric_limits<double>::infinity();
    } else if (std::isfinite(ev.log_abs_value)) {
      radius = std::exp(log_m + ev.log_abs_value - log_den);
    }
    found[i] = {z[i], radius};
  }
  for (std::size_t i = 0; i < m && !result.clustered; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(found[i].value - found[j].value) <= found[i].radius + found[j].radius) {
        result.clustered = true;
        break;
      }
    }
  }
  result.roots.insert(result.roots.end(), found.begin(), found.end());
  std::sort(result.roots.begin(), result.roots.end(),
            [](const RootApproximation& a, const RootApproximation& b) {
              const double ma = std::abs(a.value);
              const double mb = std::abs(b.value);
              if (ma != mb) return ma < mb;
              return std::arg(a.value) < std::arg(b.value);
            });
  return result;
}

}  // namespace nplet
