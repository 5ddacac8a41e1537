#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "curvebump/sample.hpp"
#include "curvebump/types.hpp"

namespace curvebump::testing {

using ScalarFn = std::function<double(const Vector&)>;

inline Vector fd_gradient(const ScalarFn& f, const Vector& x, double step = 1e-5) {
  Vector g(x.size());
  for (int a = 0; a < x.size(); ++a) {
    Vector xp = x, xm = x;
    xp[a] += step;
    xm[a] -= step;
    g[a] = (f(xp) - f(xm)) / (2.0 * step);
  }
  return g;
}

inline Matrix fd_hessian(const ScalarFn& f, const Vector& x, double step = 1e-4) {
  const int d = static_cast<int>(x.size());
  Matrix h(d, d);
  const double f0 = f(x);
  for (int a = 0; a < d; ++a) {
    Vector xp = x, xm = x;
    xp[a] += step;
    xm[a] -= step;
    h(a, a) = (f(xp) - 2.0 * f0 + f(xm)) / (step * step);
    for (int b = a + 1; b < d; ++b) {
      Vector pp = x, pm = x, mp = x, mm = x;
      pp[a] += step, pp[b] += step;
      pm[a] += step, pm[b] -= step;
      mp[a] -= step, mp[b] += step;
      mm[a] -= step, mm[b] -= step;
      h(a, b) = h(b, a) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * step * step);
    }
  }
  return h;
}

/// det(H - lambda I) for d <= 3, expanded by cofactors.
inline double characteristic(const Matrix& h, double lambda) {
  Matrix m = h;
  for (int a = 0; a < m.rows(); ++a) m(a, a) -= lambda;
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline double bisect(const std::function<double(double)>& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Roots of the characteristic polynomial, descending. The polynomial is
/// split into monotone pieces at the roots of its derivative (found by
/// bisection on a fine scan) and each piece with a sign change is bisected.
inline std::vector<double> charpoly_roots(const Matrix& h) {
  const int d = static_cast<int>(h.rows());
  double bound = 0.0;  // Gershgorin
  for (int r = 0; r < d; ++r) {
    double row = 0.0;
    for (int c = 0; c < d; ++c) row += std::abs(h(r, c));
    bound = std::max(bound, row);
  }
  bound = bound * 1.01 + 1e-12;
  auto p = [&](double l) { return characteristic(h, l); };
  auto dp = [&](double l) {
    const double s = 1e-6 * std::max(1.0, bound);
    return (p(l + s) - p(l - s)) / (2.0 * s);
  };
  // Breakpoints: the ends plus every derivative sign change on a fine scan.
  std::vector<double> breaks{-bound};
  constexpr int kScan = 4000;
  double prev = -bound, dprev = dp(prev);
  for (int k = 1; k <= kScan; ++k) {
    const double cur = -bound + 2.0 * bound * k / kScan;
    const double dcur = dp(cur);
    if ((dcur > 0.0) != (dprev > 0.0)) breaks.push_back(bisect(dp, prev, cur));
    prev = cur;
    dprev = dcur;
  }
  breaks.push_back(bound);
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    const double pa = p(a), pb = p(b);
    if (pa == 0.0) {
      roots.push_back(a);
    } else if ((pa > 0.0) != (pb > 0.0) && pb != 0.0) {
      roots.push_back(bisect(p, a, b));
    }
  }
  if (p(breaks.back()) == 0.0) roots.push_back(breaks.back());
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

inline Matrix random_symmetric(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) m(r, c) = m(c, r) = u(rng);
  return m;
}

inline SampleMatrix random_sample(std::mt19937_64& rng, std::size_t n, int d, double sd = 1.0) {
  std::normal_distribution<double> z(0.0, sd);
  std::vector<double> data(n * d);
  for (double& v : data) v = z(rng);
  return SampleMatrix(n, d, std::move(data));
}

inline Vector random_point(std::mt19937_64& rng, int d, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector x(d);
  for (int a = 0; a < d; ++a) x[a] = u(rng);
  return x;
}

inline double brute_hausdorff(std::span<const Vector> a, std::span<const Vector> b) {
  auto directed = [](std::span<const Vector> from, std::span<const Vector> to) {
    double worst = 0.0;
    for (const Vector& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vector& q : to) best = std::min(best, (p - q).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline double relative_error(double got, double want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

}  // namespace curvebump::testing
