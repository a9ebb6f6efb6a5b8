#pragma once

#include <cmath>
#include <utility>

#include "qdot/linalg.hpp"

namespace qdot {

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth >= max_depth)
    throw NumericsError("adaptive_simpson: recursion depth exhausted before tolerance");
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a,b] to a relative tolerance.
/// The absolute tolerance is seeded from a coarse scan of |f| so sharply
/// peaked integrands (narrow Gaussians at the interval ends) still refine.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol = 1e-10,
                        int max_depth = 48) {
  if (!(b > a)) {
    if (a == b) return 0.0;
    throw std::invalid_argument("adaptive_simpson: b < a");
  }
  double peak = 0.0;
  const int n_scan = 64;
  for (int i = 0; i <= n_scan; ++i) {
    const double x = a + (b - a) * i / n_scan;
    peak = std::max(peak, std::abs(f(x)));
  }
  const double tol = std::max(rel_tol * peak * (b - a), 1e-300);

  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

}  // namespace qdot
