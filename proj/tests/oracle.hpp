// Test-side numerical oracles, kept independent of the library's quadrature
// and root-finding paths: recursive adaptive Simpson instead of
// Gauss-Kronrod, plain bisection instead of Newton refinement.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

namespace detail {

template <class F>
double simpson(F&& f, double a, double m, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_step(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, lm, m, fa, flm, fm);
  const double right = simpson(f, m, rm, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("oracle::integrate: recursion limit");
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-11, int depth = 60) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = detail::simpson(f, a, m, b, fa, fm, fb);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// integral over [a, inf) via x = a + t/(1-t); endpoint t=1 evaluated as 0
template <class F>
double integrate_to_inf(F&& f, double a, double tol = 1e-11) {
  auto mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double om = 1.0 - t;
    const double v = f(a + t / om) / (om * om);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, tol);
}

// root of the monotone function g on [lo, hi] by pure bisection
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     int iterations = 200) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
