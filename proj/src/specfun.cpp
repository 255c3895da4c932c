#include "fbnet/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fbnet/errors.hpp"
#include "fbnet/quadrature.hpp"

namespace fbnet::specfun {

namespace detail {

double log_gamma(double z) {
  // Lanczos approximation, g = 7, 9 coefficients; |rel err| ~ 1e-15 for z > 0.
  static constexpr double kCoef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  }
  const double x = z - 1.0;
  double s = kCoef[0];
  for (int i = 1; i < 9; ++i) s += kCoef[i] / (x + i);
  const double base = x + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(base) - base +
         std::log(s);
}

namespace {

constexpr int kMaxIter = 600;
constexpr double kEps = 1e-16;

// series for P(a, x), valid (and fastest) for x < a + 1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// modified Lentz continued fraction for Q(a, x), valid for x >= a + 1
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - log_gamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

}  // namespace detail

double q(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q: argument must be finite");
  // erfc keeps full relative accuracy deep into the tail, which raw
  // quadrature of the density would not
  return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0);
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("q_inv: p must lie in (0, 1)");
  if (p == 0.5) return 0.0;

  // bracket, then bisection to a coarse interval, then guarded Newton
  double lo = -40.0, hi = 40.0;  // q(40) underflows, q(-40) = 1
  for (int i = 0; i < 24; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) > p)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  const double inv_sqrt_2pi = 0.3989422804014326779;
  for (int i = 0; i < 100; ++i) {
    const double fx = q(x) - p;
    if (std::fabs(fx) <= 1e-12 * p) break;
    if (fx > 0.0)
      lo = x;
    else
      hi = x;
    const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    double next = x + fx / pdf;  // dq/dx = -pdf
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return x;
}

double exp_integral(double order, double z) {
  if (!(z > 0.0)) throw std::domain_error("exp_integral: z must be positive");
  if (!std::isfinite(order)) throw std::domain_error("exp_integral: order must be finite");

  // E_nu(z) = z^{a-1} Gamma(a, z) with a = 1 - nu, usable while Gamma(a)
  // stays representable
  const double a = 1.0 - order;
  if (a > 0.0 && a < 170.0) {
    const double upper = detail::gamma_q(a, z) * std::tgamma(a);
    return std::pow(z, -a) * upper;
  }

  // fallback: adaptive quadrature of the defining integral
  auto integrand = [order, z](double t) { return std::exp(-z * t - order * std::log(t)); };
  auto res = quad::integrate_to_infinity(integrand, 1.0, 1e-300, 1e-13, 6000);
  if (!res.converged)
    throw numerical_error("exp_integral: quadrature did not converge", res.value,
                          res.error_bound);
  return res.value;
}

}  // namespace fbnet::specfun
