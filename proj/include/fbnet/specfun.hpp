#pragma once

namespace fbnet::specfun {

// Standard normal tail probability Q(x) = P[N(0,1) > x].
double q(double x);

// Inverse of q on (0, 1). q(q_inv(p)) = p to ~1e-12 relative.
double q_inv(double p);

// Generalized exponential integral E_nu(z) = int_1^inf e^{-z t} t^{-nu} dt,
// z > 0, any real order nu (negative orders included).
double exp_integral(double order, double z);

namespace detail {
// ln Gamma(z) for z > 0 (Lanczos, g = 7); thread-safe unlike glibc lgamma.
double log_gamma(double z);
// Regularized incomplete gamma functions, a > 0, x >= 0.
double gamma_p(double a, double x);  // lower
double gamma_q(double a, double x);  // upper
}  // namespace detail

}  // namespace fbnet::specfun
