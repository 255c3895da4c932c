#include "fbnet/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fbnet/errors.hpp"
#include "fbnet/quadrature.hpp"
#include "fbnet/specfun.hpp"

namespace fbnet {

namespace {

constexpr double kLog2e = 1.4426950408889634;

double log2_1p(double x) { return std::log1p(x) * kLog2e; }

// 2^r - 1 without cancellation for small r
double exp2_m1(double r) { return std::expm1(r * std::numbers::ln2); }

// half-width of the linearization window, sqrt(pi (2^{2R} - 2^R) / n)
double window_half_width(const CodingParams& c) {
  const double theta = exp2_m1(c.rate);
  return std::sqrt(std::numbers::pi * (theta + 1.0) * theta /
                   static_cast<double>(c.blocklength));
}

}  // namespace

void validate(const CodingParams& coding) {
  if (coding.blocklength < 1)
    throw std::domain_error("CodingParams: blocklength must be at least 1");
  if (!(coding.rate >= 0.0) || !std::isfinite(coding.rate))
    throw std::domain_error("CodingParams: rate must be nonnegative");
}

double achievable_rate(double snr, std::int64_t blocklength, double epsilon,
                       DispersionModel model) {
  if (std::isnan(snr) || snr < 0.0)
    throw std::domain_error("achievable_rate: snr must be nonnegative");
  if (blocklength < 1) throw std::domain_error("achievable_rate: blocklength must be >= 1");
  const double penalty =
      std::sqrt(dispersion(snr, model) / static_cast<double>(blocklength)) *
      specfun::q_inv(epsilon);
  return std::max(0.0, log2_1p(snr) - penalty);
}

double conditional_error(double snr, const CodingParams& coding, DispersionModel model) {
  validate(coding);
  if (std::isnan(snr) || snr < 0.0)
    throw std::domain_error("conditional_error: snr must be nonnegative");
  if (std::isinf(snr)) return 0.0;
  if (snr == 0.0) return coding.rate > 0.0 ? 1.0 : 0.5;
  const double scale =
      std::sqrt(dispersion(snr, model) / static_cast<double>(coding.blocklength));
  return specfun::q((log2_1p(snr) - coding.rate) / scale);
}

double error_probability_integral(const NetworkParams& params, const CodingParams& coding,
                                  DispersionModel model, double quad_tol) {
  validate(params);
  validate(coding);
  if (!(quad_tol > 0.0)) throw std::domain_error("error_probability_integral: quad_tol <= 0");
  if (params.density == 0.0 && params.inv_power == 0.0) return 0.0;  // SIR infinite a.s.

  const double beta = params.path_loss_exponent;
  const double d2 = params.link_distance * params.link_distance;
  const double c_int = std::numbers::pi * params.density * d2 * interference_constant(beta);
  const double c_noise = params.inv_power * std::pow(params.link_distance, beta);
  const double n = static_cast<double>(coding.blocklength);

  // beyond x_hi the conditional error is below Q(40) ~ 1e-350
  const double x_hi = exp2_m1(coding.rate + 40.0 * kLog2e * std::sqrt(2.0 / n));

  // u = x^{2/beta}:  f(x) dx = exp(-c_int u - c_noise x) (c_int + c_noise (beta/2) u^{beta/2-1}) du
  auto integrand_u = [&](double u) {
    const double x = std::pow(u, beta / 2.0);
    const double slope =
        c_int + (u > 0.0 ? c_noise * (beta / 2.0) * std::pow(u, beta / 2.0 - 1.0) : 0.0);
    return conditional_error(x, coding, model) * std::exp(-c_int * u - c_noise * x) * slope;
  };

  const double u_hi = std::pow(x_hi, 2.0 / beta);
  std::vector<double> nodes{0.0};
  if (coding.rate > 0.0) {
    // seed splits at the linearization window so the sharp transition is
    // always resolved, even at very large blocklengths
    const QBreakpoints bp = q_breakpoints(coding);
    const double theta = exp2_m1(coding.rate);
    for (double x : {bp.lower, theta, bp.upper})
      if (x > 0.0 && x < x_hi) nodes.push_back(std::pow(x, 2.0 / beta));
  }
  nodes.push_back(u_hi);
  std::sort(nodes.begin(), nodes.end());

  auto head = quad::integrate_segments(integrand_u, nodes, 0.5 * quad_tol);

  // tail [x_hi, inf): no singularity left, rationally mapped
  auto integrand_x = [&](double x) {
    return conditional_error(x, coding, model) * sir_pdf(x, params);
  };
  auto tail = quad::integrate_to_infinity(integrand_x, x_hi, 0.5 * quad_tol);

  const double value = head.value + tail.value;
  const double bound = head.error_bound + tail.error_bound;
  if (!head.converged || !tail.converged)
    throw numerical_error("error_probability_integral: quadrature budget exhausted",
                          std::clamp(value, 0.0, 1.0), bound);
  return std::clamp(value, 0.0, 1.0);
}

QBreakpoints q_breakpoints(const CodingParams& coding) {
  validate(coding);
  if (coding.rate <= 0.0)
    throw std::domain_error("q_breakpoints: linearization degenerates at rate 0");
  const double theta = exp2_m1(coding.rate);
  const double w = window_half_width(coding);
  QBreakpoints bp;
  bp.lower_clamped = theta - w < 0.0;
  bp.lower = std::max(theta - w, 0.0);
  bp.upper = theta + w;
  bp.slope = -0.5 / w;
  return bp;
}

double q_piecewise(double x, const QBreakpoints& bp, const CodingParams& coding) {
  if (x <= bp.lower) return 1.0;
  if (x >= bp.upper) return 0.0;
  const double theta = exp2_m1(coding.rate);
  return std::clamp(0.5 + bp.slope * (x - theta), 0.0, 1.0);
}

double error_probability_closed_form(const NetworkParams& params, const CodingParams& coding) {
  validate(params);
  validate(coding);
  if (params.inv_power != 0.0)
    throw std::domain_error(
        "error_probability_closed_form: only the interference-limited regime "
        "(inv_power = 0) is supported");
  if (coding.rate <= 0.0)
    throw std::domain_error("error_probability_closed_form: rate must be positive");
  if (params.density == 0.0) return 0.0;

  const double beta = params.path_loss_exponent;
  const double d2 = params.link_distance * params.link_distance;
  const double kappa = std::numbers::pi * params.density * d2 * interference_constant(beta);

  const QBreakpoints bp = q_breakpoints(coding);
  const double theta = exp2_m1(coding.rate);
  const double w = window_half_width(coding);
  const double half_plus_c = 0.5 + theta / (2.0 * w);

  // with u = x^{2/beta}: int_X^inf x f(x) dx = kappa u_X^{1+beta/2} E_{-beta/2}(kappa u_X)
  const double order = -beta / 2.0;
  const double expo = 1.0 + beta / 2.0;
  const double ua = std::pow(bp.lower, 2.0 / beta);
  const double ub = std::pow(bp.upper, 2.0 / beta);
  const double surv_a = std::exp(-kappa * ua);
  const double surv_b = std::exp(-kappa * ub);

  const double term_b = std::pow(ub, expo) * specfun::exp_integral(order, kappa * ub);
  // the lower term degenerates to Gamma(1+beta/2)/kappa^{1+beta/2} when the
  // window is truncated at the SIR support edge
  const double term_a = bp.lower > 0.0
                            ? std::pow(ua, expo) * specfun::exp_integral(order, kappa * ua)
                            : std::tgamma(expo) / std::pow(kappa, expo);

  const double eps = (1.0 - surv_a) + half_plus_c * (surv_a - surv_b) -
                     kappa / (2.0 * w) * (term_a - term_b);
  return std::clamp(eps, 0.0, 1.0);
}

}  // namespace fbnet
