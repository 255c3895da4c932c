#pragma once

#include <cstdint>

#include "fbnet/sirdist.hpp"

namespace fbnet {

struct CodingParams {
  std::int64_t blocklength = 500;  // channel uses, >= 1
  double rate = 1.0;               // bits per channel use, >= 0

  bool operator==(const CodingParams&) const = default;
};

void validate(const CodingParams& coding);

// Piecewise-linear surrogate of the conditional error curve: 1 below
// `lower`, 0 above `upper`, a line through (2^R - 1, 1/2) in between.
// `lower` is clamped to 0 when the raw breakpoint falls below the SIR
// support; `lower_clamped` records that.
struct QBreakpoints {
  double lower = 0.0;
  double upper = 0.0;
  double slope = 0.0;  // negative
  bool lower_clamped = false;
};

// Normal-approximation achievable rate at blocklength n and target error
// probability epsilon, floored at zero.
double achievable_rate(double snr, std::int64_t blocklength, double epsilon,
                       DispersionModel model);

// Error probability of a rate-R length-n code conditioned on the SIR value:
// Q((log2(1+snr) - R) / sqrt(V(snr)/n)). Continuous extension at snr = 0
// (1 for R > 0, 1/2 for R = 0) and at snr = inf (0).
double conditional_error(double snr, const CodingParams& coding, DispersionModel model);

// Expectation of conditional_error over the SIR distribution, by adaptive
// quadrature: substitution u = x^{2/beta} removes the density singularity
// near 0 and a rational map covers the tail. Absolute tolerance quad_tol.
// Throws numerical_error when the interval budget is exhausted.
double error_probability_integral(const NetworkParams& params, const CodingParams& coding,
                                  DispersionModel model, double quad_tol = 1e-9);

// Breakpoints of the piecewise-linear surrogate; requires rate > 0.
QBreakpoints q_breakpoints(const CodingParams& coding);

// Evaluate the surrogate at x >= 0, clamped to [0, 1].
double q_piecewise(double x, const QBreakpoints& bp, const CodingParams& coding);

// Closed form of the error probability in the interference-limited regime
// (inv_power = 0): the surrogate integrated exactly against the SIR density,
// expressed through exp_integral at order -beta/2. Result clamped to [0, 1].
double error_probability_closed_form(const NetworkParams& params, const CodingParams& coding);

}  // namespace fbnet
