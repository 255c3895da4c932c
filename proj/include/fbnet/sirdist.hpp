#pragma once

namespace fbnet {

// Network geometry and power parameters of the typical link. Interferers
// form a homogeneous Poisson point process of the given density; inv_power
// is the reciprocal transmit power 1/P (0 selects the interference-limited
// regime where noise is negligible).
struct NetworkParams {
  double density = 1e-5;          // transmitters per m^2
  double link_distance = 5.0;     // m, distance to the serving transmitter
  double path_loss_exponent = 4;  // must exceed 2
  double inv_power = 0.0;         // 1/P, >= 0

  bool operator==(const NetworkParams&) const = default;
};

// Throws std::domain_error on invalid values.
void validate(const NetworkParams& params);

// Channel dispersion law used in the finite-blocklength rate penalty.
enum class DispersionModel {
  iid_gaussian_codebook,  // iid Gaussian inputs, nearest-neighbor decoding
  awgn,                   // classical AWGN dispersion
};

// C(beta) = (2 pi / beta) / sin(2 pi / beta), the constant multiplying the
// interference term of the SIR distribution exponent. Finite only for
// path-loss exponents above 2.
double interference_constant(double beta);

// P[SIR <= x] under Rayleigh fading:
//   1 - exp(-pi * lambda * x^{2/beta} * D^2 * C(beta) - x * D^beta * inv_power)
double sir_cdf(double x, const NetworkParams& params);

// Density of the SIR, x > 0 (integrable singularity at 0 when inv_power = 0).
double sir_pdf(double x, const NetworkParams& params);

// Channel dispersion V(snr) in bits^2 per channel use.
double dispersion(double snr, DispersionModel model);

}  // namespace fbnet
