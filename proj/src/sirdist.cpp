#include "fbnet/sirdist.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fbnet {

namespace {
// log2(e)^2, the unit conversion in both dispersion laws
constexpr double kLog2eSq = 2.0813689810056078;
}  // namespace

void validate(const NetworkParams& params) {
  if (!(params.density >= 0.0) || !std::isfinite(params.density))
    throw std::domain_error("NetworkParams: density must be nonnegative");
  if (!(params.link_distance > 0.0) || !std::isfinite(params.link_distance))
    throw std::domain_error("NetworkParams: link distance must be positive");
  if (!(params.path_loss_exponent > 2.0) || !std::isfinite(params.path_loss_exponent))
    throw std::domain_error("NetworkParams: path-loss exponent must exceed 2");
  if (!(params.inv_power >= 0.0) || !std::isfinite(params.inv_power))
    throw std::domain_error("NetworkParams: inv_power must be nonnegative");
}

double interference_constant(double beta) {
  if (!(beta > 2.0))
    throw std::domain_error("interference_constant: interference moment diverges for beta <= 2");
  const double x = 2.0 * std::numbers::pi / beta;  // in (0, pi)
  return x / std::sin(x);
}

namespace {

// exponent s(x) of the survival function exp(-s(x))
double cdf_exponent(double x, const NetworkParams& p) {
  const double beta = p.path_loss_exponent;
  const double d2 = p.link_distance * p.link_distance;
  const double interference =
      std::numbers::pi * p.density * d2 * interference_constant(beta) * std::pow(x, 2.0 / beta);
  const double noise = p.inv_power * std::pow(p.link_distance, beta) * x;
  return interference + noise;
}

}  // namespace

double sir_cdf(double x, const NetworkParams& params) {
  validate(params);
  if (!(x >= 0.0)) throw std::domain_error("sir_cdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  return -std::expm1(-cdf_exponent(x, params));
}

double sir_pdf(double x, const NetworkParams& params) {
  validate(params);
  if (!(x > 0.0)) throw std::domain_error("sir_pdf: x must be positive");
  const double beta = params.path_loss_exponent;
  const double d2 = params.link_distance * params.link_distance;
  const double c_int = std::numbers::pi * params.density * d2 * interference_constant(beta);
  const double c_noise = params.inv_power * std::pow(params.link_distance, beta);
  const double slope = c_noise + (2.0 / beta) * c_int * std::pow(x, 2.0 / beta - 1.0);
  return std::exp(-(c_int * std::pow(x, 2.0 / beta) + c_noise * x)) * slope;
}

double dispersion(double snr, DispersionModel model) {
  if (std::isnan(snr) || snr < 0.0)
    throw std::domain_error("dispersion: snr must be nonnegative");
  if (std::isinf(snr))
    return model == DispersionModel::iid_gaussian_codebook ? 2.0 * kLog2eSq : kLog2eSq;
  switch (model) {
    case DispersionModel::iid_gaussian_codebook:
      return 2.0 * snr / (1.0 + snr) * kLog2eSq;
    case DispersionModel::awgn: {
      const double g = 1.0 + snr;
      return (1.0 - 1.0 / (g * g)) * kLog2eSq;
    }
  }
  throw std::logic_error("dispersion: unknown model");
}

}  // namespace fbnet
