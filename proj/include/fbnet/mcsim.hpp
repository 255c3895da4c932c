#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fbnet/fbl.hpp"
#include "fbnet/sirdist.hpp"

namespace fbnet {

// Sampling plan for the Monte Carlo oracle. Interferers are drawn on a disk
// of region_radius around the typical receiver; realizations are split into
// chunks of chunk_size, each driven by its own RNG substream, so results do
// not depend on how many workers execute them.
struct MonteCarloConfig {
  std::int64_t num_realizations = 100000;
  double region_radius = 2000.0;  // m
  std::uint64_t seed = 0;
  std::int64_t chunk_size = 4096;
};

struct SirBatch {
  std::vector<double> samples;  // one SIR/SINR value per realization; may hold inf
  NetworkParams params_echo;
  std::uint64_t seed_echo = 0;
};

// Run-time pairing checks: basic ranges, region_radius >= 10 * link distance,
// and truncation adequacy (mean interference from beyond the disk must be
// <= 1e-6 of the desired signal's mean path gain D^-beta).
void validate(const NetworkParams& params, const MonteCarloConfig& config);

// Draw SIR realizations of the typical receiver. Deterministic function of
// (params, config); workers = 0 picks a thread count automatically.
SirBatch sample_sir(const NetworkParams& params, const MonteCarloConfig& config,
                    unsigned workers = 0);

struct ErrorEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Sample mean and standard error of conditional_error over the batch.
ErrorEstimate empirical_error(const SirBatch& batch, const CodingParams& coding,
                              DispersionModel model);

// Fraction of samples <= x.
double empirical_cdf(const SirBatch& batch, double x);

// Kolmogorov-Smirnov distance between the batch and the analytic SIR CDF.
// params must equal the batch's params_echo.
double ks_distance(const SirBatch& batch, const NetworkParams& params);

// Text dump: a `# lambda=... D=... beta=... inv_power=... seed=... n_samples=...`
// header line followed by one sample per line in round-trip decimal form.
void write_batch(std::ostream& out, const SirBatch& batch);

}  // namespace fbnet
