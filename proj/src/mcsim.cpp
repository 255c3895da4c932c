#include "fbnet/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "fbnet/rng.hpp"

namespace fbnet {

void validate(const NetworkParams& params, const MonteCarloConfig& config) {
  validate(params);
  if (config.num_realizations < 1)
    throw std::domain_error("MonteCarloConfig: num_realizations must be at least 1");
  if (config.chunk_size < 1)
    throw std::domain_error("MonteCarloConfig: chunk_size must be at least 1");
  if (!(config.region_radius > 0.0) || !std::isfinite(config.region_radius))
    throw std::domain_error("MonteCarloConfig: region_radius must be positive");
  if (config.region_radius < 10.0 * params.link_distance)
    throw std::domain_error("MonteCarloConfig: region_radius must be at least 10x the link distance");

  // mean interference arriving from outside the sampling disk,
  // 2 pi lambda R^{2-beta} / (beta - 2), must be negligible against D^-beta
  const double beta = params.path_loss_exponent;
  const double leaked = 2.0 * std::numbers::pi * params.density *
                        std::pow(config.region_radius, 2.0 - beta) / (beta - 2.0);
  const double signal_gain = std::pow(params.link_distance, -beta);
  if (leaked > 1e-6 * signal_gain)
    throw std::domain_error(
        "MonteCarloConfig: region_radius too small, truncated interference would bias the batch");
}

namespace {

double draw_sir(Philox4x64& rng, const NetworkParams& p, double region_radius) {
  const double beta = p.path_loss_exponent;
  const double signal =
      std::pow(p.link_distance, -beta) * rng.next_exponential();  // Rayleigh power fading
  const double mean_count =
      p.density * std::numbers::pi * region_radius * region_radius;
  const std::int64_t count = rng.next_poisson(mean_count);
  double interference = 0.0;
  for (std::int64_t i = 0; i < count; ++i) {
    // uniform position in the disk: only the distance matters
    const double r = region_radius * std::sqrt(rng.next_double());
    interference += std::pow(r, -beta) * rng.next_exponential();
  }
  const double denom = interference + p.inv_power;
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return signal / denom;
}

}  // namespace

SirBatch sample_sir(const NetworkParams& params, const MonteCarloConfig& config,
                    unsigned workers) {
  validate(params, config);

  SirBatch batch;
  batch.samples.resize(static_cast<std::size_t>(config.num_realizations));
  batch.params_echo = params;
  batch.seed_echo = config.seed;

  const std::int64_t n_chunks =
      (config.num_realizations + config.chunk_size - 1) / config.chunk_size;

  auto run_chunk = [&](std::int64_t chunk) {
    Philox4x64 rng(config.seed, static_cast<std::uint64_t>(chunk));
    const std::int64_t begin = chunk * config.chunk_size;
    const std::int64_t end = std::min(begin + config.chunk_size, config.num_realizations);
    for (std::int64_t i = begin; i < end; ++i)
      batch.samples[static_cast<std::size_t>(i)] = draw_sir(rng, params, config.region_radius);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_chunks));

  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::int64_t c; (c = next.fetch_add(1)) < n_chunks;) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }
  return batch;
}

ErrorEstimate empirical_error(const SirBatch& batch, const CodingParams& coding,
                              DispersionModel model) {
  if (batch.samples.empty()) throw std::domain_error("empirical_error: empty batch");
  const std::size_t n = batch.samples.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = conditional_error(batch.samples[i], coding, model);

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  ErrorEstimate est;
  est.mean = mean;
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    est.standard_error = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return est;
}

double empirical_cdf(const SirBatch& batch, double x) {
  if (batch.samples.empty()) throw std::domain_error("empirical_cdf: empty batch");
  if (!(x >= 0.0)) throw std::domain_error("empirical_cdf: x must be nonnegative");
  const auto below = std::count_if(batch.samples.begin(), batch.samples.end(),
                                   [x](double s) { return s <= x; });
  return static_cast<double>(below) / static_cast<double>(batch.samples.size());
}

double ks_distance(const SirBatch& batch, const NetworkParams& params) {
  if (batch.samples.empty()) throw std::domain_error("ks_distance: empty batch");
  if (!(params == batch.params_echo))
    throw std::invalid_argument("ks_distance: params do not match the batch's params_echo");

  std::vector<double> sorted = batch.samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = std::isinf(sorted[i]) ? 1.0 : sir_cdf(sorted[i], params);
    sup = std::max(sup, std::fabs(static_cast<double>(i) / n - cdf));
    sup = std::max(sup, std::fabs(static_cast<double>(i + 1) / n - cdf));
  }
  return sup;
}

namespace {

void append_double(std::string& s, double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, ptr);
}

}  // namespace

void write_batch(std::ostream& out, const SirBatch& batch) {
  std::string line = "# lambda=";
  append_double(line, batch.params_echo.density);
  line += " D=";
  append_double(line, batch.params_echo.link_distance);
  line += " beta=";
  append_double(line, batch.params_echo.path_loss_exponent);
  line += " inv_power=";
  append_double(line, batch.params_echo.inv_power);
  line += " seed=" + std::to_string(batch.seed_echo);
  line += " n_samples=" + std::to_string(batch.samples.size());
  line += '\n';
  out << line;
  for (double s : batch.samples) {
    std::string row;
    append_double(row, s);
    row += '\n';
    out << row;
  }
}

}  // namespace fbnet
