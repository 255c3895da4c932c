#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fbnet/fbl.hpp"
#include "fbnet/mcsim.hpp"
#include "fbnet/rng.hpp"

using namespace fbnet;

namespace {

NetworkParams paper_params(double lambda = 1e-5) {
  return {.density = lambda, .link_distance = 5.0, .path_loss_exponent = 4.0, .inv_power = 0.0};
}

MonteCarloConfig config_of(std::int64_t n, std::uint64_t seed) {
  MonteCarloConfig mc;
  mc.num_realizations = n;
  mc.seed = seed;
  return mc;
}

}  // namespace

TEST_CASE("no interferers, noise only: SIR is exponential") {
  NetworkParams p = paper_params(0.0);
  p.inv_power = 0.01;
  const double scale = p.inv_power * std::pow(p.link_distance, 4.0);  // rate of the exponential
  const auto batch = sample_sir(p, config_of(20000, 3), 1);

  double sum = 0.0;
  for (double s : batch.samples) {
    CHECK(s >= 0.0);
    sum += s;
  }
  const double mean = sum / static_cast<double>(batch.samples.size());
  CHECK(std::fabs(mean - 1.0 / scale) <
        5.0 / scale / std::sqrt(static_cast<double>(batch.samples.size())));
  // the analytic cdf covers this regime, so the KS statistic applies directly
  CHECK(ks_distance(batch, p) < 0.02);
}

TEST_CASE("no interferers, no noise: infinity sentinel and zero error") {
  const NetworkParams p = paper_params(0.0);
  const auto batch = sample_sir(p, config_of(100, 1), 1);
  for (double s : batch.samples) CHECK(std::isinf(s));
  const auto est = empirical_error(batch, {500, 1.0}, DispersionModel::iid_gaussian_codebook);
  CHECK(est.mean == 0.0);
  CHECK(est.standard_error == 0.0);
}

TEST_CASE("empirical cdf matches the analytic cdf at the reference setup") {
  const NetworkParams p = paper_params();
  const auto batch = sample_sir(p, config_of(100000, 42), 0);
  CHECK(empirical_cdf(batch, 0.0) == 0.0);
  CHECK(empirical_cdf(batch, 1e12) == 1.0);
  CHECK(std::fabs(empirical_cdf(batch, 1.0) - sir_cdf(1.0, p)) < 0.01);
  CHECK(ks_distance(batch, p) <= 0.01);
}

TEST_CASE("empirical error brackets the integral at the reference setup") {
  const NetworkParams p = paper_params();
  const auto batch = sample_sir(p, config_of(100000, 7), 0);
  for (double rate : {0.5, 1.0, 2.0}) {
    const CodingParams c{500, rate};
    const auto est = empirical_error(batch, c, DispersionModel::iid_gaussian_codebook);
    const double eps = error_probability_integral(p, c, DispersionModel::iid_gaussian_codebook);
    CHECK(est.standard_error > 0.0);
    CHECK(std::fabs(est.mean - eps) <= 3.0 * est.standard_error);
  }
}

TEST_CASE("sampling is a pure function of params and config") {
  const NetworkParams p = paper_params();
  const auto cfg = config_of(5000, 123);
  const auto one = sample_sir(p, cfg, 1);
  const auto many = sample_sir(p, cfg, 4);
  CHECK(one.samples == many.samples);  // bit-identical across worker counts
  const auto rerun = sample_sir(p, cfg, 3);
  CHECK(one.samples == rerun.samples);
  const auto other = sample_sir(p, config_of(5000, 124), 1);
  CHECK(one.samples != other.samples);
  CHECK(one.params_echo == p);
  CHECK(one.seed_echo == 123);
}

TEST_CASE("chunking partition is part of the contract") {
  const NetworkParams p = paper_params();
  auto a = config_of(1000, 5);
  a.chunk_size = 100;
  auto b = config_of(1000, 5);
  b.chunk_size = 250;
  // different substream layout, different (but equally valid) samples
  CHECK(sample_sir(p, a, 1).samples != sample_sir(p, b, 1).samples);
}

TEST_CASE("config validation refuses biased truncation") {
  NetworkParams p = paper_params(2e-5);
  p.path_loss_exponent = 3.0;  // slow decay, 2000 m disk leaks too much interference
  CHECK_THROWS_AS(sample_sir(p, config_of(10, 0), 1), std::domain_error);

  MonteCarloConfig small = config_of(10, 0);
  small.region_radius = 40.0;  // below 10x link distance
  CHECK_THROWS_AS(sample_sir(paper_params(), small, 1), std::domain_error);

  MonteCarloConfig zero = config_of(0, 0);
  CHECK_THROWS_AS(sample_sir(paper_params(), zero, 1), std::domain_error);
}

TEST_CASE("empirical estimators reject empty batches and check pairing") {
  SirBatch empty;
  empty.params_echo = paper_params();
  CHECK_THROWS_AS(empirical_error(empty, {500, 1.0}, DispersionModel::awgn), std::domain_error);
  CHECK_THROWS_AS(empirical_cdf(empty, 1.0), std::domain_error);
  CHECK_THROWS_AS(ks_distance(empty, paper_params()), std::domain_error);

  const auto batch = sample_sir(paper_params(), config_of(100, 1), 1);
  CHECK_THROWS_AS(ks_distance(batch, paper_params(2e-5)), std::invalid_argument);
}

TEST_CASE("constant batch gives one-half mean with zero spread") {
  SirBatch batch;
  batch.params_echo = paper_params();
  batch.samples.assign(50, std::exp2(1.0) - 1.0);  // snr exactly at the rate threshold
  const auto est = empirical_error(batch, {500, 1.0}, DispersionModel::iid_gaussian_codebook);
  CHECK(est.mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(est.standard_error == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("ks statistic sanity via inverse-transform sampling") {
  // draw directly from the analytic law: x = ((-ln(1-u))/kappa)^{beta/2};
  // the classical 1.36/sqrt(n) bound should hold for most seeds
  const NetworkParams p = paper_params();
  const double kappa = 3.141592653589793 * p.density * 25.0 * interference_constant(4.0);
  const int n = 10000;
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Philox4x64 rng(seed, 999);
    SirBatch batch;
    batch.params_echo = p;
    batch.samples.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double u = rng.next_double();
      batch.samples.push_back(std::pow(-std::log1p(-u) / kappa, 2.0));
    }
    if (ks_distance(batch, p) <= 1.36 / std::sqrt(static_cast<double>(n))) ++passes;
  }
  CHECK(passes >= 18);  // ~95% acceptance by construction
}

TEST_CASE("ks distance shrinks with sample size on matched seeds") {
  const NetworkParams p = paper_params();
  const double small = ks_distance(sample_sir(p, config_of(100, 11), 1), p);
  const double large = ks_distance(sample_sir(p, config_of(100000, 11), 0), p);
  CHECK(large < small);  // regression expectation, not a theorem
}

TEST_CASE("batch dump format round-trips") {
  NetworkParams p = paper_params(0.0);
  p.inv_power = 0.5;
  const auto batch = sample_sir(p, config_of(10, 77), 1);
  std::ostringstream out;
  write_batch(out, batch);

  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "# lambda=0 D=5 beta=4 inv_power=0.5 seed=77 n_samples=10");
  for (double expected : batch.samples) {
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(std::stod(line) == expected);  // full round-trip precision
  }
  std::string rest;
  CHECK_FALSE(std::getline(in, rest));
}
