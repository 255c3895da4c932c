#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "fbnet/specfun.hpp"

namespace fbnet {

// Philox 4x64-10 counter-based generator. A (seed, stream) pair selects an
// independent substream; output is a pure function of (key, counter), so
// parallel consumers that claim disjoint streams reproduce bit-identical
// results regardless of scheduling.
class Philox4x64 {
 public:
  explicit Philox4x64(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{seed, stream}, counter_{0, 0, 0, 0} {
    refill();
  }

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      advance_counter();
      refill();
    }
    return block_[pos_++];
  }

  // uniform on [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // unit-mean exponential
  double next_exponential() { return -std::log1p(-next_double()); }

  // Poisson draw: CDF inversion below mean 30, Hormann PTRS rejection above.
  std::int64_t next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 30.0) return poisson_inversion(mean);
    return poisson_ptrs(mean);
  }

 private:
  static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
  }

  void refill() {
    std::array<std::uint64_t, 4> c = counter_;
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi0, lo0, hi1, lo1;
      mulhilo(kMult0, c[0], hi0, lo0);
      mulhilo(kMult1, c[2], hi1, lo1);
      c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    block_ = c;
    pos_ = 0;
  }

  void advance_counter() {
    if (++counter_[0] == 0)
      if (++counter_[1] == 0)
        if (++counter_[2] == 0) ++counter_[3];
  }

  std::int64_t poisson_inversion(double mean) {
    const double u = next_double();
    double p = std::exp(-mean);
    double cum = p;
    std::int64_t k = 0;
    const std::int64_t cap = static_cast<std::int64_t>(10.0 * mean) + 100;
    while (u > cum && k < cap) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
    }
    return k;
  }

  std::int64_t poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = next_double() - 0.5;
      const double v = next_double();
      const double us = 0.5 - std::fabs(u);
      const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
          kf * loglam - mean - specfun::detail::log_gamma(kf + 1.0))
        return static_cast<std::int64_t>(kf);
    }
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 4> block_{};
  int pos_ = 0;
};

}  // namespace fbnet
