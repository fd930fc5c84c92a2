#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace condhaar {

//! Reproducible random stream, PCG64 (XSL-RR 128/64) with selectable streams.
//!
//! Two streams constructed with the same (seed, stream_index) replay the same
//! draw sequence bit for bit. Streams with distinct stream_index derived from
//! one seed use distinct LCG increments, which per the PCG family design
//! gives statistically independent sequences.
class RngStream {
 public:
  using u64 = std::uint64_t;
  using u128 = unsigned __int128;

  RngStream(u64 seed, u64 stream_index) : seed_(seed), stream_index_(stream_index) {
    const u128 initstate = (u128(splitmix(seed ^ 0x2545F4914F6CDD1DULL)) << 64) | splitmix(seed);
    const u128 initseq = (u128(splitmix(stream_index ^ 0x9E3779B97F4A7C15ULL)) << 64) | splitmix(stream_index);
    inc_ = (initseq << 1) | 1u;
    state_ = 0;
    step();
    state_ += initstate;
    step();
  }

  u64 seed() const { return seed_; }
  u64 stream_index() const { return stream_index_; }

  u64 next_u64() {
    const u128 old = state_;
    step();
    const u64 xored = static_cast<u64>(old >> 64) ^ static_cast<u64>(old);
    const unsigned rot = static_cast<unsigned>(old >> 122);
    return (xored >> rot) | (xored << ((64u - rot) & 63u));
  }

  //! Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    double x;
    do {
      x = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    } while (x == 0.0);
    return x;
  }

  //! Uniform on (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  //! Standard normal via the Marsaglia polar method (second draw cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  //! Gamma(shape, 1) via Marsaglia–Tsang; shape < 1 boosted through shape + 1.
  double gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  static u64 splitmix(u64 x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  void step() {
    // 128-bit MCG multiplier from the PCG reference implementation.
    const u128 mult = (u128(0x2360ED051FC65DA4ULL) << 64) | 0x4385DF649FCCF645ULL;
    state_ = state_ * mult + inc_;
  }

  u128 state_ = 0;
  u128 inc_ = 0;
  u64 seed_ = 0;
  u64 stream_index_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace condhaar
