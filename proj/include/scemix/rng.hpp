#pragma once

#include <cmath>
#include <cstdint>

namespace scemix {

// Counter-based stream splitting: every consumer of randomness owns an
// RngStream derived from (master seed, purpose tag, index...). Streams
// derived with distinct tags/indices are independent for Monte Carlo
// purposes, and the whole tree is reproducible from the master seed alone.
//
// The generator is SplitMix64 over a Weyl sequence; state advances by a
// fixed odd increment, and child streams re-key via the same mixer.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(mix(seed ^ kDomain)) {}

  // Derive an independent child stream, e.g. one per replicate or thread.
  RngStream child(std::uint64_t index) const {
    RngStream r(0);
    r.state_ = mix(state_ ^ mix(index + kChildSalt));
    return r;
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on (0,1); never returns 0 or 1 so F^{-1} transforms stay finite.
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // 53 bits
    double u = (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Multiply-shift rejection-free bound; bias is < 2^-64 * n, negligible
    // for the index ranges used here.
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  double exponential() { return -std::log(uniform()); }

  // Polar Box-Muller with a one-value cache.
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
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Geometric on {1,2,...} with success probability p (mean 1/p).
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 1;
    const double u = uniform();
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  static constexpr std::uint64_t kDomain = 0x5CE317A9D2B4F6E1ULL;
  static constexpr std::uint64_t kChildSalt = 0xA02BDBF7BB3C0A7ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace scemix
