#pragma once

// Deterministic random variate generation. The engine is std::mt19937_64
// (bit-exact across platforms by specification); the uniform, normal, and
// gamma transforms are implemented here rather than through <random>
// distributions, whose output is implementation-defined.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace gwl {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Counter-style seed derivation: any (master, a, b) triple maps to a
// well-mixed stream seed, so replicate (n=a, j=b) is recomputable in
// isolation without touching any other stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = detail::splitmix64(master ^ 0xA5A5A5A55A5A5A5Aull);
  s = detail::splitmix64(s ^ detail::splitmix64(a + 0x0123456789ABCDEFull));
  s = detail::splitmix64(s ^ detail::splitmix64(b + 0xFEDCBA9876543210ull));
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform on the open interval (0,1)
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // standard normal via the Marsaglia polar method (pairs cached)
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

  // log of a unit-scale gamma(shape) variate. Returning the logarithm keeps
  // shape < 1 draws exact even when the variate itself would underflow:
  // G = G' * U^(1/shape) with G' ~ gamma(shape+1) becomes an addition here.
  double log_gamma_variate(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("log_gamma_variate: shape must be positive");
    if (shape < 1.0) {
      const double u = uniform();
      return log_gamma_variate(shape + 1.0) + std::log(u) / shape;
    }
    return std::log(gamma_mt(shape));
  }

  double gamma_variate(double shape) { return std::exp(log_gamma_variate(shape)); }

 private:
  // Marsaglia-Tsang squeeze method, shape >= 1
  double gamma_mt(double shape) {
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
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gwl
