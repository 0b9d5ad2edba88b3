#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace wtc {

// All randomness in the library goes through mt19937_64 plus an explicit
// Box-Muller transform. std::normal_distribution is implementation-defined,
// so seeded ensembles would not be portable across standard libraries;
// this path is bit-reproducible everywhere.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) from the top 53 bits of one engine draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard complex Gaussian CN(0, 1): real and imaginary parts are
  // independent N(0, 1/2), so E|z|^2 = 1. Consumes exactly two draws.
  std::complex<double> complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) / sqrt(2)
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

// Decorrelated child seed for trial/start #index under a base seed.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t index) {
  return base + 0x9E3779B97F4A7C15ULL * (index + 1);
}

}  // namespace wtc
