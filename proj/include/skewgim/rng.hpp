#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace skewgim {

// Deterministic random source. All samplers are implemented here rather
// than through std::*_distribution, so that a given seed produces the same
// stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on the open interval (0,1)
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // standard normal (Box-Muller, one deviate per call)
  double normal();

  // Gamma(shape, 1), Marsaglia-Tsang; shape < 1 boosted via G(a+1) U^{1/a}
  double gamma(double shape);

  double beta(double a, double b);

  // chi-square with nu degrees of freedom
  double chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }

  std::array<double, 3> dirichlet3(const std::array<double, 3>& alpha);

  // index in [0,n) with probabilities proportional to weights[0..n)
  std::size_t categorical(const double* weights, std::size_t n);

  // Deterministic substream derivation (splitmix64 of seed ^ mixed stream id)
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 gen_;
};

}  // namespace skewgim
