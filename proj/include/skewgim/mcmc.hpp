#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace skewgim {

using LogKernel = std::function<double(std::span<const double>)>;

struct RwmConfig {
  std::uint64_t seed = 0;
  std::size_t iterations = 10000;  // total, burn-in included
  std::size_t burn_in = 2000;
  std::size_t thin = 1;
  std::size_t adapt_window = 50;
  double accept_low = 0.2;
  double accept_high = 0.4;  // adaptation steers toward the band midpoint
  double initial_step = 0.1;
};

struct RwmChain {
  std::vector<std::vector<double>> draws;  // kept post-burn-in states
  std::vector<double> log_kernel;          // kernel value per kept draw
  double acceptance_rate = 0.0;            // post burn-in
  std::vector<double> proposal_sd;         // frozen per-coordinate scales
};

// Full-vector Gaussian random-walk Metropolis on an unconstrained space.
// During burn-in the global step size is tuned toward acceptance in
// [0.2, 0.4] and a diagonal covariance is learned from the visited states;
// both are frozen at the end of burn-in so the kept chain is a valid
// Markov chain. Deterministic given the seed.
// Throws std::invalid_argument when the kernel is non-finite at `init`.
RwmChain rwm_chain(const LogKernel& log_kernel, std::vector<double> init,
                   const RwmConfig& config);

}  // namespace skewgim
