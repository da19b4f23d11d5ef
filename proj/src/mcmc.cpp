#include "skewgim/mcmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgim/rng.hpp"

namespace skewgim {

RwmChain rwm_chain(const LogKernel& log_kernel, std::vector<double> init,
                   const RwmConfig& config) {
  if (config.iterations <= config.burn_in) {
    throw std::invalid_argument("rwm_chain: iterations must exceed burn_in");
  }
  if (config.thin == 0) {
    throw std::invalid_argument("rwm_chain: thin must be >= 1");
  }
  const std::size_t dim = init.size();
  if (dim == 0) {
    throw std::invalid_argument("rwm_chain: empty initial point");
  }

  std::vector<double> x = std::move(init);
  double lk = log_kernel(x);
  if (!std::isfinite(lk)) {
    throw std::invalid_argument(
        "rwm_chain: non-finite kernel at the initial point");
  }

  Rng rng(config.seed);
  std::vector<double> sd(dim, config.initial_step);
  double log_step = 0.0;

  // Welford accumulators over burn-in states, used to learn a diagonal
  // proposal covariance at the midpoint of burn-in.
  std::vector<double> w_mean(dim, 0.0), w_m2(dim, 0.0);
  std::size_t w_count = 0;
  const std::size_t covariance_switch = config.burn_in / 2;

  RwmChain out;
  const std::size_t kept =
      (config.iterations - config.burn_in + config.thin - 1) / config.thin;
  out.draws.reserve(kept);
  out.log_kernel.reserve(kept);

  std::size_t window_accepts = 0;
  std::size_t window_index = 0;
  std::size_t post_accepts = 0;
  std::vector<double> proposal(dim);

  for (std::size_t it = 0; it < config.iterations; ++it) {
    const double step = std::exp(log_step);
    for (std::size_t i = 0; i < dim; ++i) {
      proposal[i] = x[i] + step * sd[i] * rng.normal();
    }
    const double lk_new = log_kernel(proposal);
    bool accept = false;
    if (lk_new > -std::numeric_limits<double>::infinity()) {
      const double log_ratio = lk_new - lk;
      accept = log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio;
    }
    if (accept) {
      x = proposal;
      lk = lk_new;
    }

    if (it < config.burn_in) {
      window_accepts += accept ? 1u : 0u;
      ++w_count;
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = x[i] - w_mean[i];
        w_mean[i] += d / static_cast<double>(w_count);
        w_m2[i] += d * (x[i] - w_mean[i]);
      }
      if ((it + 1) % config.adapt_window == 0) {
        ++window_index;
        const double rate = static_cast<double>(window_accepts) /
                            static_cast<double>(config.adapt_window);
        window_accepts = 0;
        const double target = 0.5 * (config.accept_low + config.accept_high);
        const double gain =
            std::min(0.5, 2.0 / std::sqrt(static_cast<double>(window_index)));
        log_step += gain * (rate - target);
      }
      if (it + 1 == covariance_switch && w_count > 20) {
        bool any = false;
        for (std::size_t i = 0; i < dim; ++i) {
          const double var = w_m2[i] / static_cast<double>(w_count - 1);
          if (var > 0.0) {
            sd[i] = std::sqrt(var);
            any = true;
          }
        }
        if (any) {
          log_step = std::log(2.38 / std::sqrt(static_cast<double>(dim)));
          window_index = 0;
        }
      }
    } else {
      post_accepts += accept ? 1u : 0u;
      const std::size_t k = it - config.burn_in;
      if (k % config.thin == 0) {
        out.draws.push_back(x);
        out.log_kernel.push_back(lk);
      }
    }
  }

  out.acceptance_rate =
      static_cast<double>(post_accepts) /
      static_cast<double>(config.iterations - config.burn_in);
  out.proposal_sd.resize(dim);
  const double step = std::exp(log_step);
  for (std::size_t i = 0; i < dim; ++i) out.proposal_sd[i] = step * sd[i];
  return out;
}

}  // namespace skewgim
