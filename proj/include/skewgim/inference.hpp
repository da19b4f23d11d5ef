#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skewgim/garch.hpp"
#include "skewgim/mcmc.hpp"
#include "skewgim/prior.hpp"
#include "skewgim/series.hpp"
#include "skewgim/transform.hpp"

namespace skewgim {

// ln prior + ln likelihood on the natural scale; -inf off-support.
double log_posterior_kernel(std::span<const double> y,
                            const GarchParams& params,
                            const SkewMechanism& mech, const PriorSpec& prior,
                            const InitPolicy& init = {});

// The posterior of one model on the unconstrained sampling scale:
// kernel(t) = ln lik + ln prior + ln |Jacobian|.
class GarchPosterior {
 public:
  GarchPosterior(std::vector<double> y, MechKind kind, PriorSpec prior,
                 InitPolicy init = {});

  const ParamTransform& transform() const { return tf_; }
  MechKind kind() const { return kind_; }
  std::span<const double> data() const { return y_; }

  double log_kernel_t(std::span<const double> t) const;
  LogKernel as_log_kernel() const;

  // initialization at the (support-nudged) prior means, transformed
  std::vector<double> default_init_t() const;

 private:
  std::vector<double> y_;
  MechKind kind_;
  PriorSpec prior_;
  InitPolicy init_;
  ParamTransform tf_;
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t iterations = 12000;
  std::size_t burn_in = 4000;
  std::size_t thin = 1;
  std::size_t adapt_window = 50;
  InitPolicy init_policy{};  // h_1 policy for the likelihood
  std::optional<std::vector<double>> init_natural;  // layout per names()
};

struct PosteriorChain {
  MechKind kind = MechKind::Symmetric;
  std::vector<std::string> names;  // natural-scale parameter names
  std::vector<std::vector<double>> natural;
  std::vector<std::vector<double>> unconstrained;
  std::vector<double> log_kernel;  // kernel on the unconstrained scale
  std::vector<double> mean_z;      // E(z) per kept draw
  double acceptance_rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0, burn_in = 0, thin = 1;
};

PosteriorChain rwm_sample(std::span<const double> y, const SkewMechanism& mech,
                          const PriorSpec& prior, const SamplerConfig& config);
PosteriorChain rwm_sample(const ExcessReturnSeries& y,
                          const SkewMechanism& mech, const PriorSpec& prior,
                          const SamplerConfig& config);

// Posterior summary of the relative risk aversion coefficient alpha + E(z).
struct RiskPremiumSummary {
  double prob_positive = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

RiskPremiumSummary risk_premium_summary(const PosteriorChain& chain);

// per-draw alpha + E(z) values (basis of the summary above)
std::vector<double> risk_premium_draws(const PosteriorChain& chain);

}  // namespace skewgim
