#pragma once

#include <array>
#include <variant>
#include <vector>

#include "skewgim/garch.hpp"
#include "skewgim/skew.hpp"

namespace skewgim {

struct NormalPrior {
  double mean = 0.0, sd = 1.0;
};
struct LogNormalPrior {
  double mu = 0.0, sigma = 1.0;  // normal prior on ln x
};
struct ExponentialPrior {
  double mean = 1.0;
};
struct UniformPrior {
  double lo = 0.0, hi = 1.0;
};

using ScalarPrior =
    std::variant<NormalPrior, LogNormalPrior, ExponentialPrior, UniformPrior>;

double prior_log_pdf(const ScalarPrior& prior, double x);
double prior_mean(const ScalarPrior& prior);

// Proper, weakly informative defaults, symmetric across mechanisms so that
// model comparison is not tilted by prior choice. All configurable.
struct PriorSpec {
  ScalarPrior alpha = NormalPrior{0.0, 1.0};
  ScalarPrior alpha0 = ExponentialPrior{1.0};
  ScalarPrior alpha1 = UniformPrior{0.0, 1.0};
  ScalarPrior beta1 = UniformPrior{0.0, 1.0};
  ScalarPrior nu_minus_1 = ExponentialPrior{9.0};

  ScalarPrior inverse_scale_gamma = LogNormalPrior{0.0, 1.0};
  ScalarPrior hidden_truncation_shape = NormalPrior{0.0, 1.0};
  ScalarPrior beta_one_gamma = LogNormalPrior{0.0, 1.0};
  ScalarPrior beta_two_a = ExponentialPrior{1.0};
  ScalarPrior beta_two_b = ExponentialPrior{1.0};
  ScalarPrior ferreira_steel_gamma = NormalPrior{0.0, 1.0};
  std::array<double, 3> bernstein_alpha{1.0, 1.0, 1.0};  // Dirichlet

  bool require_stationarity = false;

  // ln p(theta, eta); -inf outside the joint support. The support includes
  // the tail-existence margin of E(z) for the Beta-type mechanisms (the
  // model needs a finite mean correction).
  double log_pdf(const GarchParams& params, const SkewMechanism& mech) const;

  // Prior means on the natural scale (used for initialization). The
  // Bernstein weights return the Dirichlet mean of (w1, w2).
  GarchParams mean_garch() const;
  std::vector<double> mean_eta(MechKind kind) const;
};

}  // namespace skewgim
