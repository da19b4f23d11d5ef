#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "skewgim/skew.hpp"

namespace skewgim {

// GARCH(1,1)-in-Mean observation model for excess returns y_j:
//   y_j  = [alpha + E(z)] sqrt(h_j) + u_j,   u_j = [z_j - E(z)] sqrt(h_j)
//   h_j  = alpha0 + alpha1 u_{j-1}^2 + beta1 h_{j-1}
// with z_j i.i.d. skewed Student-t.
struct GarchParams {
  double alpha = 0.0;   // risk-premium slope
  double alpha0 = 1.0;  // variance intercept, > 0
  double alpha1 = 0.0;  // ARCH coefficient, >= 0
  double beta1 = 0.0;   // GARCH coefficient, >= 0
  double nu = 10.0;     // degrees of freedom, > 1

  // Throws std::invalid_argument outside the parameter space; the
  // covariance-stationarity restriction alpha1 + beta1 < 1 is only applied
  // when requested.
  void validate(bool require_stationary = false) const;
  bool in_support(bool require_stationary = false) const noexcept;
};

// Policy for the unobserved h_1.
enum class InitKind {
  SampleVariance,  // h_1 = sample variance of y (default for fitting)
  Unconditional,   // h_1 = alpha0 / (1 - alpha1 - beta1); needs stationarity
  Fixed,           // h_1 = fixed_value
};

struct InitPolicy {
  InitKind kind = InitKind::SampleVariance;
  double fixed_value = 1.0;

  static InitPolicy sample_variance() { return {InitKind::SampleVariance, 1.0}; }
  static InitPolicy unconditional() { return {InitKind::Unconditional, 1.0}; }
  static InitPolicy fixed(double h1) { return {InitKind::Fixed, h1}; }
};

struct FilterState {
  std::vector<double> h;      // conditional inverse precisions, all > 0
  std::vector<double> u;      // mean-corrected innovations y_j - mu_j
  std::vector<double> mu;     // conditional means [alpha + E(z)] sqrt(h_j)
  std::vector<double> zstar;  // standardized residuals u_j / sqrt(h_j)
};

// Volatility recursion. The SkewedStudentT overloads reuse a distribution
// whose E(z) has already been computed; dist.nu() must equal params.nu.
FilterState garch_filter(std::span<const double> y, const GarchParams& params,
                         const SkewedStudentT& dist, const InitPolicy& init);
FilterState garch_filter(std::span<const double> y, const GarchParams& params,
                         const SkewMechanism& mech, const InitPolicy& init);

// sum_j [ -0.5 ln h_j + ln f_t(z_j|nu) + ln p(F_t(z_j)|eta) ] with
// z_j = z*_j + E(z) = y_j/sqrt(h_j) - alpha, the raw shock whose density is
// the skewed Student-t (the mean-corrected z*_j drives the recursion only).
// Returns -inf (never throws) when a density factor underflows to zero.
double log_likelihood(std::span<const double> y, const GarchParams& params,
                      const SkewedStudentT& dist, const InitPolicy& init);
double log_likelihood(std::span<const double> y, const GarchParams& params,
                      const SkewMechanism& mech, const InitPolicy& init);

// Forward simulation; deterministic given seed. SampleVariance has no
// meaning before data exist and is rejected.
std::vector<double> simulate(const GarchParams& params,
                             const SkewMechanism& mech, std::size_t n,
                             std::uint64_t seed, const InitPolicy& init);

}  // namespace skewgim
