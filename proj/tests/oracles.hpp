#pragma once

// Independent reference implementations used only by the tests. Boost.Math
// supplies the Student-t pdf/cdf/quantile at long double precision; the
// GARCH-M likelihood oracle below recomputes the recursion and every density
// factor from the published formulas, sharing nothing with the library path
// except E(z), which has its own Monte Carlo oracle.

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <span>
#include <vector>

#include "skewgim/garch.hpp"
#include "skewgim/skew.hpp"

namespace oracle {

using LD = long double;

inline LD t_pdf(LD z, LD nu) {
  return boost::math::pdf(boost::math::students_t_distribution<LD>(nu), z);
}
inline LD t_cdf(LD z, LD nu) {
  return boost::math::cdf(boost::math::students_t_distribution<LD>(nu), z);
}
inline LD t_quantile(LD u, LD nu) {
  return boost::math::quantile(boost::math::students_t_distribution<LD>(nu),
                               u);
}
// upper-tail quantile via the complement interface (no 1-tau cancellation)
inline LD t_quantile_upper(LD tau, LD nu) {
  return boost::math::quantile(boost::math::complement(
      boost::math::students_t_distribution<LD>(nu), tau));
}

inline LD beta_pdf(LD u, LD a, LD b) {
  const LD log_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::exp((a - 1.0L) * std::log(u) + (b - 1.0L) * std::log1p(-u) -
                   log_b);
}

// Table-style weight p(u|eta), literal composition (quantile of the cdf
// included where the formula says so).
inline LD weight(LD u, const skewgim::SkewMechanism& m, LD nu) {
  using K = skewgim::MechKind;
  switch (m.kind) {
    case K::Symmetric:
      return 1.0L;
    case K::InverseScale: {
      const LD g = m.eta[0];
      const LD c = 2.0L / (g + 1.0L / g);
      const LD q = t_quantile(u, nu);
      const LD s = u < 0.5L ? g : 1.0L / g;  // I2 takes u = 0.5
      return c * t_pdf(s * q, nu) / t_pdf(q, nu);
    }
    case K::HiddenTruncation:
      return 2.0L * t_cdf(static_cast<LD>(m.eta[0]) * t_quantile(u, nu), nu);
    case K::BetaOne:
      return beta_pdf(u, m.eta[0], 1.0L / static_cast<LD>(m.eta[0]));
    case K::BetaTwo:
      return beta_pdf(u, m.eta[0], m.eta[1]);
    case K::Bernstein2: {
      const LD w1 = m.eta[0], w2 = m.eta[1];
      const LD w3 = 1.0L - w1 - w2;
      return 3.0L * w1 * (1.0L - u) * (1.0L - u) +
             6.0L * w2 * u * (1.0L - u) + 3.0L * w3 * u * u;
    }
    case K::FerreiraSteel:
      return 1.0L + std::tanh(m.eta[0]) * (2.0L * u - 1.0L);
  }
  return 1.0L;
}

inline LD sample_variance(std::span<const double> y) {
  LD mean = 0.0L;
  for (double v : y) mean += v;
  mean /= static_cast<LD>(y.size());
  LD ss = 0.0L;
  for (double v : y) ss += (v - mean) * (v - mean);
  return ss / static_cast<LD>(y.size() - 1);
}

// Brute-force GARCH-M log likelihood: product of conditional densities
//   p(y_j|...) = h_j^{-1/2} f_t(z_j) p(F_t(z_j)|eta),  z_j = z*_j + E(z),
// recomputed in long double. mean_z is an input (it has its own oracle).
inline double log_likelihood(std::span<const double> y,
                             const skewgim::GarchParams& p,
                             const skewgim::SkewMechanism& m, LD h1,
                             double mean_z) {
  const LD nu = p.nu;
  const LD c = static_cast<LD>(p.alpha) + static_cast<LD>(mean_z);
  LD h = h1;
  LD prev_u = 0.0L;
  LD ll = 0.0L;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j > 0) {
      h = static_cast<LD>(p.alpha0) +
          static_cast<LD>(p.alpha1) * prev_u * prev_u +
          static_cast<LD>(p.beta1) * h;
    }
    const LD sqrt_h = std::sqrt(h);
    const LD u = static_cast<LD>(y[j]) - c * sqrt_h;
    const LD z = u / sqrt_h + static_cast<LD>(mean_z);
    const LD dens = t_pdf(z, nu) * weight(t_cdf(z, nu), m, nu) / sqrt_h;
    ll += std::log(dens);
    prev_u = u;
  }
  return static_cast<double>(ll);
}

// Closed-form conjugate toy: y_i ~ N(mu, 1), mu ~ N(0, 1); the marginal
// likelihood of y has a closed form.
inline double conjugate_log_marginal(std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  double sum = 0.0, ss = 0.0;
  for (double v : y) {
    sum += v;
    ss += v * v;
  }
  return -0.5 * n * std::log(2.0 * M_PI) - 0.5 * std::log(n + 1.0) -
         0.5 * (ss - sum * sum / (n + 1.0));
}

}  // namespace oracle
