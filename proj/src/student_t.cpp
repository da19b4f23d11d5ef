#include "skewgim/student_t.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skewgim/special.hpp"

namespace skewgim {

namespace {

void check_nu(double nu, const char* who) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument(std::string(who) +
                                ": degrees of freedom must be positive");
  }
}

// ln K(nu) with 1 - F(z) ~ K z^{-nu} as z -> +inf.
double log_tail_const(double nu) {
  return t_log_norm_const(nu) + 0.5 * (nu - 1.0) * std::log(nu);
}

}  // namespace

double t_log_norm_const(double nu) {
  return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
         0.5 * std::log(std::numbers::pi * nu);
}

double t_log_pdf(double z, double nu) {
  check_nu(nu, "t_log_pdf");
  return t_log_norm_const(nu) - 0.5 * (nu + 1.0) * std::log1p(z * z / nu);
}

double t_pdf(double z, double nu) { return std::exp(t_log_pdf(z, nu)); }

double t_cdf(double z, double nu) {
  check_nu(nu, "t_cdf");
  if (z == 0.0) return 0.5;
  const double z2 = z * z;
  if (z2 < nu) {
    // central form, accurate near the median
    const double x = z2 / (nu + z2);
    const double p = 0.5 * inc_beta_reg(x, 0.5, 0.5 * nu);
    return z > 0.0 ? 0.5 + p : 0.5 - p;
  }
  const double x = nu / (nu + z2);
  const double tail = 0.5 * inc_beta_reg(x, 0.5 * nu, 0.5);
  return z > 0.0 ? 1.0 - tail : tail;
}

double t_log_sf(double z, double nu) {
  check_nu(nu, "t_log_sf");
  if (z <= 0.0) {
    // survival >= 1/2 here; direct evaluation is fine
    return std::log1p(-t_cdf(z, nu));
  }
  const double z2 = z * z;
  if (z2 < nu) return std::log1p(-t_cdf(z, nu));
  const double x = nu / (nu + z2);
  return std::log(0.5) + log_inc_beta_reg(x, 0.5 * nu, 0.5);
}

double t_log_cdf(double z, double nu) { return t_log_sf(-z, nu); }

double t_quantile_upper_tail(double log_tau, double nu) {
  check_nu(nu, "t_quantile_upper_tail");
  if (!(log_tau < 0.0)) {
    throw std::invalid_argument("t_quantile_upper_tail: log_tau must be < 0");
  }
  // power-law start:  tau = K z^{-nu} (1 - c2/z^2 + ...),
  // c2 = nu^2 (nu+1) / (2 (nu+2)); only trustworthy once z^2 >> nu
  const double log_k = log_tail_const(nu);
  double log_z = (log_k - log_tau) / nu;
  const double c2 = nu * nu * (nu + 1.0) / (2.0 * (nu + 2.0));
  const double corr = c2 * std::exp(-2.0 * log_z);
  if (corr < 0.5) log_z += std::log1p(-corr) / nu;
  double z = std::exp(log_z);
  if (log_tau > -650.0) {
    // a Gaussian-regime guess may be better for large nu
    const double tau = std::exp(log_tau);
    if (tau > 1e-290) {
      const double x = -normal_quantile(tau);
      const double x3 = x * x * x;
      const double x5 = x3 * x * x;
      const double g = x + (x3 + x) / (4.0 * nu) +
                       (5.0 * x5 + 16.0 * x3 + 3.0 * x) / (96.0 * nu * nu);
      if (std::isfinite(g) && g > 0.0 && g < z) z = g;
    }
  }
  if (!(z > 0.0) || !std::isfinite(z)) z = std::sqrt(nu);

  // safeguarded Newton on g(z) = ln sf(z) - log_tau, valid in every regime
  double lo = 0.0;
  double hi = z;
  while (t_log_sf(hi, nu) > log_tau) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) return lo;
  }
  z = std::min(std::max(z, lo), hi);
  for (int it = 0; it < 100; ++it) {
    const double g = t_log_sf(z, nu) - log_tau;
    if (std::fabs(g) < 1e-12) return z;
    if (g > 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    // g'(z) = -f(z)/sf(z)
    const double log_deriv = t_log_pdf(z, nu) - t_log_sf(z, nu);
    double znew = z + g * std::exp(-log_deriv);
    if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
    if (znew == z) return z;
    z = znew;
  }
  return z;
}

namespace {

// Safeguarded Newton on F(z) - u for u in [0.5, 1); the root is >= 0 and the
// exact derivative f makes convergence quadratic once close.
double quantile_newton(double u, double nu) {
  // initial guess: normal quantile plus Hill's t correction
  const double x = normal_quantile(u);
  const double x3 = x * x * x;
  const double x5 = x3 * x * x;
  double g = x + (x3 + x) / (4.0 * nu) +
             (5.0 * x5 + 16.0 * x3 + 3.0 * x) / (96.0 * nu * nu);
  if (!std::isfinite(g) || g < 0.0) g = 0.0;

  double lo = 0.0;
  double hi = std::max(1.0, 2.0 * g);
  while (t_cdf(hi, nu) < u) {
    lo = hi;
    hi *= 4.0;
  }
  double z = std::min(std::max(g, lo), hi);
  for (int it = 0; it < 100; ++it) {
    const double fz = t_cdf(z, nu) - u;
    if (std::fabs(fz) < 1e-14) return z;
    if (fz > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    double znew = z - fz / t_pdf(z, nu);
    if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
    if (znew == z) return z;
    z = znew;
  }
  return z;
}

}  // namespace

double t_quantile(double u, double nu) {
  check_nu(nu, "t_quantile");
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("t_quantile: u must lie in (0,1)");
  }
  if (u == 0.5) return 0.0;
  if (nu == 1.0) return std::tan(std::numbers::pi * (u - 0.5));
  if (nu == 2.0) return (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u));

  const double tail = u < 0.5 ? u : 1.0 - u;
  const double sign = u < 0.5 ? -1.0 : 1.0;
  if (tail < 0.05) {
    // solve on the log-survival scale: relative tail accuracy ~1e-12
    // uniformly, where Newton on F - u would lose all relative precision
    return sign * t_quantile_upper_tail(std::log(tail), nu);
  }
  return sign * quantile_newton(1.0 - tail, nu);
}

double t_quantile_ext(double u, double log_u, double log_1mu, double nu) {
  // u itself resolves its distance to the endpoints only down to ~1e-16
  // absolute; below 1e-8 the exact log arguments carry the information
  constexpr double log_switch = -18.0;
  if (log_1mu < log_switch) return t_quantile_upper_tail(log_1mu, nu);
  if (log_u < log_switch) return -t_quantile_upper_tail(log_u, nu);
  return t_quantile(u, nu);
}

}  // namespace skewgim
