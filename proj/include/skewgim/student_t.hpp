#pragma once

namespace skewgim {

// Standardized Student-t (zero mode, unit inverse precision) with nu > 0
// degrees of freedom. Density
//   f_t(z|nu) = G(0.5(nu+1)) / (G(0.5 nu) sqrt(pi nu)) [1 + z^2/nu]^{-(nu+1)/2}
// Its variance is nu/(nu-2) for nu > 2; it is not rescaled to unit variance.

// ln of the nu-dependent normalizing constant of f_t.
double t_log_norm_const(double nu);

double t_log_pdf(double z, double nu);
double t_pdf(double z, double nu);

// F_t(z); computed from the regularized incomplete beta function.
double t_cdf(double z, double nu);

// ln F_t(z) and ln(1 - F_t(z)); stay accurate arbitrarily deep in the tails.
double t_log_cdf(double z, double nu);
double t_log_sf(double z, double nu);

// F_t^{-1}(u) for u in (0,1); |F(F^{-1}(u)) - u| <= 1e-12 away from the
// extreme tails, with a power-law asymptotic branch beyond them.
double t_quantile(double u, double nu);

// Quantile of the upper tail given ln(tau), tau = 1 - u; valid for any
// representable ln(tau), including values far below ln(DBL_MIN).
double t_quantile_upper_tail(double log_tau, double nu);

// F_t^{-1} given u together with precomputed ln(u) and ln(1-u); routes to the
// asymptotic branches when u is too close to 0 or 1 for double resolution.
double t_quantile_ext(double u, double log_u, double log_1mu, double nu);

}  // namespace skewgim
