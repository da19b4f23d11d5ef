#pragma once

namespace skewgim {

// log Beta function, ln B(a,b) = ln G(a) + ln G(b) - ln G(a+b)
double log_beta(double a, double b);

// Regularized incomplete beta function I_x(a,b), continued-fraction evaluation.
// Accurate to ~1e-15 relative over the full range; I_0 = 0, I_1 = 1.
double inc_beta_reg(double x, double a, double b);

// ln I_x(a,b), usable deep in the lower tail where I_x underflows.
double log_inc_beta_reg(double x, double a, double b);

// Inverse standard-normal cdf (Acklam's rational approximation, ~1e-9).
// Used only as a starting point for Newton refinement elsewhere.
double normal_quantile(double p);

}  // namespace skewgim
