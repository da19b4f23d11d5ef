#pragma once

#include <functional>

namespace skewgim {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (G7,K15) on a finite interval. Panels are
// bisected worst-error-first until the summed error estimate meets
// max(abs_tol, rel_tol*|value|) or the panel budget is exhausted.
QuadResult gk15_adaptive(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol = 0.0,
                         int max_panels = 4000);

// Integral over (0,1) with endpoint-singularity handling: the interval is
// mapped through the double-exponential substitution
//   u(t) = 1/2 (1 + tanh((pi/2) sinh t)),  t in [-5, 5],
// and the transformed integrand is fed to the adaptive rule above. The
// integrand receives (u, ln u, ln(1-u)); the log arguments remain exact far
// beyond the resolution of u itself, so weights like u^{a-1}(1-u)^{b-1}
// can be evaluated stably at the ends.
QuadResult integrate_unit_interval(
    const std::function<double(double, double, double)>& f, double abs_tol,
    double rel_tol = 0.0, int max_panels = 4000);

// Integral over the whole real line through the rational map
// z = t / (1 - t^2), t in (-1,1).
QuadResult integrate_real_line(const std::function<double(double)>& f,
                               double abs_tol, double rel_tol = 0.0,
                               int max_panels = 4000);

}  // namespace skewgim
