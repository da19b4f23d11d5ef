#include "skewgim/garch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgim/student_t.hpp"

namespace skewgim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double initial_h(std::span<const double> y, const GarchParams& p,
                 const InitPolicy& init, bool simulating) {
  switch (init.kind) {
    case InitKind::SampleVariance: {
      if (simulating) {
        throw std::invalid_argument(
            "simulate: sample-variance initialization needs observed data; "
            "use Unconditional or Fixed");
      }
      if (y.size() < 2) {
        throw std::invalid_argument(
            "garch: sample-variance initialization needs at least 2 "
            "observations");
      }
      double mean = 0.0;
      for (double v : y) mean += v;
      mean /= static_cast<double>(y.size());
      double ss = 0.0;
      for (double v : y) ss += (v - mean) * (v - mean);
      const double var = ss / static_cast<double>(y.size() - 1);
      if (!(var > 0.0)) {
        throw std::invalid_argument(
            "garch: sample variance of the data is zero");
      }
      return var;
    }
    case InitKind::Unconditional: {
      const double persist = p.alpha1 + p.beta1;
      if (!(persist < 1.0)) {
        throw std::invalid_argument(
            "garch: unconditional initialization requires alpha1 + beta1 < 1");
      }
      return p.alpha0 / (1.0 - persist);
    }
    case InitKind::Fixed:
      if (!(init.fixed_value > 0.0)) {
        throw std::invalid_argument("garch: fixed h1 must be positive");
      }
      return init.fixed_value;
  }
  return 1.0;
}

}  // namespace

void GarchParams::validate(bool require_stationary) const {
  if (!in_support(require_stationary)) {
    throw std::invalid_argument("GarchParams: outside the parameter space");
  }
}

bool GarchParams::in_support(bool require_stationary) const noexcept {
  if (!std::isfinite(alpha) || !std::isfinite(alpha0) ||
      !std::isfinite(alpha1) || !std::isfinite(beta1) || !std::isfinite(nu)) {
    return false;
  }
  // nu > 1 (finite mean correction) is enforced wherever E(z) is needed;
  // the symmetric mechanism has E(z) = 0 identically and admits any nu > 0
  if (!(alpha0 > 0.0) || alpha1 < 0.0 || beta1 < 0.0 || !(nu > 0.0)) {
    return false;
  }
  if (require_stationary && !(alpha1 + beta1 < 1.0)) return false;
  return true;
}

namespace {

FilterState filter_core(std::span<const double> y, const GarchParams& params,
                        double mean_z, const InitPolicy& init) {
  params.validate();
  if (y.empty()) {
    throw std::invalid_argument("garch_filter: empty series");
  }
  const std::size_t n = y.size();
  const double c = params.alpha + mean_z;

  FilterState s;
  s.h.resize(n);
  s.u.resize(n);
  s.mu.resize(n);
  s.zstar.resize(n);

  double h = initial_h(y, params, init, /*simulating=*/false);
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      h = params.alpha0 + params.alpha1 * s.u[j - 1] * s.u[j - 1] +
          params.beta1 * h;
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::runtime_error("garch_filter: non-finite inverse precision");
    }
    const double sqrt_h = std::sqrt(h);
    s.h[j] = h;
    s.mu[j] = c * sqrt_h;
    s.u[j] = y[j] - s.mu[j];
    s.zstar[j] = s.u[j] / sqrt_h;
    if (!std::isfinite(s.u[j])) {
      throw std::runtime_error("garch_filter: non-finite innovation");
    }
  }
  return s;
}

double log_likelihood_core(std::span<const double> y,
                           const GarchParams& params,
                           const SkewMechanism& mech, double mean_z,
                           const InitPolicy& init) {
  params.validate();
  if (y.empty()) {
    throw std::invalid_argument("log_likelihood: empty series");
  }
  const double c = params.alpha + mean_z;
  const double nu = params.nu;
  const double log_norm = t_log_norm_const(nu);
  const bool symmetric = mech.kind == MechKind::Symmetric;

  double h = initial_h(y, params, init, /*simulating=*/false);
  double prev_u = 0.0;
  double ll = 0.0;
  const std::size_t n = y.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      h = params.alpha0 + params.alpha1 * prev_u * prev_u + params.beta1 * h;
    }
    if (!(h > 0.0) || !std::isfinite(h)) return -kInf;
    const double sqrt_h = std::sqrt(h);
    const double u = y[j] - c * sqrt_h;
    // the skewed density applies to the raw shock z_j = z*_j + E(z)
    // (= y_j/sqrt(h_j) - alpha); the recursion keeps the mean-corrected u_j
    const double z = u / sqrt_h + mean_z;
    ll += -0.5 * std::log(h) + log_norm -
          0.5 * (nu + 1.0) * std::log1p(z * z / nu);
    if (!symmetric) {
      ll += skew_log_weight_at_z(z, mech, nu);
    }
    if (ll == -kInf) return -kInf;
    prev_u = u;
  }
  return std::isfinite(ll) ? ll : -kInf;
}

}  // namespace

FilterState garch_filter(std::span<const double> y, const GarchParams& params,
                         const SkewedStudentT& dist, const InitPolicy& init) {
  if (dist.nu() != params.nu) {
    throw std::invalid_argument("garch_filter: dist.nu() != params.nu");
  }
  return filter_core(y, params, dist.mean(), init);
}

FilterState garch_filter(std::span<const double> y, const GarchParams& params,
                         const SkewMechanism& mech, const InitPolicy& init) {
  mech.validate();
  if (mech.kind == MechKind::Symmetric) {
    return filter_core(y, params, 0.0, init);
  }
  return garch_filter(y, params, SkewedStudentT(params.nu, mech), init);
}

double log_likelihood(std::span<const double> y, const GarchParams& params,
                      const SkewedStudentT& dist, const InitPolicy& init) {
  if (dist.nu() != params.nu) {
    throw std::invalid_argument("log_likelihood: dist.nu() != params.nu");
  }
  return log_likelihood_core(y, params, dist.mechanism(), dist.mean(), init);
}

double log_likelihood(std::span<const double> y, const GarchParams& params,
                      const SkewMechanism& mech, const InitPolicy& init) {
  mech.validate();
  if (mech.kind == MechKind::Symmetric) {
    return log_likelihood_core(y, params, mech, 0.0, init);
  }
  return log_likelihood(y, params, SkewedStudentT(params.nu, mech), init);
}

std::vector<double> simulate(const GarchParams& params,
                             const SkewMechanism& mech, std::size_t n,
                             std::uint64_t seed, const InitPolicy& init) {
  params.validate();
  if (n == 0) {
    throw std::invalid_argument("simulate: n must be >= 1");
  }
  SkewedStudentT dist(params.nu, mech);
  const double ez = dist.mean();
  const double c = params.alpha + ez;
  Rng rng(seed);

  std::vector<double> y(n);
  double h = initial_h({}, params, init, /*simulating=*/true);
  double prev_u = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      h = params.alpha0 + params.alpha1 * prev_u * prev_u + params.beta1 * h;
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw std::runtime_error("simulate: non-finite inverse precision");
    }
    const double sqrt_h = std::sqrt(h);
    const double z = dist.sample(rng);
    const double u = (z - ez) * sqrt_h;
    y[j] = c * sqrt_h + u;
    prev_u = u;
  }
  return y;
}

}  // namespace skewgim
