#include "skewgim/skew.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgim/quadrature.hpp"
#include "skewgim/special.hpp"
#include "skewgim/student_t.hpp"

namespace skewgim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEtaMargin = 1e-8;

double weight_const(const SkewMechanism& m) {
  switch (m.kind) {
    case MechKind::InverseScale: {
      const double g = m.eta[0];
      return std::log(2.0 / (g + 1.0 / g));  // ln C
    }
    case MechKind::BetaOne:
      return log_beta(m.eta[0], 1.0 / m.eta[0]);
    case MechKind::BetaTwo:
      return log_beta(m.eta[0], m.eta[1]);
    case MechKind::FerreiraSteel:
      return std::tanh(m.eta[0]);  // mixing weight l(gamma) in (-1,1)
    default:
      return 0.0;
  }
}

double log_weight_u(double u, double log_u, double log_1mu,
                    const SkewMechanism& m, double nu, double c0) {
  switch (m.kind) {
    case MechKind::Symmetric:
      return 0.0;
    case MechKind::InverseScale: {
      const double q = t_quantile_ext(u, log_u, log_1mu, nu);
      const double scale = u < 0.5 ? m.eta[0] : 1.0 / m.eta[0];
      return c0 + t_log_pdf(scale * q, nu) - t_log_pdf(q, nu);
    }
    case MechKind::HiddenTruncation: {
      const double q = t_quantile_ext(u, log_u, log_1mu, nu);
      return std::log(2.0) + t_log_cdf(m.eta[0] * q, nu);
    }
    case MechKind::BetaOne:
      return (m.eta[0] - 1.0) * log_u + (1.0 / m.eta[0] - 1.0) * log_1mu - c0;
    case MechKind::BetaTwo:
      return (m.eta[0] - 1.0) * log_u + (m.eta[1] - 1.0) * log_1mu - c0;
    case MechKind::Bernstein2: {
      const double uu = std::exp(log_u);
      const double vv = std::exp(log_1mu);
      const double w3 = 1.0 - m.eta[0] - m.eta[1];
      const double p = 3.0 * m.eta[0] * vv * vv +
                       6.0 * m.eta[1] * uu * vv + 3.0 * w3 * uu * uu;
      return std::log(p);
    }
    case MechKind::FerreiraSteel:
      return std::log1p(c0 * (2.0 * u - 1.0));
  }
  return 0.0;
}

double log_weight_z(double z, const SkewMechanism& m, double nu, double c0) {
  switch (m.kind) {
    case MechKind::Symmetric:
      return 0.0;
    case MechKind::InverseScale: {
      const double scale = z < 0.0 ? m.eta[0] : 1.0 / m.eta[0];
      return c0 + t_log_pdf(scale * z, nu) - t_log_pdf(z, nu);
    }
    case MechKind::HiddenTruncation:
      return std::log(2.0) + t_log_cdf(m.eta[0] * z, nu);
    default: {
      const double log_u = t_log_cdf(z, nu);
      const double log_1mu = t_log_sf(z, nu);
      const double u = z >= 0.0 ? 1.0 - std::exp(log_1mu) : std::exp(log_u);
      return log_weight_u(u, log_u, log_1mu, m, nu, c0);
    }
  }
}

}  // namespace

const char* kind_name(MechKind kind) {
  switch (kind) {
    case MechKind::Symmetric: return "symmetric";
    case MechKind::InverseScale: return "inverse_scale";
    case MechKind::HiddenTruncation: return "hidden_truncation";
    case MechKind::BetaOne: return "beta_one";
    case MechKind::BetaTwo: return "beta_two";
    case MechKind::Bernstein2: return "bernstein2";
    case MechKind::FerreiraSteel: return "ferreira_steel";
  }
  return "?";
}

MechKind kind_from_name(const std::string& name) {
  for (MechKind k :
       {MechKind::Symmetric, MechKind::InverseScale, MechKind::HiddenTruncation,
        MechKind::BetaOne, MechKind::BetaTwo, MechKind::Bernstein2,
        MechKind::FerreiraSteel}) {
    if (name == kind_name(k)) return k;
  }
  throw std::invalid_argument("unknown mechanism kind: " + name);
}

std::vector<std::string> eta_names(MechKind kind) {
  switch (kind) {
    case MechKind::Symmetric: return {};
    case MechKind::InverseScale: return {"gamma"};
    case MechKind::HiddenTruncation: return {"shape"};
    case MechKind::BetaOne: return {"gamma"};
    case MechKind::BetaTwo: return {"a", "b"};
    case MechKind::Bernstein2: return {"w1", "w2"};
    case MechKind::FerreiraSteel: return {"gamma"};
  }
  return {};
}

std::size_t eta_dim(MechKind kind) { return eta_names(kind).size(); }

SkewMechanism SkewMechanism::symmetric() { return {MechKind::Symmetric, {}}; }
SkewMechanism SkewMechanism::inverse_scale(double gamma) {
  return {MechKind::InverseScale, {gamma}};
}
SkewMechanism SkewMechanism::hidden_truncation(double shape) {
  return {MechKind::HiddenTruncation, {shape}};
}
SkewMechanism SkewMechanism::beta_one(double gamma) {
  return {MechKind::BetaOne, {gamma}};
}
SkewMechanism SkewMechanism::beta_two(double a, double b) {
  return {MechKind::BetaTwo, {a, b}};
}
SkewMechanism SkewMechanism::bernstein2(double w1, double w2) {
  return {MechKind::Bernstein2, {w1, w2}};
}
SkewMechanism SkewMechanism::ferreira_steel(double gamma) {
  return {MechKind::FerreiraSteel, {gamma}};
}

SkewMechanism SkewMechanism::symmetry_restriction(MechKind kind) {
  switch (kind) {
    case MechKind::Symmetric: return symmetric();
    case MechKind::InverseScale: return inverse_scale(1.0);
    case MechKind::HiddenTruncation: return hidden_truncation(0.0);
    case MechKind::BetaOne: return beta_one(1.0);
    case MechKind::BetaTwo: return beta_two(1.0, 1.0);
    case MechKind::Bernstein2: return bernstein2(1.0 / 3.0, 1.0 / 3.0);
    case MechKind::FerreiraSteel: return ferreira_steel(0.0);
  }
  return symmetric();
}

void SkewMechanism::validate() const {
  if (eta.size() != eta_dim(kind)) {
    throw std::invalid_argument(std::string("mechanism ") + kind_name(kind) +
                                ": eta has wrong dimension");
  }
  for (double v : eta) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string("mechanism ") + kind_name(kind) +
                                  ": non-finite parameter");
    }
  }
  auto positive = [&](double v, const char* what) {
    if (!(v >= kEtaMargin)) {
      throw std::invalid_argument(std::string("mechanism ") + kind_name(kind) +
                                  ": " + what + " must be positive");
    }
  };
  switch (kind) {
    case MechKind::Symmetric:
    case MechKind::HiddenTruncation:
    case MechKind::FerreiraSteel:
      break;
    case MechKind::InverseScale:
      positive(eta[0], "gamma");
      break;
    case MechKind::BetaOne:
      positive(eta[0], "gamma");
      break;
    case MechKind::BetaTwo:
      positive(eta[0], "a");
      positive(eta[1], "b");
      break;
    case MechKind::Bernstein2:
      positive(eta[0], "w1");
      positive(eta[1], "w2");
      if (!(eta[0] + eta[1] <= 1.0 - kEtaMargin)) {
        throw std::invalid_argument(
            "mechanism bernstein2: w1 + w2 must be below 1");
      }
      break;
  }
}

bool SkewMechanism::is_valid() const noexcept {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

double skew_weight(double u, const SkewMechanism& mech, double nu) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("skew_weight: u must lie in (0,1)");
  }
  mech.validate();
  const double lw = skew_log_weight(u, std::log(u), std::log1p(-u), mech, nu);
  return std::exp(lw);
}

double skew_log_weight(double u, double log_u, double log_1mu,
                       const SkewMechanism& mech, double nu) {
  return log_weight_u(u, log_u, log_1mu, mech, nu, weight_const(mech));
}

double skew_log_weight_at_z(double z, const SkewMechanism& mech, double nu) {
  return log_weight_z(z, mech, nu, weight_const(mech));
}

double mean_tail_margin(const SkewMechanism& mech, double nu) {
  switch (mech.kind) {
    case MechKind::BetaOne:
      return std::min(mech.eta[0], 1.0 / mech.eta[0]) - 1.0 / nu;
    case MechKind::BetaTwo:
      return std::min(mech.eta[0], mech.eta[1]) - 1.0 / nu;
    default:
      return kInf;
  }
}

SkewedStudentT::SkewedStudentT(double nu, SkewMechanism mech)
    : nu_(nu), mech_(std::move(mech)) {
  if (!(nu_ > 1.0) || !std::isfinite(nu_)) {
    throw std::invalid_argument("SkewedStudentT: nu must exceed 1");
  }
  mech_.validate();
  log_norm_ = t_log_norm_const(nu_);
  weight_c0_ = weight_const(mech_);
  if (mech_.kind == MechKind::Symmetric) {
    cached_mean_.store(0.0, std::memory_order_relaxed);
    mean_ready_.store(true, std::memory_order_release);
  }
}

SkewedStudentT::SkewedStudentT(const SkewedStudentT& o)
    : nu_(o.nu_),
      mech_(o.mech_),
      log_norm_(o.log_norm_),
      weight_c0_(o.weight_c0_) {
  if (o.mean_ready_.load(std::memory_order_acquire)) {
    cached_mean_.store(o.cached_mean_.load(std::memory_order_relaxed),
                       std::memory_order_relaxed);
    mean_ready_.store(true, std::memory_order_release);
  }
}

SkewedStudentT& SkewedStudentT::operator=(const SkewedStudentT& o) {
  if (this == &o) return *this;
  nu_ = o.nu_;
  mech_ = o.mech_;
  log_norm_ = o.log_norm_;
  weight_c0_ = o.weight_c0_;
  mean_ready_.store(false, std::memory_order_relaxed);
  if (o.mean_ready_.load(std::memory_order_acquire)) {
    cached_mean_.store(o.cached_mean_.load(std::memory_order_relaxed),
                       std::memory_order_relaxed);
    mean_ready_.store(true, std::memory_order_release);
  }
  return *this;
}

double SkewedStudentT::log_pdf(double z) const {
  const double base =
      log_norm_ - 0.5 * (nu_ + 1.0) * std::log1p(z * z / nu_);
  return base + log_weight_z(z, mech_, nu_, weight_c0_);
}

double SkewedStudentT::pdf(double z) const { return std::exp(log_pdf(z)); }

double SkewedStudentT::compute_mean() const {
  // exactly at a symmetry restriction the integrand is odd
  if (mech_.eta == SkewMechanism::symmetry_restriction(mech_.kind).eta) {
    return 0.0;
  }
  const double margin = mean_tail_margin(mech_, nu_);
  if (!(margin >= kMeanTailMarginMin)) {
    throw std::domain_error(
        "skewed_mean: mean integral at or beyond its existence boundary "
        "(Beta tail exponent too small for this nu)");
  }
  auto integrand = [&](double u, double log_u, double log_1mu) {
    const double lw = log_weight_u(u, log_u, log_1mu, mech_, nu_, weight_c0_);
    if (lw == -kInf) return 0.0;
    const double q = t_quantile_ext(u, log_u, log_1mu, nu_);
    return q * std::exp(lw);
  };
  QuadResult r = integrate_unit_interval(integrand, 1e-9, 0.0, 4000);
  if (!r.converged) {
    throw std::runtime_error("skewed_mean: quadrature did not converge");
  }
  return r.value;
}

double SkewedStudentT::mean() const {
  if (mean_ready_.load(std::memory_order_acquire)) {
    return cached_mean_.load(std::memory_order_relaxed);
  }
  const double m = compute_mean();
  cached_mean_.store(m, std::memory_order_relaxed);
  mean_ready_.store(true, std::memory_order_release);
  return m;
}

double SkewedStudentT::sample_u(Rng& rng) const {
  switch (mech_.kind) {
    case MechKind::Symmetric:
      return rng.uniform();
    case MechKind::InverseScale:
      return t_cdf(sample(rng), nu_);
    case MechKind::HiddenTruncation: {
      const double shape = mech_.eta[0];
      for (;;) {
        const double u = rng.uniform();
        const double q = t_quantile(u, nu_);
        if (rng.uniform() < t_cdf(shape * q, nu_)) return u;
      }
    }
    case MechKind::BetaOne:
      return rng.beta(mech_.eta[0], 1.0 / mech_.eta[0]);
    case MechKind::BetaTwo:
      return rng.beta(mech_.eta[0], mech_.eta[1]);
    case MechKind::Bernstein2: {
      const double w[3] = {mech_.eta[0], mech_.eta[1],
                           1.0 - mech_.eta[0] - mech_.eta[1]};
      const std::size_t j = rng.categorical(w, 3) + 1;  // component Be(j,4-j)
      return rng.beta(static_cast<double>(j), 4.0 - static_cast<double>(j));
    }
    case MechKind::FerreiraSteel: {
      const double l = weight_c0_;
      const double w = rng.uniform();
      if (std::fabs(l) < 1e-12) return w;
      // invert the cdf  P(u) = u + l (u^2 - u)  in closed form
      const double disc = (1.0 - l) * (1.0 - l) + 4.0 * l * w;
      return ((l - 1.0) + std::sqrt(std::max(disc, 0.0))) / (2.0 * l);
    }
  }
  return rng.uniform();
}

double SkewedStudentT::sample(Rng& rng) const {
  switch (mech_.kind) {
    case MechKind::InverseScale: {
      // exact two-piece inversion, directly in z-space
      const double g = mech_.eta[0];
      const double g2 = g * g;
      const double w = rng.uniform();
      const double p_left = 1.0 / (1.0 + g2);
      if (w <= p_left) {
        return t_quantile(w * (1.0 + g2) / 2.0, nu_) / g;
      }
      return g * t_quantile((w - p_left) * (1.0 + g2) / (2.0 * g2) + 0.5, nu_);
    }
    case MechKind::HiddenTruncation: {
      const double shape = mech_.eta[0];
      for (;;) {
        const double u = rng.uniform();
        const double q = t_quantile(u, nu_);
        if (rng.uniform() < t_cdf(shape * q, nu_)) return q;
      }
    }
    default:
      return t_quantile(sample_u(rng), nu_);
  }
}

std::vector<double> SkewedStudentT::sample(std::size_t n,
                                           std::uint64_t seed) const {
  if (n == 0) {
    throw std::invalid_argument("SkewedStudentT::sample: n must be >= 1");
  }
  Rng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sample(rng);
  return out;
}

}  // namespace skewgim
