#include "skewgim/prior.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace skewgim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

struct LogPdfVisitor {
  double x;
  double operator()(const NormalPrior& p) const {
    if (!(p.sd > 0.0)) throw std::invalid_argument("normal prior: sd <= 0");
    const double z = (x - p.mean) / p.sd;
    return -0.5 * z * z - std::log(p.sd) - kLogSqrt2Pi;
  }
  double operator()(const LogNormalPrior& p) const {
    if (!(p.sigma > 0.0)) {
      throw std::invalid_argument("lognormal prior: sigma <= 0");
    }
    if (!(x > 0.0)) return -kInf;
    const double lx = std::log(x);
    const double z = (lx - p.mu) / p.sigma;
    return -0.5 * z * z - std::log(p.sigma) - kLogSqrt2Pi - lx;
  }
  double operator()(const ExponentialPrior& p) const {
    if (!(p.mean > 0.0)) {
      throw std::invalid_argument("exponential prior: mean <= 0");
    }
    if (!(x >= 0.0)) return -kInf;
    return -x / p.mean - std::log(p.mean);
  }
  double operator()(const UniformPrior& p) const {
    if (!(p.hi > p.lo)) throw std::invalid_argument("uniform prior: hi <= lo");
    if (x < p.lo || x > p.hi) return -kInf;
    return -std::log(p.hi - p.lo);
  }
};

struct MeanVisitor {
  double operator()(const NormalPrior& p) const { return p.mean; }
  double operator()(const LogNormalPrior& p) const {
    return std::exp(p.mu + 0.5 * p.sigma * p.sigma);
  }
  double operator()(const ExponentialPrior& p) const { return p.mean; }
  double operator()(const UniformPrior& p) const { return 0.5 * (p.lo + p.hi); }
};

}  // namespace

double prior_log_pdf(const ScalarPrior& prior, double x) {
  return std::visit(LogPdfVisitor{x}, prior);
}

double prior_mean(const ScalarPrior& prior) {
  return std::visit(MeanVisitor{}, prior);
}

double PriorSpec::log_pdf(const GarchParams& params,
                          const SkewMechanism& mech) const {
  if (!params.in_support(require_stationarity)) return -kInf;
  if (!mech.is_valid()) return -kInf;
  if (!(mean_tail_margin(mech, params.nu) >= kMeanTailMarginMin)) {
    return -kInf;
  }

  double lp = prior_log_pdf(alpha, params.alpha) +
              prior_log_pdf(alpha0, params.alpha0) +
              prior_log_pdf(alpha1, params.alpha1) +
              prior_log_pdf(beta1, params.beta1) +
              prior_log_pdf(nu_minus_1, params.nu - 1.0);

  switch (mech.kind) {
    case MechKind::Symmetric:
      break;
    case MechKind::InverseScale:
      lp += prior_log_pdf(inverse_scale_gamma, mech.eta[0]);
      break;
    case MechKind::HiddenTruncation:
      lp += prior_log_pdf(hidden_truncation_shape, mech.eta[0]);
      break;
    case MechKind::BetaOne:
      lp += prior_log_pdf(beta_one_gamma, mech.eta[0]);
      break;
    case MechKind::BetaTwo:
      lp += prior_log_pdf(beta_two_a, mech.eta[0]) +
            prior_log_pdf(beta_two_b, mech.eta[1]);
      break;
    case MechKind::Bernstein2: {
      const double w1 = mech.eta[0];
      const double w2 = mech.eta[1];
      const double w3 = 1.0 - w1 - w2;
      if (!(w1 > 0.0 && w2 > 0.0 && w3 > 0.0)) return -kInf;
      const auto& a = bernstein_alpha;
      lp += std::lgamma(a[0] + a[1] + a[2]) - std::lgamma(a[0]) -
            std::lgamma(a[1]) - std::lgamma(a[2]) +
            (a[0] - 1.0) * std::log(w1) + (a[1] - 1.0) * std::log(w2) +
            (a[2] - 1.0) * std::log(w3);
      break;
    }
    case MechKind::FerreiraSteel:
      lp += prior_log_pdf(ferreira_steel_gamma, mech.eta[0]);
      break;
  }
  return lp;
}

GarchParams PriorSpec::mean_garch() const {
  GarchParams p;
  p.alpha = prior_mean(alpha);
  p.alpha0 = prior_mean(alpha0);
  p.alpha1 = prior_mean(alpha1);
  p.beta1 = prior_mean(beta1);
  p.nu = 1.0 + prior_mean(nu_minus_1);
  return p;
}

std::vector<double> PriorSpec::mean_eta(MechKind kind) const {
  switch (kind) {
    case MechKind::Symmetric:
      return {};
    case MechKind::InverseScale:
      return {prior_mean(inverse_scale_gamma)};
    case MechKind::HiddenTruncation:
      return {prior_mean(hidden_truncation_shape)};
    case MechKind::BetaOne:
      return {prior_mean(beta_one_gamma)};
    case MechKind::BetaTwo:
      return {prior_mean(beta_two_a), prior_mean(beta_two_b)};
    case MechKind::Bernstein2: {
      const auto& a = bernstein_alpha;
      const double s = a[0] + a[1] + a[2];
      return {a[0] / s, a[1] / s};
    }
    case MechKind::FerreiraSteel:
      return {prior_mean(ferreira_steel_gamma)};
  }
  return {};
}

}  // namespace skewgim
