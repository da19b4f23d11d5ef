#include "skewgim/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewgim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double quantile_of_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) throw std::invalid_argument("quantile of empty sample");
  const double pos = q * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] * (1.0 - frac) + s[hi] * frac;
}

}  // namespace

double log_posterior_kernel(std::span<const double> y,
                            const GarchParams& params,
                            const SkewMechanism& mech, const PriorSpec& prior,
                            const InitPolicy& init) {
  const double lp = prior.log_pdf(params, mech);
  if (lp == -kInf) return -kInf;
  try {
    const SkewedStudentT dist(params.nu, mech);
    return lp + log_likelihood(y, params, dist, init);
  } catch (const std::domain_error&) {
    return -kInf;  // mean-existence corner not caught by the prior margin
  } catch (const std::runtime_error&) {
    return -kInf;  // pathological numeric corner (quadrature non-convergence)
  }
}

GarchPosterior::GarchPosterior(std::vector<double> y, MechKind kind,
                               PriorSpec prior, InitPolicy init)
    : y_(std::move(y)),
      kind_(kind),
      prior_(std::move(prior)),
      init_(init),
      tf_(kind) {
  if (y_.empty()) {
    throw std::invalid_argument("GarchPosterior: empty data");
  }
}

double GarchPosterior::log_kernel_t(std::span<const double> t) const {
  GarchParams params;
  std::vector<double> eta;
  const std::vector<double> natural = tf_.to_natural(t);
  tf_.unpack(natural, params, eta);
  SkewMechanism mech{kind_, eta};
  const double lk =
      log_posterior_kernel(y_, params, mech, prior_, init_);
  if (lk == -kInf) return -kInf;
  return lk + tf_.log_jacobian(t);
}

LogKernel GarchPosterior::as_log_kernel() const {
  return [this](std::span<const double> t) { return log_kernel_t(t); };
}

std::vector<double> GarchPosterior::default_init_t() const {
  GarchParams p = prior_.mean_garch();
  // keep the start strictly inside every support restriction
  if (prior_.require_stationarity && p.alpha1 + p.beta1 >= 1.0) {
    const double shrink = 0.95 / (p.alpha1 + p.beta1);
    p.alpha1 *= shrink;
    p.beta1 *= shrink;
  }
  std::vector<double> eta = prior_.mean_eta(kind_);
  if (kind_ == MechKind::BetaOne || kind_ == MechKind::BetaTwo) {
    const double floor = 1.0 / p.nu + kMeanTailMarginMin + 0.05;
    for (auto& e : eta) e = std::max(e, floor);
    if (kind_ == MechKind::BetaOne) {
      eta[0] = std::min(eta[0], 1.0 / floor);
    }
  }
  return tf_.to_unconstrained(tf_.pack(p, eta));
}

PosteriorChain rwm_sample(std::span<const double> y, const SkewMechanism& mech,
                          const PriorSpec& prior,
                          const SamplerConfig& config) {
  mech.validate();
  GarchPosterior post(std::vector<double>(y.begin(), y.end()), mech.kind,
                      prior, config.init_policy);
  const ParamTransform& tf = post.transform();

  std::vector<double> init_t;
  if (config.init_natural) {
    if (config.init_natural->size() != tf.dim()) {
      throw std::invalid_argument("rwm_sample: init vector dimension");
    }
    init_t = tf.to_unconstrained(*config.init_natural);
  } else {
    init_t = post.default_init_t();
  }

  RwmConfig rc;
  rc.seed = config.seed;
  rc.iterations = config.iterations;
  rc.burn_in = config.burn_in;
  rc.thin = config.thin;
  rc.adapt_window = config.adapt_window;
  rc.initial_step = 0.1;

  RwmChain raw = rwm_chain(post.as_log_kernel(), std::move(init_t), rc);

  PosteriorChain chain;
  chain.kind = mech.kind;
  chain.names = tf.names();
  chain.seed = config.seed;
  chain.iterations = config.iterations;
  chain.burn_in = config.burn_in;
  chain.thin = config.thin;
  chain.acceptance_rate = raw.acceptance_rate;
  chain.unconstrained = std::move(raw.draws);
  chain.log_kernel = std::move(raw.log_kernel);

  chain.natural.reserve(chain.unconstrained.size());
  chain.mean_z.reserve(chain.unconstrained.size());
  double last_ez = 0.0;
  const std::vector<double>* last_t = nullptr;
  for (const auto& t : chain.unconstrained) {
    chain.natural.push_back(tf.to_natural(t));
    if (mech.kind == MechKind::Symmetric) {
      chain.mean_z.push_back(0.0);
      continue;
    }
    // rejected proposals repeat the previous state; reuse its E(z)
    if (last_t && *last_t == t) {
      chain.mean_z.push_back(last_ez);
    } else {
      const auto& nat = chain.natural.back();
      SkewMechanism m{mech.kind,
                      std::vector<double>(nat.begin() + 5, nat.end())};
      last_ez = SkewedStudentT(nat[4], m).mean();
      chain.mean_z.push_back(last_ez);
    }
    last_t = &t;
  }
  return chain;
}

PosteriorChain rwm_sample(const ExcessReturnSeries& y,
                          const SkewMechanism& mech, const PriorSpec& prior,
                          const SamplerConfig& config) {
  return rwm_sample(std::span<const double>(y.values), mech, prior, config);
}

std::vector<double> risk_premium_draws(const PosteriorChain& chain) {
  if (chain.natural.empty()) {
    throw std::invalid_argument("risk_premium_draws: empty chain");
  }
  if (chain.mean_z.size() != chain.natural.size()) {
    throw std::invalid_argument("risk_premium_draws: missing E(z) values");
  }
  std::vector<double> out(chain.natural.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(chain.natural[i][4] > 1.0)) {
      throw std::domain_error(
          "risk_premium_draws: draw with nu <= 1 (outside the prior support)");
    }
    out[i] = chain.natural[i][0] + chain.mean_z[i];
  }
  return out;
}

RiskPremiumSummary risk_premium_summary(const PosteriorChain& chain) {
  std::vector<double> v = risk_premium_draws(chain);
  RiskPremiumSummary s;
  const double n = static_cast<double>(v.size());
  std::size_t positive = 0;
  double sum = 0.0;
  for (double x : v) {
    if (x > 0.0) ++positive;
    sum += x;
  }
  s.prob_positive = static_cast<double>(positive) / n;
  s.mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  std::sort(v.begin(), v.end());
  s.q05 = quantile_of_sorted(v, 0.05);
  s.q25 = quantile_of_sorted(v, 0.25);
  s.q50 = quantile_of_sorted(v, 0.50);
  s.q75 = quantile_of_sorted(v, 0.75);
  s.q95 = quantile_of_sorted(v, 0.95);
  return s;
}

}  // namespace skewgim
