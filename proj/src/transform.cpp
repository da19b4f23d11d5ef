#include "skewgim/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace skewgim {

namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double x) { return std::log(x / (1.0 - x)); }

// ln x(1-x) for x = logistic(t), stable for large |t|
double log_logistic_jac(double t) {
  const double at = std::fabs(t);
  return -at - 2.0 * std::log1p(std::exp(-at));
}

}  // namespace

std::vector<std::string> ParamTransform::names() const {
  std::vector<std::string> n{"alpha", "alpha0", "alpha1", "beta1", "nu"};
  for (const auto& e : eta_names(kind_)) n.push_back(e);
  return n;
}

std::vector<double> ParamTransform::pack(const GarchParams& params,
                                         std::span<const double> eta) const {
  if (eta.size() != eta_dim(kind_)) {
    throw std::invalid_argument("ParamTransform::pack: eta dimension");
  }
  std::vector<double> v{params.alpha, params.alpha0, params.alpha1,
                        params.beta1, params.nu};
  v.insert(v.end(), eta.begin(), eta.end());
  return v;
}

void ParamTransform::unpack(std::span<const double> natural,
                            GarchParams& params,
                            std::vector<double>& eta) const {
  if (natural.size() != dim()) {
    throw std::invalid_argument("ParamTransform::unpack: dimension");
  }
  params.alpha = natural[0];
  params.alpha0 = natural[1];
  params.alpha1 = natural[2];
  params.beta1 = natural[3];
  params.nu = natural[4];
  eta.assign(natural.begin() + 5, natural.end());
}

std::vector<double> ParamTransform::to_unconstrained(
    std::span<const double> natural) const {
  if (natural.size() != dim()) {
    throw std::invalid_argument("ParamTransform::to_unconstrained: dimension");
  }
  std::vector<double> t(natural.size());
  t[0] = natural[0];
  t[1] = std::log(natural[1]);
  t[2] = logit(natural[2]);
  t[3] = logit(natural[3]);
  t[4] = std::log(natural[4] - 1.0);
  switch (kind_) {
    case MechKind::Symmetric:
      break;
    case MechKind::InverseScale:
    case MechKind::BetaOne:
      t[5] = std::log(natural[5]);
      break;
    case MechKind::HiddenTruncation:
    case MechKind::FerreiraSteel:
      t[5] = natural[5];
      break;
    case MechKind::BetaTwo:
      t[5] = std::log(natural[5]);
      t[6] = std::log(natural[6]);
      break;
    case MechKind::Bernstein2: {
      const double w1 = natural[5];
      const double w2 = natural[6];
      const double w3 = 1.0 - w1 - w2;
      t[5] = std::log(w1 / w3);
      t[6] = std::log(w2 / w3);
      break;
    }
  }
  return t;
}

std::vector<double> ParamTransform::to_natural(
    std::span<const double> t) const {
  if (t.size() != dim()) {
    throw std::invalid_argument("ParamTransform::to_natural: dimension");
  }
  std::vector<double> v(t.size());
  v[0] = t[0];
  v[1] = std::exp(t[1]);
  v[2] = logistic(t[2]);
  v[3] = logistic(t[3]);
  v[4] = 1.0 + std::exp(t[4]);
  switch (kind_) {
    case MechKind::Symmetric:
      break;
    case MechKind::InverseScale:
    case MechKind::BetaOne:
      v[5] = std::exp(t[5]);
      break;
    case MechKind::HiddenTruncation:
    case MechKind::FerreiraSteel:
      v[5] = t[5];
      break;
    case MechKind::BetaTwo:
      v[5] = std::exp(t[5]);
      v[6] = std::exp(t[6]);
      break;
    case MechKind::Bernstein2: {
      // w_i = exp(t_i) / (1 + exp(t5) + exp(t6)); guard the overflow range
      const double m = std::max({0.0, t[5], t[6]});
      const double e0 = std::exp(-m);
      const double e1 = std::exp(t[5] - m);
      const double e2 = std::exp(t[6] - m);
      const double s = e0 + e1 + e2;
      v[5] = e1 / s;
      v[6] = e2 / s;
      break;
    }
  }
  return v;
}

double ParamTransform::log_jacobian(std::span<const double> t) const {
  if (t.size() != dim()) {
    throw std::invalid_argument("ParamTransform::log_jacobian: dimension");
  }
  double lj = t[1]                     // d alpha0 / d t = alpha0
              + log_logistic_jac(t[2]) // alpha1 in (0,1)
              + log_logistic_jac(t[3]) // beta1 in (0,1)
              + t[4];                  // d nu / d t = nu - 1
  switch (kind_) {
    case MechKind::Symmetric:
    case MechKind::HiddenTruncation:
    case MechKind::FerreiraSteel:
      break;
    case MechKind::InverseScale:
    case MechKind::BetaOne:
      lj += t[5];
      break;
    case MechKind::BetaTwo:
      lj += t[5] + t[6];
      break;
    case MechKind::Bernstein2: {
      // |d(w1,w2)/d(t1,t2)| = w1 w2 w3 for the additive log-ratio map
      const double m = std::max({0.0, t[5], t[6]});
      const double e0 = std::exp(-m);
      const double e1 = std::exp(t[5] - m);
      const double e2 = std::exp(t[6] - m);
      const double log_s = m + std::log(e0 + e1 + e2);
      lj += t[5] + t[6] - 3.0 * log_s;
      break;
    }
  }
  return lj;
}

}  // namespace skewgim
