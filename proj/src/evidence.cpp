#include "skewgim/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "skewgim/rng.hpp"

namespace skewgim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn10 = std::log(10.0);

// Lower-triangular Cholesky of a symmetric positive-definite matrix stored
// row-major; retries with a growing ridge when the decomposition stalls.
struct Chol {
  std::size_t d;
  std::vector<double> l;  // row-major lower triangle (full square storage)

  double& at(std::size_t i, std::size_t j) { return l[i * d + j]; }
  double at(std::size_t i, std::size_t j) const { return l[i * d + j]; }

  double log_det_sqrt() const {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += std::log(at(i, i));
    return s;
  }

  // solve L w = v
  std::vector<double> forward(const std::vector<double>& v) const {
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) {
      double s = v[i];
      for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * w[j];
      w[i] = s / at(i, i);
    }
    return w;
  }
};

Chol cholesky_with_ridge(std::vector<double> cov, std::size_t d) {
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];
  double ridge = std::max(1e-12, 1e-10 * trace / static_cast<double>(d));
  for (int attempt = 0; attempt < 12; ++attempt) {
    Chol c{d, cov};
    for (std::size_t i = 0; i < d; ++i) c.at(i, i) += ridge;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      for (std::size_t j = 0; j <= i && ok; ++j) {
        double s = c.at(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= c.at(i, k) * c.at(j, k);
        if (i == j) {
          if (!(s > 0.0)) {
            ok = false;
          } else {
            c.at(i, i) = std::sqrt(s);
          }
        } else {
          c.at(i, j) = s / c.at(j, j);
        }
      }
    }
    if (ok) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) c.at(i, j) = 0.0;
      }
      return c;
    }
    ridge *= 10.0;
  }
  throw std::runtime_error("evidence: covariance not positive definite");
}

struct MomentMatch {
  std::vector<double> mean;
  Chol chol;  // of covariance
};

MomentMatch moment_match(const std::vector<std::vector<double>>& draws) {
  const std::size_t n = draws.size();
  const std::size_t d = draws.front().size();
  std::vector<double> mean(d, 0.0);
  for (const auto& row : draws) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  std::vector<double> cov(d * d, 0.0);
  for (const auto& row : draws) {
    for (std::size_t i = 0; i < d; ++i) {
      const double di = row[i] - mean[i];
      for (std::size_t j = 0; j <= i; ++j) {
        cov[i * d + j] += di * (row[j] - mean[j]);
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cov[i * d + j] /= static_cast<double>(n - 1);
      cov[j * d + i] = cov[i * d + j];
    }
  }
  return {std::move(mean), cholesky_with_ridge(std::move(cov), d)};
}

double variance(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (n - 1.0);
}

double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

// autocorrelation inflation factor of a chain-side sequence by batch means
double batch_means_rho(const std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t b = static_cast<std::size_t>(std::sqrt(double(n)));
  const std::size_t m = n / b;
  if (m < 4) return 1.0;
  std::vector<double> bm(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < b; ++i) bm[k] += v[k * b + i];
    bm[k] /= static_cast<double>(b);
  }
  const double var_all = variance(v);
  if (!(var_all > 0.0)) return 1.0;
  const double rho = static_cast<double>(b) * variance(bm) / var_all;
  return std::clamp(rho, 1.0, static_cast<double>(n));
}

}  // namespace

ModelEvidence estimate_log_evidence(
    const std::vector<std::vector<double>>& draws,
    const std::vector<double>& log_kernel_at_draws, const LogKernel& kernel,
    const EvidenceConfig& config, const std::string& model_id) {
  if (draws.size() < 10) {
    throw std::invalid_argument("evidence: need at least 10 posterior draws");
  }
  if (draws.size() != log_kernel_at_draws.size()) {
    throw std::invalid_argument(
        "evidence: draws and kernel values misaligned");
  }
  if (config.method != "bridge" && config.method != "importance") {
    throw std::invalid_argument("evidence: unknown method " + config.method);
  }
  // split halves: the proposal is moment-matched on the first half of the
  // chain and the estimator evaluated on the second, removing the
  // same-sample bias of fitting and evaluating on identical draws
  const std::size_t half = draws.size() / 2;
  const std::vector<std::vector<double>> fit_half(draws.begin(),
                                                  draws.begin() + half);
  const std::vector<std::vector<double>> eval_half(draws.begin() + half,
                                                   draws.end());
  const std::vector<double> eval_kernel(log_kernel_at_draws.begin() + half,
                                        log_kernel_at_draws.end());
  const std::size_t n1 = eval_half.size();
  const std::size_t n2 = std::max<std::size_t>(config.proposal_draws, 10);
  const std::size_t d = draws.front().size();

  const MomentMatch mm = moment_match(fit_half);
  const double log_norm_g = -0.5 * static_cast<double>(d) *
                                std::log(2.0 * std::numbers::pi) -
                            mm.chol.log_det_sqrt();
  auto log_g = [&](const std::vector<double>& x) {
    std::vector<double> delta(d);
    for (std::size_t j = 0; j < d; ++j) delta[j] = x[j] - mm.mean[j];
    const std::vector<double> w = mm.chol.forward(delta);
    double q = 0.0;
    for (double v : w) q += v * v;
    return log_norm_g - 0.5 * q;
  };

  Rng rng(config.seed);

  if (config.method == "importance") {
    // moment-matched multivariate t proposal (heavier tails than the target)
    const double df = config.importance_df;
    const double log_norm_t =
        std::lgamma(0.5 * (df + static_cast<double>(d))) -
        std::lgamma(0.5 * df) -
        0.5 * static_cast<double>(d) * std::log(df * std::numbers::pi) -
        mm.chol.log_det_sqrt();
    std::vector<double> logw(n2);
    std::vector<double> x(d), z(d);
    for (std::size_t jdraw = 0; jdraw < n2; ++jdraw) {
      for (auto& v : z) v = rng.normal();
      const double mix = std::sqrt(df / rng.chi_square(df));
      for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += mm.chol.at(i, k) * z[k];
        x[i] = mm.mean[i] + mix * s;
      }
      std::vector<double> delta(d);
      for (std::size_t i = 0; i < d; ++i) delta[i] = x[i] - mm.mean[i];
      const std::vector<double> w = mm.chol.forward(delta);
      double q = 0.0;
      for (double v : w) q += v * v;
      const double log_gt =
          log_norm_t -
          0.5 * (df + static_cast<double>(d)) * std::log1p(q / df);
      logw[jdraw] = kernel(x) - log_gt;
    }
    const double mx = *std::max_element(logw.begin(), logw.end());
    if (!std::isfinite(mx)) {
      throw std::runtime_error("evidence: importance weights all -inf for " +
                               model_id);
    }
    std::vector<double> wexp(n2);
    for (std::size_t j = 0; j < n2; ++j) wexp[j] = std::exp(logw[j] - mx);
    const double wbar = mean_of(wexp);
    const double log_z = mx + std::log(wbar);
    const double rel_se =
        std::sqrt(variance(wexp) / static_cast<double>(n2)) / wbar;
    ModelEvidence ev;
    ev.model_id = model_id;
    ev.log10_marginal = log_z / kLn10;
    ev.estimator = "importance";
    ev.mc_se = rel_se / kLn10;
    ev.iterations = 1;
    return ev;
  }

  // bridge sampling (Meng-Wong optimal bridge, iterated to its fixed point)
  std::vector<double> log_ratio_prop(n2);  // ln q - ln g at proposal draws
  {
    std::vector<double> x(d), z(d);
    for (std::size_t jdraw = 0; jdraw < n2; ++jdraw) {
      for (auto& v : z) v = rng.normal();
      for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += mm.chol.at(i, k) * z[k];
        x[i] = mm.mean[i] + s;
      }
      log_ratio_prop[jdraw] = kernel(x) - log_g(x);
    }
  }
  std::vector<double> log_ratio_post(n1);  // ln q - ln g at posterior draws
  for (std::size_t i = 0; i < n1; ++i) {
    log_ratio_post[i] = eval_kernel[i] - log_g(eval_half[i]);
  }

  double shift = -kInf;
  for (double v : log_ratio_prop) shift = std::max(shift, v);
  for (double v : log_ratio_post) shift = std::max(shift, v);
  if (!std::isfinite(shift)) {
    throw std::runtime_error("evidence: bridge ratios all -inf for " +
                             model_id);
  }
  std::vector<double> a(n2), b(n1);
  for (std::size_t j = 0; j < n2; ++j) {
    a[j] = std::exp(log_ratio_prop[j] - shift);
  }
  for (std::size_t i = 0; i < n1; ++i) {
    b[i] = std::exp(log_ratio_post[i] - shift);
  }

  const double s1 =
      static_cast<double>(n1) / static_cast<double>(n1 + n2);
  const double s2 =
      static_cast<double>(n2) / static_cast<double>(n1 + n2);
  double r = std::max(mean_of(a), 1e-300);
  std::size_t iter = 0;
  bool converged = false;
  for (; iter < config.max_iterations; ++iter) {
    double num = 0.0;
    for (std::size_t j = 0; j < n2; ++j) num += a[j] / (s1 * a[j] + s2 * r);
    num /= static_cast<double>(n2);
    double den = 0.0;
    for (std::size_t i = 0; i < n1; ++i) den += 1.0 / (s1 * b[i] + s2 * r);
    den /= static_cast<double>(n1);
    const double r_new = num / den;
    if (!(r_new > 0.0) || !std::isfinite(r_new)) {
      throw std::runtime_error("evidence: bridge iteration diverged for " +
                               model_id);
    }
    const double delta = std::fabs(std::log(r_new) - std::log(r));
    r = r_new;
    if (delta < config.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw std::runtime_error(
        "evidence: bridge estimator hit the iteration cap for " + model_id);
  }

  // relative-MSE estimate of the bridge estimator; the posterior-side term
  // is inflated by the batch-means autocorrelation factor of the chain
  std::vector<double> f1(n2), f2(n1);
  for (std::size_t j = 0; j < n2; ++j) f1[j] = a[j] / (s1 * a[j] + s2 * r);
  for (std::size_t i = 0; i < n1; ++i) f2[i] = 1.0 / (s1 * b[i] + s2 * r);
  const double e1 = mean_of(f1), e2 = mean_of(f2);
  const double rho = batch_means_rho(f2);
  const double re2 =
      variance(f1) / (static_cast<double>(n2) * e1 * e1) +
      rho * variance(f2) / (static_cast<double>(n1) * e2 * e2);

  ModelEvidence ev;
  ev.model_id = model_id;
  ev.log10_marginal = (shift + std::log(r)) / kLn10;
  ev.estimator = "bridge";
  ev.mc_se = std::sqrt(std::max(re2, 0.0)) / kLn10;
  ev.iterations = iter + 1;
  return ev;
}

ModelComparison posterior_model_probs(std::vector<ModelEvidence> evidence,
                                      std::vector<double> prior_probs) {
  if (evidence.empty()) {
    throw std::invalid_argument("posterior_model_probs: empty evidence list");
  }
  if (evidence.size() != prior_probs.size()) {
    throw std::invalid_argument(
        "posterior_model_probs: evidence and prior lists misaligned");
  }
  double prior_sum = 0.0;
  for (double p : prior_probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument(
          "posterior_model_probs: negative prior probability");
    }
    prior_sum += p;
  }
  if (std::fabs(prior_sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "posterior_model_probs: prior probabilities must sum to 1");
  }
  for (auto& p : prior_probs) p /= prior_sum;

  double max_l = -kInf;
  for (const auto& e : evidence) {
    if (!std::isfinite(e.log10_marginal)) {
      throw std::invalid_argument(
          "posterior_model_probs: non-finite log marginal for " + e.model_id);
    }
    max_l = std::max(max_l, e.log10_marginal);
  }
  std::vector<double> w(evidence.size());
  double total = 0.0;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    w[i] = prior_probs[i] *
           std::pow(10.0, evidence[i].log10_marginal - max_l);
    total += w[i];
  }
  ModelComparison cmp;
  cmp.entries = std::move(evidence);
  cmp.prior_probs = std::move(prior_probs);
  cmp.posterior_probs.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    cmp.posterior_probs[i] = w[i] / total;
  }
  return cmp;
}

}  // namespace skewgim
