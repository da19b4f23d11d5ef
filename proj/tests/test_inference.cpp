#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "skewgim/inference.hpp"

using namespace skewgim;

namespace {

// batch-means standard error of a chain mean
double chain_se(const std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t b = static_cast<std::size_t>(std::sqrt(double(n)));
  const std::size_t m = n / b;
  std::vector<double> bm(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < b; ++i) bm[k] += v[k * b + i];
    bm[k] /= static_cast<double>(b);
  }
  double mean = 0.0;
  for (double x : bm) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : bm) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (m - 1.0) / static_cast<double>(m));
}

double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

std::vector<double> column(const std::vector<std::vector<double>>& rows,
                           std::size_t j) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][j];
  return out;
}

}  // namespace

TEST_CASE("kernel: flat prior shifts the likelihood by a constant") {
  const auto y = simulate(GarchParams{0.1, 0.3, 0.1, 0.6, 8.0},
                          SkewMechanism::symmetric(), 50, 21,
                          InitPolicy::unconditional());
  PriorSpec flat;
  flat.alpha = UniformPrior{-10.0, 10.0};
  flat.alpha0 = UniformPrior{0.0, 10.0};
  flat.nu_minus_1 = UniformPrior{0.0, 50.0};
  GarchParams p1{0.0, 0.5, 0.2, 0.3, 6.0};
  GarchParams p2{0.3, 0.8, 0.1, 0.5, 9.0};
  const auto mech = SkewMechanism::symmetric();
  const InitPolicy init = InitPolicy::sample_variance();
  const double k1 = log_posterior_kernel(y, p1, mech, flat, init);
  const double k2 = log_posterior_kernel(y, p2, mech, flat, init);
  const double l1 = log_likelihood(y, p1, mech, init);
  const double l2 = log_likelihood(y, p2, mech, init);
  CHECK(k1 - k2 == doctest::Approx(l1 - l2).epsilon(1e-12));
}

TEST_CASE("kernel: off-support points give -inf") {
  const std::vector<double> y{0.1, -0.3, 0.2};
  PriorSpec prior;
  GarchParams bad{0.0, -1.0, 0.1, 0.1, 5.0};
  CHECK(log_posterior_kernel(y, bad, SkewMechanism::symmetric(), prior) ==
        -std::numeric_limits<double>::infinity());
  // beta-two point beyond the mean-existence margin
  GarchParams p{0.0, 0.5, 0.1, 0.1, 2.0};
  CHECK(log_posterior_kernel(y, p, SkewMechanism::beta_two(0.3, 1.0), prior) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("kernel composition against hand-built sum") {
  const std::vector<double> y{0.4, -0.2, 0.9};
  PriorSpec prior;  // defaults
  GarchParams p{0.2, 0.7, 0.15, 0.4, 6.0};
  const auto mech = SkewMechanism::hidden_truncation(0.8);
  const InitPolicy init = InitPolicy::fixed(1.0);
  const double kernel = log_posterior_kernel(y, p, mech, prior, init);
  const double by_hand =
      prior_log_pdf(prior.alpha, p.alpha) +
      prior_log_pdf(prior.alpha0, p.alpha0) +
      prior_log_pdf(prior.alpha1, p.alpha1) +
      prior_log_pdf(prior.beta1, p.beta1) +
      prior_log_pdf(prior.nu_minus_1, p.nu - 1.0) +
      prior_log_pdf(prior.hidden_truncation_shape, mech.eta[0]) +
      log_likelihood(y, p, mech, init);
  CHECK(kernel == doctest::Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("rwm on a known target") {
  // stub kernel: standard normal in 2d
  auto kernel = [](std::span<const double> t) {
    double s = 0.0;
    for (double v : t) s += v * v;
    return -0.5 * s;
  };
  RwmConfig cfg;
  cfg.seed = 31;
  cfg.iterations = 120000;
  cfg.burn_in = 20000;
  auto chain = rwm_chain(kernel, {1.5, -0.5}, cfg);
  CHECK(chain.acceptance_rate > 0.15);
  CHECK(chain.acceptance_rate < 0.55);

  for (std::size_t j = 0; j < 2; ++j) {
    const auto xs = column(chain.draws, j);
    const double se = chain_se(xs);
    CHECK(std::fabs(mean_of(xs)) < 4.0 * se);
    double var = 0.0;
    const double m = mean_of(xs);
    for (double x : xs) var += (x - m) * (x - m);
    var /= static_cast<double>(xs.size() - 1);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
  }

  // split-half stationarity smoke test
  const auto xs = column(chain.draws, 0);
  const std::size_t half = xs.size() / 2;
  std::vector<double> first(xs.begin(), xs.begin() + half);
  std::vector<double> second(xs.begin() + half, xs.end());
  const double se =
      std::sqrt(chain_se(first) * chain_se(first) +
                chain_se(second) * chain_se(second));
  CHECK(std::fabs(mean_of(first) - mean_of(second)) < 3.0 * se);
}

TEST_CASE("rwm determinism and kernel-shift invariance") {
  auto kernel = [](std::span<const double> t) {
    return -0.5 * t[0] * t[0];
  };
  auto shifted = [](std::span<const double> t) {
    return 123.0 - 0.5 * t[0] * t[0];
  };
  RwmConfig cfg;
  cfg.seed = 4;
  cfg.iterations = 5000;
  cfg.burn_in = 1000;
  const auto a = rwm_chain(kernel, {0.3}, cfg);
  const auto b = rwm_chain(kernel, {0.3}, cfg);
  const auto c = rwm_chain(shifted, {0.3}, cfg);
  CHECK(a.draws == b.draws);
  CHECK(a.draws == c.draws);
  CHECK(a.acceptance_rate == c.acceptance_rate);

  CHECK_THROWS_AS(
      (void)rwm_chain([](std::span<const double>) { return -INFINITY; },
                      {0.0}, cfg),
      std::invalid_argument);
  RwmConfig bad = cfg;
  bad.burn_in = bad.iterations;
  CHECK_THROWS_AS((void)rwm_chain(kernel, {0.0}, bad), std::invalid_argument);
}

TEST_CASE("garch posterior sampling keeps draws in support") {
  const auto y = simulate(GarchParams{0.1, 0.3, 0.12, 0.6, 8.0},
                          SkewMechanism::beta_two(2.0, 1.0), 300, 5,
                          InitPolicy::unconditional());
  PriorSpec prior;
  SamplerConfig cfg;
  cfg.seed = 17;
  cfg.iterations = 3000;
  cfg.burn_in = 1000;
  const auto chain =
      rwm_sample(y, SkewMechanism::beta_two(1.0, 1.0), prior, cfg);
  CHECK(chain.natural.size() == 2000);
  CHECK(chain.mean_z.size() == chain.natural.size());
  for (const auto& row : chain.natural) {
    CHECK(row[1] > 0.0);                // alpha0
    CHECK(row[2] > 0.0);
    CHECK(row[2] < 1.0);
    CHECK(row[3] > 0.0);
    CHECK(row[3] < 1.0);
    CHECK(row[4] > 1.0);                // nu
    CHECK(std::min(row[5], row[6]) - 1.0 / row[4] >= kMeanTailMarginMin);
  }
  // determinism
  const auto chain2 =
      rwm_sample(y, SkewMechanism::beta_two(1.0, 1.0), prior, cfg);
  CHECK(chain.natural == chain2.natural);
  CHECK(chain.mean_z == chain2.mean_z);
}

TEST_CASE("risk premium summary basics") {
  PosteriorChain chain;
  chain.kind = MechKind::Symmetric;
  chain.names = {"alpha", "alpha0", "alpha1", "beta1", "nu"};
  for (double a : {-1.0, 1.0, 2.0, 3.0}) {
    chain.natural.push_back({a, 1.0, 0.1, 0.1, 5.0});
    chain.unconstrained.push_back({});
    chain.log_kernel.push_back(0.0);
    chain.mean_z.push_back(0.0);
  }
  const auto s = risk_premium_summary(chain);
  CHECK(s.prob_positive == 0.75);
  CHECK(s.mean == doctest::Approx(1.25));

  PosteriorChain ones = chain;
  for (auto& row : ones.natural) row[0] = 1.0;
  CHECK(risk_premium_summary(ones).prob_positive == 1.0);

  PosteriorChain empty;
  CHECK_THROWS_AS((void)risk_premium_summary(empty), std::invalid_argument);
}

TEST_CASE("symmetric prob_positive equals the alpha>0 fraction exactly") {
  const auto y = simulate(GarchParams{0.02, 0.3, 0.1, 0.6, 10.0},
                          SkewMechanism::symmetric(), 250, 77,
                          InitPolicy::unconditional());
  PriorSpec prior;
  SamplerConfig cfg;
  cfg.seed = 8;
  cfg.iterations = 2500;
  cfg.burn_in = 800;
  const auto chain = rwm_sample(y, SkewMechanism::symmetric(), prior, cfg);
  const auto s = risk_premium_summary(chain);
  std::size_t pos = 0;
  for (const auto& row : chain.natural) pos += row[0] > 0.0 ? 1 : 0;
  CHECK(s.prob_positive ==
        static_cast<double>(pos) / static_cast<double>(chain.natural.size()));
}

TEST_CASE("posterior recovery on synthetic data (coarse calibration)") {
  // per parameter: the posterior mean lies within 2 posterior sd of the
  // simulating value in at least 90% of 20 replications (a joint all-five
  // check would fail ~20% of the time even for a perfectly calibrated
  // sampler, so coverage is counted parameter-wise)
  const GarchParams truth{0.08, 0.15, 0.1, 0.75, 8.0};
  PriorSpec prior;
  const int reps = 20;
  std::array<int, 5> covered{};
  for (int rep = 0; rep < reps; ++rep) {
    const auto y = simulate(truth, SkewMechanism::symmetric(), 2000,
                            9000 + rep, InitPolicy::unconditional());
    SamplerConfig cfg;
    cfg.seed = 40 + rep;
    cfg.iterations = 4000;
    cfg.burn_in = 1600;
    const auto chain = rwm_sample(y, SkewMechanism::symmetric(), prior, cfg);
    const double tr[5] = {truth.alpha, truth.alpha0, truth.alpha1,
                          truth.beta1, truth.nu};
    for (std::size_t j = 0; j < 5; ++j) {
      const auto xs = column(chain.natural, j);
      const double m = mean_of(xs);
      double sd = 0.0;
      for (double x : xs) sd += (x - m) * (x - m);
      sd = std::sqrt(sd / (xs.size() - 1.0));
      if (std::fabs(m - tr[j]) <= 2.0 * sd) ++covered[j];
    }
  }
  for (std::size_t j = 0; j < 5; ++j) {
    INFO("parameter ", j);
    CHECK(covered[j] >= 18);
  }
}
