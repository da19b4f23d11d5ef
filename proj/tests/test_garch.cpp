#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "skewgim/garch.hpp"
#include "skewgim/rng.hpp"
#include "skewgim/student_t.hpp"

using namespace skewgim;

namespace {

double skewness(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  return (m3 / n) / std::pow(m2 / n, 1.5);
}

GarchParams random_params(Rng& rng) {
  GarchParams p;
  p.alpha = 0.4 * rng.normal();
  p.alpha0 = 0.05 + 0.3 * rng.uniform();
  p.alpha1 = 0.25 * rng.uniform();
  p.beta1 = 0.65 * rng.uniform();
  p.nu = 3.0 + 12.0 * rng.uniform();
  return p;
}

SkewMechanism random_mechanism(Rng& rng) {
  switch (static_cast<int>(rng.uniform() * 7.0)) {
    case 0: return SkewMechanism::symmetric();
    case 1: return SkewMechanism::inverse_scale(std::exp(0.5 * rng.normal()));
    case 2: return SkewMechanism::hidden_truncation(1.5 * rng.normal());
    case 3: return SkewMechanism::beta_one(std::exp(0.4 * rng.normal()));
    case 4:
      return SkewMechanism::beta_two(0.8 + 2.0 * rng.uniform(),
                                     0.8 + 2.0 * rng.uniform());
    case 5: {
      const double w1 = 0.1 + 0.5 * rng.uniform();
      const double w2 = (1.0 - w1) * (0.15 + 0.7 * rng.uniform());
      return SkewMechanism::bernstein2(w1, w2);
    }
    default: return SkewMechanism::ferreira_steel(1.2 * rng.normal());
  }
}

}  // namespace

TEST_CASE("filter degenerate recursions") {
  const std::vector<double> y{0.7, -1.1, 2.2, 0.3};
  // alpha1 = beta1 = 0: h is the intercept everywhere
  GarchParams p{0.2, 1.0, 0.0, 0.0, 6.0};
  auto s = garch_filter(y, p, SkewMechanism::symmetric(),
                        InitPolicy::unconditional());
  for (double h : s.h) CHECK(h == 1.0);

  // alpha = 0 with the symmetric mechanism: mu = 0, u = y
  p = GarchParams{0.0, 0.5, 0.2, 0.3, 6.0};
  s = garch_filter(y, p, SkewMechanism::symmetric(), InitPolicy::fixed(1.0));
  for (std::size_t j = 0; j < y.size(); ++j) {
    CHECK(s.mu[j] == 0.0);
    CHECK(s.u[j] == y[j]);
  }
}

TEST_CASE("filter hand recursion") {
  const std::vector<double> y{1.0, -2.0, 0.5};
  GarchParams p{0.0, 0.1, 0.1, 0.8, 6.0};
  auto s = garch_filter(y, p, SkewMechanism::symmetric(), InitPolicy::fixed(1.0));
  CHECK(s.h[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.h[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.h[2] == doctest::Approx(1.3).epsilon(1e-15));
}

TEST_CASE("filter positivity and mean proportionality") {
  Rng rng(5150);
  for (int rep = 0; rep < 200; ++rep) {
    GarchParams p = random_params(rng);
    SkewMechanism mech = random_mechanism(rng);
    std::vector<double> y(40);
    for (auto& v : y) v = 3.0 * rng.normal();
    SkewedStudentT dist(p.nu, mech);
    auto s = garch_filter(y, p, dist, InitPolicy::sample_variance());
    const double c = p.alpha + dist.mean();
    for (std::size_t j = 0; j < y.size(); ++j) {
      CHECK(s.h[j] > 0.0);
      CHECK(s.mu[j] / std::sqrt(s.h[j]) == doctest::Approx(c).epsilon(1e-12));
      CHECK(s.zstar[j] ==
            doctest::Approx(s.u[j] / std::sqrt(s.h[j])).epsilon(1e-14));
    }
  }
}

TEST_CASE("single Cauchy observation") {
  const std::vector<double> y{0.0};
  GarchParams p{0.0, 1.0, 0.0, 0.0, 1.0};
  const double ll = log_likelihood(y, p, SkewMechanism::symmetric(),
                                   InitPolicy::unconditional());
  CHECK(ll == doctest::Approx(-std::log(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("symmetric equals hidden truncation at its restriction") {
  const std::vector<double> y =
      simulate(GarchParams{0.1, 0.2, 0.1, 0.7, 8.0},
               SkewMechanism::symmetric(), 200, 11, InitPolicy::unconditional());
  GarchParams p{0.05, 0.3, 0.15, 0.6, 7.0};
  const double l_sym =
      log_likelihood(y, p, SkewMechanism::symmetric(), InitPolicy::sample_variance());
  const double l_ht = log_likelihood(y, p, SkewMechanism::hidden_truncation(0.0),
                                     InitPolicy::sample_variance());
  CHECK(std::fabs(l_sym - l_ht) < 1e-12);
}

TEST_CASE("log likelihood against the brute-force oracle") {
  Rng rng(777);
  for (int rep = 0; rep < 60; ++rep) {
    GarchParams truth = random_params(rng);
    SkewMechanism mech = random_mechanism(rng);
    const std::size_t t_len = 5 + static_cast<std::size_t>(rng.uniform() * 45);
    const auto y = simulate(truth, mech, t_len, 1000 + rep,
                            truth.alpha1 + truth.beta1 < 1.0
                                ? InitPolicy::unconditional()
                                : InitPolicy::fixed(truth.alpha0));
    GarchParams eval = random_params(rng);
    SkewMechanism eval_mech = random_mechanism(rng);
    SkewedStudentT dist(eval.nu, eval_mech);
    const double ours =
        log_likelihood(y, eval, dist, InitPolicy::sample_variance());
    const double ref = oracle::log_likelihood(
        y, eval, eval_mech, oracle::sample_variance(y), dist.mean());
    INFO("rep=", rep, " mech=", kind_name(eval_mech.kind));
    CHECK(ours == doctest::Approx(ref).epsilon(1e-11));
    CHECK(std::fabs(ours - ref) < 1e-10);
  }
}

TEST_CASE("likelihood reconstruction from per-observation terms") {
  // exp of summed log terms equals the product of conditional densities
  const auto y = simulate(GarchParams{0.0, 0.3, 0.1, 0.6, 6.0},
                          SkewMechanism::beta_two(2.0, 1.2), 30, 3,
                          InitPolicy::unconditional());
  GarchParams p{0.1, 0.25, 0.12, 0.55, 5.0};
  SkewMechanism mech = SkewMechanism::beta_two(1.8, 1.1);
  SkewedStudentT dist(p.nu, mech);
  auto s = garch_filter(y, p, dist, InitPolicy::sample_variance());
  long double product = 1.0L;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const long double dens =
        oracle::t_pdf(s.zstar[j], p.nu) *
        oracle::weight(oracle::t_cdf(s.zstar[j], p.nu), mech, p.nu) /
        std::sqrt(s.h[j]);
    product *= dens;
  }
  const double ll = log_likelihood(y, p, dist, InitPolicy::sample_variance());
  CHECK(std::exp(ll) ==
        doctest::Approx(static_cast<double>(product)).epsilon(1e-10));
}

TEST_CASE("likelihood returns -inf rather than throwing on underflow") {
  // variance recursion overflow
  {
    const std::vector<double> y{1e200, 1e200, 1e200};
    GarchParams p{0.0, 0.1, 0.9, 0.0, 3.0};
    const double ll = log_likelihood(y, p, SkewMechanism::symmetric(),
                                     InitPolicy::fixed(0.1));
    CHECK(std::isinf(ll));
    CHECK(ll < 0.0);
  }
  // weight factor rounds to zero (tanh(40) == 1 in double, u -> 0)
  {
    const std::vector<double> y{0.1, -1e9, 0.2};
    GarchParams p{0.0, 0.1, 0.0, 0.0, 3.0};
    const double ll = log_likelihood(y, p, SkewMechanism::ferreira_steel(40.0),
                                     InitPolicy::fixed(0.1));
    CHECK(std::isinf(ll));
    CHECK(ll < 0.0);
  }
}

TEST_CASE("simulate determinism and moments") {
  GarchParams p{0.0, 1.0, 0.0, 0.0, 30.0};
  const auto a = simulate(p, SkewMechanism::symmetric(), 300, 9,
                          InitPolicy::unconditional());
  const auto b = simulate(p, SkewMechanism::symmetric(), 300, 9,
                          InitPolicy::unconditional());
  CHECK(a == b);

  // variance of y equals alpha0 nu/(nu-2) when alpha1 = beta1 = 0
  const std::size_t n = 1000000;
  const auto big = simulate(p, SkewMechanism::symmetric(), n, 123,
                            InitPolicy::unconditional());
  double mean = 0.0;
  for (double v : big) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double v : big) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  const double target = p.alpha0 * p.nu / (p.nu - 2.0);
  const double se = std::sqrt((m4 - m2 * m2) / static_cast<double>(n));
  CHECK(std::fabs(m2 - target) < 3.0 * se);

  CHECK_THROWS_AS((void)simulate(p, SkewMechanism::symmetric(), 10, 1,
                                 InitPolicy::sample_variance()),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)simulate(p, SkewMechanism::symmetric(), 0, 1,
                                 InitPolicy::unconditional()),
                  std::invalid_argument);
}

TEST_CASE("likelihood concentrates at the simulating parameters") {
  GarchParams truth{0.05, 0.2, 0.1, 0.8, 8.0};
  int wins = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto y = simulate(truth, SkewMechanism::symmetric(), 5000, seed,
                            InitPolicy::unconditional());
    GarchParams doubled = truth;
    doubled.alpha0 *= 2.0;
    const double l_true = log_likelihood(y, truth, SkewMechanism::symmetric(),
                                         InitPolicy::sample_variance());
    const double l_doubled = log_likelihood(
        y, doubled, SkewMechanism::symmetric(), InitPolicy::sample_variance());
    if (l_true > l_doubled) ++wins;
  }
  CHECK(wins >= 95);
}

TEST_CASE("right-skewed simulation gives right-skewed residuals") {
  GarchParams p{0.0, 0.2, 0.1, 0.7, 8.0};
  int positive = 0;
  for (int seed = 0; seed < 30; ++seed) {
    const auto y = simulate(p, SkewMechanism::beta_two(3.0, 1.0), 10000, seed,
                            InitPolicy::unconditional());
    SkewedStudentT dist(p.nu, SkewMechanism::beta_two(3.0, 1.0));
    auto s = garch_filter(y, p, dist, InitPolicy::unconditional());
    if (skewness(s.zstar) > 0.0) ++positive;
  }
  CHECK(positive >= 29);
}

TEST_CASE("parameter validation") {
  const GarchParams neg_alpha0{0.0, -1.0, 0.0, 0.0, 5.0};
  CHECK_THROWS_AS(neg_alpha0.validate(), std::invalid_argument);
  const GarchParams neg_alpha1{0.0, 1.0, -0.1, 0.0, 5.0};
  CHECK_THROWS_AS(neg_alpha1.validate(), std::invalid_argument);
  const GarchParams explosive{0.0, 1.0, 0.6, 0.6, 5.0};
  CHECK_NOTHROW(explosive.validate(false));
  CHECK_THROWS_AS(explosive.validate(true), std::invalid_argument);
  // unconditional initialization needs stationarity
  const std::vector<double> y{0.1, 0.2};
  CHECK_THROWS_AS((void)garch_filter(y, explosive, SkewMechanism::symmetric(),
                                     InitPolicy::unconditional()),
                  std::invalid_argument);
}
