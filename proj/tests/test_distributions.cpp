#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <future>
#include <numbers>

#include "oracles.hpp"
#include "skewgim/pipeline.hpp"
#include "skewgim/quadrature.hpp"
#include "skewgim/skew.hpp"
#include "skewgim/student_t.hpp"

using namespace skewgim;

namespace {

std::vector<SkewMechanism> asymmetric_examples() {
  return {SkewMechanism::inverse_scale(2.0),
          SkewMechanism::inverse_scale(0.5),
          SkewMechanism::hidden_truncation(1.5),
          SkewMechanism::hidden_truncation(-2.0),
          SkewMechanism::beta_one(1.6),
          SkewMechanism::beta_one(0.7),
          SkewMechanism::beta_two(3.0, 1.0),
          SkewMechanism::beta_two(0.8, 2.5),
          SkewMechanism::bernstein2(0.5, 0.2),
          SkewMechanism::bernstein2(0.1, 0.2),
          SkewMechanism::ferreira_steel(1.0),
          SkewMechanism::ferreira_steel(-0.7)};
}

double sample_skewness(const std::vector<double>& v) {
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
  m2 /= n;
  m3 /= n;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace

TEST_CASE("t_pdf values") {
  CHECK(t_pdf(0.0, 1.0) ==
        doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(t_pdf(1.7, 5.0) == doctest::Approx(t_pdf(-1.7, 5.0)).epsilon(1e-15));
  // frozen 50-digit evaluation of the density formula
  CHECK(t_pdf(1.0, 3.0) ==
        doctest::Approx(0.20674833578317201857).epsilon(1e-14));
  CHECK_THROWS_AS((void)t_pdf(0.0, -1.0), std::invalid_argument);
  // maximal at zero
  CHECK(t_pdf(0.0, 7.0) > t_pdf(0.3, 7.0));
}

TEST_CASE("t_cdf values and quadrature oracle") {
  for (double nu : {1.0, 2.0, 4.5, 30.0}) {
    CHECK(t_cdf(0.0, nu) == 0.5);
  }
  CHECK(t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  // frozen value + live adaptive-quadrature oracle
  CHECK(t_cdf(2.5, 7.0) ==
        doctest::Approx(0.97950389070712355156).epsilon(1e-13));
  auto quad = gk15_adaptive([](double z) { return t_pdf(z, 7.0); }, 0.0, 2.5,
                            1e-13);
  CHECK(t_cdf(2.5, 7.0) == doctest::Approx(0.5 + quad.value).epsilon(1e-12));
  // strictly increasing
  CHECK(t_cdf(0.4, 3.0) < t_cdf(0.5, 3.0));
  CHECK_THROWS_AS((void)t_cdf(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("t_quantile values and inversion") {
  CHECK(t_quantile(0.5, 11.0) == 0.0);
  CHECK(t_quantile(0.75, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  // frozen bisection-oracle value
  CHECK(t_quantile(0.9, 4.0) ==
        doctest::Approx(1.5332062740589439108).epsilon(1e-12));
  // live bisection oracle
  {
    double lo = 0.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (t_cdf(mid, 4.0) < 0.9 ? lo : hi) = mid;
    }
    CHECK(t_quantile(0.9, 4.0) == doctest::Approx(lo).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)t_quantile(0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS((void)t_quantile(1.0, 3.0), std::invalid_argument);

  // |F(F^-1(u)) - u| < 1e-10 on the spec grid
  for (double u : {1e-6, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0 - 1e-6}) {
    for (double nu : {1.0, 1.3, 2.0, 3.5, 7.0, 30.0, 150.0}) {
      CHECK(std::fabs(t_cdf(t_quantile(u, nu), nu) - u) < 1e-10);
    }
  }
}

TEST_CASE("t_quantile extreme tails") {
  // frozen 50-digit references
  CHECK(t_quantile_upper_tail(std::log(1e-13), 3.0) ==
        doctest::Approx(22257.698184310489632).epsilon(1e-10));
  CHECK(t_quantile(1e-6, 2.0) ==
        doctest::Approx(-707.10572052593380253).epsilon(1e-12));
  // against Boost's complement quantile across regimes (power-law and
  // Gaussian-like tails)
  for (double nu : {2.5, 8.0, 60.0}) {
    for (double tau : {1e-13, 1e-9, 1e-6, 1e-3, 0.04}) {
      const double ours = t_quantile_upper_tail(std::log(tau), nu);
      const double ref = static_cast<double>(
          oracle::t_quantile_upper(static_cast<long double>(tau), nu));
      INFO("nu=", nu, " tau=", tau);
      CHECK(ours == doctest::Approx(ref).epsilon(1e-9));
    }
  }
  // deep-tail round trip on the log scale
  for (double nu : {1.5, 4.0, 25.0}) {
    const double log_tau = -120.0;
    const double z = t_quantile_upper_tail(log_tau, nu);
    CHECK(t_log_sf(z, nu) == doctest::Approx(log_tau).epsilon(1e-10));
  }
}

TEST_CASE("mechanism validation") {
  CHECK_THROWS_AS(SkewMechanism::beta_one(0.0).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SkewMechanism::inverse_scale(-2.0).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SkewMechanism::bernstein2(0.6, 0.5).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(SkewMechanism::beta_two(1.0, 1e-12).validate(),
                  std::invalid_argument);
  SkewMechanism bad{MechKind::BetaTwo, {1.0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(SkewMechanism::bernstein2(0.3, 0.3).validate());
  CHECK_THROWS_AS((void)skew_weight(0.0, SkewMechanism::symmetric(), 5.0),
                  std::invalid_argument);
}

TEST_CASE("skew weight values") {
  // hidden truncation at its symmetry restriction: 2 F(0) = 1 for every u
  for (double u : {0.05, 0.3, 0.9}) {
    CHECK(skew_weight(u, SkewMechanism::hidden_truncation(0.0), 6.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  // equal-weight Bernstein mixture is the uniform density
  CHECK(skew_weight(0.3, SkewMechanism::bernstein2(1.0 / 3, 1.0 / 3), 5.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // frozen independent evaluations
  CHECK(skew_weight(0.5, SkewMechanism::beta_one(2.0), 5.0) ==
        doctest::Approx(0.5303300858899106433).epsilon(1e-13));
  CHECK(skew_weight(0.25, SkewMechanism::inverse_scale(2.0), 6.0) ==
        doctest::Approx(0.37990521056713408828).epsilon(1e-12));
  // hidden truncation with unit shape: p(u) = 2u exactly
  CHECK(skew_weight(0.3, SkewMechanism::hidden_truncation(1.0), 5.0) ==
        doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("weight normalization across mechanisms") {
  for (const auto& mech : asymmetric_examples()) {
    for (double nu : {2.0, 5.0, 30.0}) {
      auto r = integrate_unit_interval(
          [&](double u, double lu, double l1mu) {
            return std::exp(skew_log_weight(u, lu, l1mu, mech, nu));
          },
          1e-10);
      INFO(std::string(kind_name(mech.kind)), " nu=", nu);
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("skewed pdf") {
  // symmetric mechanism: equals the base density exactly
  SkewedStudentT sym(7.0, SkewMechanism::symmetric());
  for (double z : {-3.0, 0.0, 1.234}) {
    CHECK(sym.pdf(z) == t_pdf(z, 7.0));
  }
  // hidden truncation at the restriction
  SkewedStudentT ht0(6.0, SkewMechanism::hidden_truncation(0.0));
  CHECK(std::fabs(ht0.pdf(1.3) - t_pdf(1.3, 6.0)) < 1e-12);
  // frozen composite value
  SkewedStudentT b2(8.0, SkewMechanism::beta_two(2.0, 1.0));
  CHECK(b2.pdf(0.5) ==
        doctest::Approx(0.46109014679280925138).epsilon(1e-13));
  // z-space and u-space weight paths agree
  for (const auto& mech : asymmetric_examples()) {
    for (double z : {-4.2, -0.7, 0.0, 1.1, 5.5}) {
      const double lw_z = skew_log_weight_at_z(z, mech, 5.0);
      const double u = t_cdf(z, 5.0);
      const double lw_u =
          skew_log_weight(u, std::log(u), std::log1p(-u), mech, 5.0);
      CHECK(lw_z == doctest::Approx(lw_u).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetry collapse on a z grid") {
  for (MechKind kind :
       {MechKind::InverseScale, MechKind::HiddenTruncation, MechKind::BetaOne,
        MechKind::BetaTwo, MechKind::Bernstein2, MechKind::FerreiraSteel}) {
    SkewedStudentT dist(5.0, SkewMechanism::symmetry_restriction(kind));
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double z = -10.0 + 0.1 * i;
      worst = std::max(worst, std::fabs(dist.pdf(z) - t_pdf(z, 5.0)));
    }
    INFO(std::string(kind_name(kind)));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("skewed mean") {
  // symmetry restrictions integrate to zero
  for (MechKind kind :
       {MechKind::InverseScale, MechKind::HiddenTruncation, MechKind::BetaOne,
        MechKind::BetaTwo, MechKind::Bernstein2, MechKind::FerreiraSteel}) {
    SkewedStudentT dist(2.5, SkewMechanism::symmetry_restriction(kind));
    INFO(std::string(kind_name(kind)));
    CHECK(std::fabs(dist.mean()) < 1e-8);
  }
  // inverse-scale closed form (Fernandez-Steel moment identity)
  for (double g : {0.5, 1.3, 2.0}) {
    for (double nu : {2.2, 5.0, 12.0}) {
      const double m1 = 2.0 * std::sqrt(nu) *
                        std::exp(std::lgamma(0.5 * (nu + 1.0)) -
                                 std::lgamma(0.5 * nu)) /
                        (std::sqrt(std::numbers::pi) * (nu - 1.0));
      SkewedStudentT dist(nu, SkewMechanism::inverse_scale(g));
      CHECK(dist.mean() ==
            doctest::Approx((g - 1.0 / g) * m1).epsilon(1e-8));
    }
  }
  // frozen high-precision references
  CHECK(SkewedStudentT(5.0, SkewMechanism::hidden_truncation(2.0)).mean() ==
        doctest::Approx(0.84357042182776540264).epsilon(1e-9));
  CHECK(SkewedStudentT(10.0, SkewMechanism::beta_two(3.0, 1.0)).mean() ==
        doctest::Approx(0.92991837096926977798).epsilon(1e-9));
  // right-skewing weight concentrates mass on u > 1/2: positive mean
  CHECK(SkewedStudentT(5.0, SkewMechanism::hidden_truncation(2.0)).mean() >
        0.0);
  // existence boundary
  CHECK_THROWS_AS((void)SkewedStudentT(1.0, SkewMechanism::symmetric()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)SkewedStudentT(2.0, SkewMechanism::beta_two(0.3, 2.0)).mean(),
      std::domain_error);
}

TEST_CASE("skewed mean against Monte Carlo") {
  // spot check two mechanisms here; the full 10^7-draw sweep runs in the
  // acceptance suite
  struct Case {
    SkewMechanism mech;
    double nu;
  };
  for (const auto& c : {Case{SkewMechanism::beta_two(3.0, 1.0), 10.0},
                        Case{SkewMechanism::ferreira_steel(1.2), 6.0}}) {
    SkewedStudentT dist(c.nu, c.mech);
    const std::size_t n = 1000000;
    const auto draws = dist.sample(n, 20250809);
    double mean = 0.0;
    for (double v : draws) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : draws) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / (n - 1.0) / static_cast<double>(n));
    INFO(std::string(kind_name(c.mech.kind)));
    CHECK(std::fabs(dist.mean() - mean) < 4.0 * se);
  }
}

TEST_CASE("sampling determinism and distribution") {
  SkewedStudentT dist(8.0, SkewMechanism::beta_two(2.0, 1.0));
  const auto a = dist.sample(500, 42);
  const auto b = dist.sample(500, 42);
  CHECK(a == b);
  const auto c = dist.sample(500, 43);
  CHECK(a != c);
  CHECK_THROWS_AS((void)dist.sample(0, 1), std::invalid_argument);

  // probability-integral-transform check: F_t(samples) ~ Beta(2,1),
  // Kolmogorov-Smirnov at the 1% level
  const std::size_t n = 20000;
  auto draws = dist.sample(n, 7);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = t_cdf(draws[i], 8.0);
  std::sort(u.begin(), u.end());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = u[i] * u[i];  // Beta(2,1) cdf
    const double hi = (i + 1.0) / n - cdf;
    const double lo = cdf - static_cast<double>(i) / n;
    d_stat = std::max({d_stat, hi, lo});
  }
  CHECK(d_stat < 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("symmetric sample skewness near zero") {
  SkewedStudentT dist(20.0, SkewMechanism::symmetric());
  const std::size_t n = 1000000;
  const auto draws = dist.sample(n, 99);
  // se of sample skewness for heavy-ish tails: sqrt(15/n) is a safe bound
  const double se = std::sqrt(15.0 / static_cast<double>(n));
  CHECK(std::fabs(sample_skewness(draws)) < 3.0 * se);
}

TEST_CASE("sampling matches the weight: all mechanisms, PIT histogram") {
  // coarse 20-bin chi-square-style sanity on U = F_t(Z) against p(u|eta)
  for (const auto& mech : asymmetric_examples()) {
    SkewedStudentT dist(6.0, mech);
    const std::size_t n = 40000;
    auto draws = dist.sample(n, 1234);
    std::array<int, 20> counts{};
    for (double z : draws) {
      auto bin = static_cast<std::size_t>(t_cdf(z, 6.0) * 20.0);
      counts[std::min<std::size_t>(bin, 19)]++;
    }
    double chi2 = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      const double lo = std::max(k / 20.0, 1e-13);
      const double hi = std::min((k + 1) / 20.0, 1.0 - 1e-13);
      auto r = gk15_adaptive(
          [&](double u) {
            return std::exp(skew_log_weight(u, std::log(u), std::log1p(-u),
                                            mech, 6.0));
          },
          lo, hi, 1e-9);
      const double expect = r.value * static_cast<double>(n);
      chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
    }
    INFO(std::string(kind_name(mech.kind)));
    CHECK(chi2 < 50.0);  // 19 dof, far tail cut-off
  }
}

TEST_CASE("lazy mean is idempotent under concurrent first readers") {
  SkewedStudentT dist(7.0, SkewMechanism::beta_two(2.0, 3.0));
  auto f1 = std::async(std::launch::async, [&] { return dist.mean(); });
  auto f2 = std::async(std::launch::async, [&] { return dist.mean(); });
  const double a = f1.get(), b = f2.get();
  CHECK(a == b);
  CHECK(a == dist.mean());
}

TEST_CASE("mechanism JSON shape round trip") {
  const auto mech = SkewMechanism::beta_two(2.5, 0.75);
  const nlohmann::json j = mechanism_to_json(mech);
  CHECK(j.at("kind") == "beta_two");
  CHECK(j.at("eta").at("a") == 2.5);
  const SkewMechanism back = mechanism_from_json(j);
  CHECK(back.kind == mech.kind);
  CHECK(back.eta == mech.eta);
  CHECK_THROWS(mechanism_from_json(nlohmann::json{{"kind", "nope"}}));
  CHECK_THROWS(mechanism_from_json(
      nlohmann::json{{"kind", "beta_two"}, {"eta", {{"a", 1.0}}}}));
}
