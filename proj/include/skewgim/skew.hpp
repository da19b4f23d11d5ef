#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "skewgim/rng.hpp"

namespace skewgim {

// Skewing mechanisms applied to the probability integral transform of the
// standardized Student-t: s(z) = f_t(z|nu) * p(F_t(z)|eta), where p is a
// density on (0,1). At each mechanism's symmetry restriction p == 1.
enum class MechKind {
  Symmetric,        // p == 1 (no skewing)
  InverseScale,     // scale gamma on one side of the mode, 1/gamma on the other
  HiddenTruncation, // p(u) = 2 F(shape * F^{-1}(u)), Azzalini-type
  BetaOne,          // p(u) = Be(u | gamma, 1/gamma)
  BetaTwo,          // p(u) = Be(u | a, b)
  Bernstein2,       // p(u) = sum_j w_j Be(u | j, 4-j), j = 1..3
  FerreiraSteel,    // p(u) = 1 + l(gamma) [g(u) - 1], uniform/linear mixture
};

const char* kind_name(MechKind kind);
MechKind kind_from_name(const std::string& name);
std::vector<std::string> eta_names(MechKind kind);
std::size_t eta_dim(MechKind kind);

struct SkewMechanism {
  MechKind kind = MechKind::Symmetric;
  std::vector<double> eta;  // layout given by eta_names(kind)

  static SkewMechanism symmetric();
  static SkewMechanism inverse_scale(double gamma);
  static SkewMechanism hidden_truncation(double shape);
  static SkewMechanism beta_one(double gamma);
  static SkewMechanism beta_two(double a, double b);
  static SkewMechanism bernstein2(double w1, double w2);
  static SkewMechanism ferreira_steel(double gamma);

  // The parameter point at which the mechanism collapses to symmetry.
  static SkewMechanism symmetry_restriction(MechKind kind);

  // Throws std::invalid_argument outside the admissible region; boundaries
  // are rejected with a 1e-8 margin so no downstream evaluation can hit an
  // infinity from a degenerate parameter.
  void validate() const;
  bool is_valid() const noexcept;
};

// Weight density p(u|eta) on (0,1). The degrees of freedom are consulted
// only by InverseScale and HiddenTruncation, which reference f_t and F_t.
double skew_weight(double u, const SkewMechanism& mech, double nu);

// ln p(u|eta) given precomputed ln u and ln(1-u); remains finite and
// accurate arbitrarily close to the endpoints.
double skew_log_weight(double u, double log_u, double log_1mu,
                       const SkewMechanism& mech, double nu);

// ln p(F_t(z)|eta) evaluated directly in z-space (no quantile round trip).
double skew_log_weight_at_z(double z, const SkewMechanism& mech, double nu);

// A skewed standardized Student-t: base nu > 1 plus a skewing mechanism.
// Immutable after construction; the mean E(z) is computed lazily by
// quadrature and cached idempotently (concurrent first readers agree).
class SkewedStudentT {
 public:
  SkewedStudentT(double nu, SkewMechanism mech);

  SkewedStudentT(const SkewedStudentT& o);
  SkewedStudentT& operator=(const SkewedStudentT& o);

  double nu() const { return nu_; }
  const SkewMechanism& mechanism() const { return mech_; }

  double log_pdf(double z) const;
  double pdf(double z) const;

  // E(z) = int_0^1 F_t^{-1}(u) p(u|eta) du by adaptive quadrature on the
  // unit interval; absolute accuracy ~1e-8 within the supported region.
  // Throws std::domain_error when the mean integral does not converge
  // (Beta-type mechanisms too close to the tail-existence boundary).
  double mean() const;

  // One draw of U ~ p(u|eta): exact inversion where closed forms exist,
  // Beta/mixture draws for the Beta kinds, and rejection from the uniform
  // envelope for HiddenTruncation.
  double sample_u(Rng& rng) const;

  // One draw with density pdf(); distributed as F_t^{-1}(U).
  double sample(Rng& rng) const;

  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

 private:
  double compute_mean() const;

  double nu_;
  SkewMechanism mech_;
  double log_norm_;    // ln of the Student-t normalizing constant
  double weight_c0_;   // mechanism constant (ln C, ln B(a,b), or tanh(gamma))
  mutable std::atomic<bool> mean_ready_{false};
  mutable std::atomic<double> cached_mean_{0.0};
};

// Spec-level convenience wrappers.
inline double skewed_pdf(double z, const SkewedStudentT& dist) {
  return dist.pdf(z);
}
inline double skewed_mean(const SkewedStudentT& dist) { return dist.mean(); }

// Margin to the tail-existence boundary of E(z): positive values mean the
// mean integral converges with that much Beta-exponent slack. Only the
// Beta-type mechanisms can be constrained; others return +inf.
double mean_tail_margin(const SkewMechanism& mech, double nu);

// Minimum tail margin accepted by SkewedStudentT::mean() and by the prior
// support (quadrature accuracy degrades as the boundary is approached).
inline constexpr double kMeanTailMarginMin = 0.1;

}  // namespace skewgim
