#pragma once

#include <span>
#include <string>
#include <vector>

#include "skewgim/garch.hpp"
#include "skewgim/skew.hpp"

namespace skewgim {

// Bijection between the natural parameter vector
//   (alpha, alpha0, alpha1, beta1, nu, eta...)
// and an unconstrained sampling scale: identity for unconstrained
// parameters, ln for positive ones, ln(nu - 1) for nu, logit for the (0,1)
// GARCH coefficients, and an additive log-ratio map for the Bernstein
// weight simplex.
class ParamTransform {
 public:
  explicit ParamTransform(MechKind kind) : kind_(kind) {}

  MechKind kind() const { return kind_; }
  std::size_t dim() const { return 5 + eta_dim(kind_); }
  std::vector<std::string> names() const;

  std::vector<double> pack(const GarchParams& params,
                           std::span<const double> eta) const;
  void unpack(std::span<const double> natural, GarchParams& params,
              std::vector<double>& eta) const;

  std::vector<double> to_unconstrained(std::span<const double> natural) const;
  std::vector<double> to_natural(std::span<const double> t) const;

  // ln |d natural / d t| at the unconstrained point t
  double log_jacobian(std::span<const double> t) const;

 private:
  MechKind kind_;
};

}  // namespace skewgim
