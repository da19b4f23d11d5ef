#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewgim/mcmc.hpp"

namespace skewgim {

struct EvidenceConfig {
  std::string method = "bridge";  // "bridge" or "importance"
  std::size_t proposal_draws = 2000;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 2000;  // bridge fixed-point cap
  double tol = 1e-10;                 // |delta ln r| stopping rule
  double importance_df = 5.0;         // multivariate-t proposal df
};

struct ModelEvidence {
  std::string model_id;
  double log10_marginal = 0.0;  // decimal log of p(y|M)
  std::string estimator;        // method tag
  double mc_se = 0.0;           // Monte Carlo s.e., log10 units
  std::size_t iterations = 0;   // bridge fixed-point iterations used
};

// Marginal likelihood of a model from its posterior sample. The kernel must
// be the same unnormalized log posterior (on the unconstrained scale,
// Jacobian included) that generated the draws; `log_kernel_at_draws` carries
// its values at the chain points so only the proposal draws cost kernel
// evaluations. Default method: iterative bridge sampling between the chain
// and a moment-matched Gaussian; fallback: importance sampling from a
// moment-matched multivariate t. Non-convergence throws (never silent).
ModelEvidence estimate_log_evidence(
    const std::vector<std::vector<double>>& draws,
    const std::vector<double>& log_kernel_at_draws, const LogKernel& kernel,
    const EvidenceConfig& config, const std::string& model_id);

struct ModelComparison {
  std::vector<ModelEvidence> entries;
  std::vector<double> prior_probs;
  std::vector<double> posterior_probs;
};

// P(M_i|y) = prior_i 10^{L_i - Lmax} / sum_k prior_k 10^{L_k - Lmax}.
ModelComparison posterior_model_probs(std::vector<ModelEvidence> evidence,
                                      std::vector<double> prior_probs);

}  // namespace skewgim
