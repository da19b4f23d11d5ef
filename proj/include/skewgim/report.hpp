#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "skewgim/evidence.hpp"

namespace skewgim {

// Comparison report: one column per model; rows for decimal-log evidence,
// posterior model probabilities over all models, the same probabilities
// renormalized over the skewed models only, and P(alpha + E(z) > 0 | M, y).
struct ComparisonReport {
  std::vector<std::string> models;
  std::vector<double> log10_marginal;
  std::vector<double> mc_se;
  std::vector<double> posterior_prob;
  std::vector<double> posterior_prob_skewed_only;  // NaN for the symmetric row
  std::vector<double> prob_positive;               // NaN when not available
};

ComparisonReport make_comparison_report(
    const std::vector<ModelEvidence>& evidence,
    const std::vector<double>& prior_probs,
    const std::vector<double>& prob_positive);

void write_comparison_csv(const std::string& path,
                          const ComparisonReport& report,
                          const std::vector<std::string>& comments = {});

nlohmann::json comparison_to_json(const ComparisonReport& report);

}  // namespace skewgim
