#include "skewgim/report.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewgim/csv.hpp"
#include "skewgim/skew.hpp"

namespace skewgim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string cell(double v) { return std::isnan(v) ? "" : format_double(v); }

}  // namespace

ComparisonReport make_comparison_report(
    const std::vector<ModelEvidence>& evidence,
    const std::vector<double>& prior_probs,
    const std::vector<double>& prob_positive) {
  if (prob_positive.size() != evidence.size()) {
    throw std::invalid_argument("comparison report: prob_positive misaligned");
  }
  const ModelComparison full = posterior_model_probs(evidence, prior_probs);

  ComparisonReport rep;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    rep.models.push_back(evidence[i].model_id);
    rep.log10_marginal.push_back(evidence[i].log10_marginal);
    rep.mc_se.push_back(evidence[i].mc_se);
    rep.posterior_prob.push_back(full.posterior_probs[i]);
    rep.prob_positive.push_back(prob_positive[i]);
  }

  // renormalize over the skewed specifications only
  rep.posterior_prob_skewed_only.assign(evidence.size(), kNaN);
  std::vector<ModelEvidence> skewed;
  std::vector<double> skewed_priors;
  std::vector<std::size_t> index;
  const std::string symmetric_id = kind_name(MechKind::Symmetric);
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    if (evidence[i].model_id == symmetric_id) continue;
    skewed.push_back(evidence[i]);
    skewed_priors.push_back(full.prior_probs[i]);
    index.push_back(i);
  }
  if (!skewed.empty()) {
    double s = 0.0;
    for (double p : skewed_priors) s += p;
    if (s > 0.0) {
      for (auto& p : skewed_priors) p /= s;
      const ModelComparison part =
          posterior_model_probs(std::move(skewed), std::move(skewed_priors));
      for (std::size_t k = 0; k < index.size(); ++k) {
        rep.posterior_prob_skewed_only[index[k]] = part.posterior_probs[k];
      }
    }
  }
  return rep;
}

void write_comparison_csv(const std::string& path,
                          const ComparisonReport& report,
                          const std::vector<std::string>& comments) {
  std::vector<std::string> header{"row"};
  for (const auto& m : report.models) header.push_back(m);
  auto row = [&](const std::string& name, const std::vector<double>& v) {
    std::vector<std::string> r{name};
    for (double x : v) r.push_back(cell(x));
    return r;
  };
  write_csv(path, header,
            {row("log10_marginal", report.log10_marginal),
             row("mc_se", report.mc_se),
             row("posterior_prob", report.posterior_prob),
             row("posterior_prob_skewed_only",
                 report.posterior_prob_skewed_only),
             row("prob_positive", report.prob_positive)},
            comments);
}

nlohmann::json comparison_to_json(const ComparisonReport& report) {
  nlohmann::json j;
  j["models"] = report.models;
  auto fill = [&](const char* key, const std::vector<double>& v) {
    nlohmann::json o = nlohmann::json::object();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::isnan(v[i])) {
        o[report.models[i]] = nullptr;
      } else {
        o[report.models[i]] = v[i];
      }
    }
    j[key] = o;
  };
  fill("log10_marginal", report.log10_marginal);
  fill("mc_se", report.mc_se);
  fill("posterior_prob", report.posterior_prob);
  fill("posterior_prob_skewed_only", report.posterior_prob_skewed_only);
  fill("prob_positive", report.prob_positive);
  return j;
}

}  // namespace skewgim
