#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewgim/evidence.hpp"
#include "skewgim/inference.hpp"
#include "skewgim/report.hpp"
#include "skewgim/series.hpp"

namespace skewgim {

nlohmann::json mechanism_to_json(const SkewMechanism& mech);
SkewMechanism mechanism_from_json(const nlohmann::json& j);

nlohmann::json prior_spec_to_json(const PriorSpec& prior);
PriorSpec prior_spec_from_json(const nlohmann::json& j);

struct SamplerSettings {
  std::size_t iterations = 12000;
  std::size_t burn_in = 4000;
  std::size_t thin = 1;
  std::size_t chains = 1;
  std::size_t adapt_window = 50;
};

// One fitted model: chains run with derived seeds and pooled post burn-in.
struct ModelFit {
  MechKind kind = MechKind::Symmetric;
  PosteriorChain chain;        // pooled kept draws
  std::vector<int> chain_ids;  // chain index per kept draw
  RiskPremiumSummary risk;
};

ModelFit fit_model(std::span<const double> y, MechKind kind,
                   const PriorSpec& prior, const SamplerSettings& settings,
                   const InitPolicy& init_policy, std::uint64_t model_seed);

// seed for a model derived from the run seed and the mechanism name, so a
// model's result does not depend on its position in the requested list
std::uint64_t model_seed_for(std::uint64_t run_seed, MechKind kind);

ModelEvidence model_evidence(std::span<const double> y, const ModelFit& fit,
                             const PriorSpec& prior,
                             const InitPolicy& init_policy,
                             EvidenceConfig config, std::uint64_t model_seed);

// chain_<id>.csv round trip; natural-scale draws with shortest round-trip
// decimal rendering, so reloaded chains are bit-identical
void write_chain_csv(const std::string& path, const ModelFit& fit,
                     const std::vector<std::string>& comments);
ModelFit load_chain_csv(const std::string& path, MechKind kind);

nlohmann::json summary_to_json(const ModelFit& fit,
                               const nlohmann::json& resolved_config);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace skewgim
