#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skewgim/pipeline.hpp"

namespace skewgim {

// Command-line overrides; flags win over config-file values.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> models;      // comma-separated kind names
  std::optional<std::string> output_dir;
  std::optional<std::string> riskfree;    // path or "none"
  std::optional<std::string> day_count;   // act360 | act365
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::vector<MechKind> models;
  std::string output_dir = "out";
  std::size_t jobs = 1;

  // data sources: either a ready excess-return CSV, or prices (+ optional
  // risk-free rates) to convert
  std::string excess_returns_path;
  std::string prices_path;
  ColumnSchema price_schema{"date", "close"};
  std::string riskfree_path;  // empty or "none" -> r* = 0
  ColumnSchema riskfree_schema{"date", "rate"};
  DayCount day_count = DayCount::Act365;

  PriorSpec priors;
  SamplerSettings sampler;
  InitPolicy init_policy;
  EvidenceConfig evidence;
  std::optional<std::string> evidence_file;
  std::optional<std::vector<double>> model_prior_probs;  // default: equal

  // simulate block
  SkewMechanism sim_mechanism = SkewMechanism::symmetric();
  GarchParams sim_params;
  std::size_t sim_n = 1000;
  InitPolicy sim_init = InitPolicy::unconditional();
  std::string sim_output = "simulated.csv";
  Date sim_start_date = Date::parse("2000-01-03");
  bool has_simulate = false;

  // canonical echo embedded into every artifact
  nlohmann::json resolved() const;
};

// Parses config JSON + overrides. Throws std::invalid_argument on bad
// values; the seed must be provided explicitly (config or flag).
RunConfig parse_run_config(const nlohmann::json& file_config,
                           const CliOverrides& overrides);
RunConfig load_run_config(const std::string& config_path,
                          const CliOverrides& overrides);

// Loads (or derives) the excess-return series named by the config.
ExcessReturnSeries resolve_data(const RunConfig& config);

// Subcommand bodies; progress goes to stderr, artifacts to output_dir.
// Exit code 0 only when every requested model completed.
int cmd_fit(const RunConfig& config);
int cmd_compare(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_convert(const RunConfig& config);

}  // namespace skewgim
