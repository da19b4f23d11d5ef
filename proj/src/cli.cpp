#include "skewgim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "skewgim/csv.hpp"
#include "skewgim/garch.hpp"

namespace skewgim {

namespace fs = std::filesystem;

namespace {

void log_err(const std::string& msg) {
  std::fputs((msg + "\n").c_str(), stderr);
}

std::vector<MechKind> parse_model_list(const std::string& csv) {
  std::vector<MechKind> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(kind_from_name(tok.substr(b, e - b + 1)));
  }
  if (out.empty()) {
    throw std::invalid_argument("model list is empty");
  }
  return out;
}

std::vector<MechKind> all_models() {
  return {MechKind::Symmetric,   MechKind::InverseScale,
          MechKind::HiddenTruncation, MechKind::BetaOne,
          MechKind::BetaTwo,     MechKind::Bernstein2,
          MechKind::FerreiraSteel};
}

InitPolicy init_policy_from_json(const nlohmann::json& j) {
  InitPolicy p;
  const std::string kind = j.value("kind", "sample_variance");
  if (kind == "sample_variance") {
    p.kind = InitKind::SampleVariance;
  } else if (kind == "unconditional") {
    p.kind = InitKind::Unconditional;
  } else if (kind == "fixed") {
    p.kind = InitKind::Fixed;
    p.fixed_value = j.at("fixed_value").get<double>();
  } else {
    throw std::invalid_argument("unknown init policy: " + kind);
  }
  return p;
}

nlohmann::json init_policy_to_json(const InitPolicy& p) {
  switch (p.kind) {
    case InitKind::SampleVariance: return {{"kind", "sample_variance"}};
    case InitKind::Unconditional: return {{"kind", "unconditional"}};
    case InitKind::Fixed:
      return {{"kind", "fixed"}, {"fixed_value", p.fixed_value}};
  }
  return {};
}

std::string comment_config(const nlohmann::json& resolved) {
  return "config: " + resolved.dump();
}

}  // namespace

nlohmann::json RunConfig::resolved() const {
  nlohmann::json j;
  j["seed"] = seed;
  std::vector<std::string> names;
  for (MechKind k : models) names.emplace_back(kind_name(k));
  j["models"] = names;
  j["output_dir"] = output_dir;
  j["jobs"] = jobs;

  nlohmann::json data = nlohmann::json::object();
  if (!excess_returns_path.empty()) {
    data["excess_returns"] = excess_returns_path;
  }
  if (!prices_path.empty()) {
    data["prices"] = prices_path;
    data["price_schema"] = {{"date", price_schema.date_column},
                            {"value", price_schema.value_column}};
    data["riskfree"] = riskfree_path.empty() ? "none" : riskfree_path;
    if (!riskfree_path.empty()) {
      data["riskfree_schema"] = {{"date", riskfree_schema.date_column},
                                 {"value", riskfree_schema.value_column}};
    }
    data["day_count"] = day_count_name(day_count);
  }
  j["data"] = data;

  j["priors"] = prior_spec_to_json(priors);
  j["sampler"] = {{"iterations", sampler.iterations},
                  {"burn_in", sampler.burn_in},
                  {"thin", sampler.thin},
                  {"chains", sampler.chains},
                  {"adapt_window", sampler.adapt_window}};
  j["init_policy"] = init_policy_to_json(init_policy);
  j["evidence"] = {{"method", evidence.method},
                   {"proposal_draws", evidence.proposal_draws},
                   {"max_iterations", evidence.max_iterations}};
  if (evidence_file) j["evidence_file"] = *evidence_file;
  if (model_prior_probs) j["model_prior_probs"] = *model_prior_probs;
  if (has_simulate) {
    j["simulate"] = {{"mechanism", mechanism_to_json(sim_mechanism)},
                     {"params",
                      {{"alpha", sim_params.alpha},
                       {"alpha0", sim_params.alpha0},
                       {"alpha1", sim_params.alpha1},
                       {"beta1", sim_params.beta1},
                       {"nu", sim_params.nu}}},
                     {"n", sim_n},
                     {"init_policy", init_policy_to_json(sim_init)},
                     {"output", sim_output},
                     {"start_date", sim_start_date.to_string()}};
  }
  return j;
}

RunConfig parse_run_config(const nlohmann::json& file_config,
                           const CliOverrides& overrides) {
  RunConfig c;
  const nlohmann::json& j = file_config;

  bool seed_given = false;
  if (j.contains("seed")) {
    c.seed = j.at("seed").get<std::uint64_t>();
    seed_given = true;
  }
  if (overrides.seed) {
    c.seed = *overrides.seed;
    seed_given = true;
  }
  if (!seed_given) {
    throw std::invalid_argument(
        "seed must be given explicitly (config \"seed\" or --seed); "
        "wall-clock defaults are not used");
  }

  if (j.contains("models")) {
    c.models.clear();
    for (const auto& m : j.at("models")) {
      c.models.push_back(kind_from_name(m.get<std::string>()));
    }
  } else {
    c.models = all_models();
  }
  if (overrides.models) c.models = parse_model_list(*overrides.models);
  if (c.models.empty()) {
    throw std::invalid_argument("mechanism list must be non-empty");
  }

  c.output_dir = j.value("output_dir", std::string("out"));
  if (overrides.output_dir) c.output_dir = *overrides.output_dir;
  c.jobs = j.value("jobs", std::size_t{1});
  if (c.jobs == 0) c.jobs = 1;

  if (j.contains("data")) {
    const auto& d = j.at("data");
    c.excess_returns_path = d.value("excess_returns", std::string());
    c.prices_path = d.value("prices", std::string());
    if (d.contains("price_schema")) {
      c.price_schema.date_column =
          d.at("price_schema").value("date", "date");
      c.price_schema.value_column =
          d.at("price_schema").value("value", "close");
    }
    c.riskfree_path = d.value("riskfree", std::string());
    if (d.contains("riskfree_schema")) {
      c.riskfree_schema.date_column =
          d.at("riskfree_schema").value("date", "date");
      c.riskfree_schema.value_column =
          d.at("riskfree_schema").value("value", "rate");
    }
    if (d.contains("day_count")) {
      c.day_count = day_count_from_name(d.at("day_count").get<std::string>());
    }
  }
  if (overrides.riskfree) c.riskfree_path = *overrides.riskfree;
  if (c.riskfree_path == "none") c.riskfree_path.clear();
  if (overrides.day_count) {
    c.day_count = day_count_from_name(*overrides.day_count);
  }

  if (j.contains("priors")) c.priors = prior_spec_from_json(j.at("priors"));
  if (j.contains("sampler")) {
    const auto& s = j.at("sampler");
    c.sampler.iterations = s.value("iterations", c.sampler.iterations);
    c.sampler.burn_in = s.value("burn_in", c.sampler.burn_in);
    c.sampler.thin = s.value("thin", c.sampler.thin);
    c.sampler.chains = s.value("chains", c.sampler.chains);
    c.sampler.adapt_window = s.value("adapt_window", c.sampler.adapt_window);
  }
  if (c.sampler.iterations <= c.sampler.burn_in) {
    throw std::invalid_argument("sampler: iterations must exceed burn_in");
  }
  if (j.contains("init_policy")) {
    c.init_policy = init_policy_from_json(j.at("init_policy"));
  }
  if (j.contains("evidence")) {
    const auto& e = j.at("evidence");
    c.evidence.method = e.value("method", c.evidence.method);
    c.evidence.proposal_draws =
        e.value("proposal_draws", c.evidence.proposal_draws);
    c.evidence.max_iterations =
        e.value("max_iterations", c.evidence.max_iterations);
    c.evidence.importance_df =
        e.value("importance_df", c.evidence.importance_df);
  }
  if (j.contains("evidence_file")) {
    c.evidence_file = j.at("evidence_file").get<std::string>();
  }
  if (j.contains("model_prior_probs")) {
    c.model_prior_probs =
        j.at("model_prior_probs").get<std::vector<double>>();
    if (c.model_prior_probs->size() != c.models.size()) {
      throw std::invalid_argument(
          "model_prior_probs must match the model list length");
    }
  }

  if (j.contains("simulate")) {
    const auto& s = j.at("simulate");
    c.has_simulate = true;
    c.sim_mechanism = mechanism_from_json(s.at("mechanism"));
    const auto& p = s.at("params");
    c.sim_params.alpha = p.at("alpha").get<double>();
    c.sim_params.alpha0 = p.at("alpha0").get<double>();
    c.sim_params.alpha1 = p.at("alpha1").get<double>();
    c.sim_params.beta1 = p.at("beta1").get<double>();
    c.sim_params.nu = p.at("nu").get<double>();
    c.sim_n = s.at("n").get<std::size_t>();
    if (s.contains("init_policy")) {
      c.sim_init = init_policy_from_json(s.at("init_policy"));
    }
    c.sim_output = s.value("output", c.sim_output);
    if (s.contains("start_date")) {
      c.sim_start_date = Date::parse(s.at("start_date").get<std::string>());
    }
  }
  return c;
}

RunConfig load_run_config(const std::string& config_path,
                          const CliOverrides& overrides) {
  nlohmann::json j = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw std::invalid_argument("config file not found: " + config_path);
    }
    in >> j;
  }
  return parse_run_config(j, overrides);
}

ExcessReturnSeries resolve_data(const RunConfig& config) {
  if (!config.excess_returns_path.empty()) {
    return load_excess_returns_csv(config.excess_returns_path);
  }
  if (config.prices_path.empty()) {
    throw std::invalid_argument(
        "no data source: set data.excess_returns or data.prices");
  }
  const PriceSeries prices =
      load_price_series(config.prices_path, config.price_schema);
  if (config.riskfree_path.empty()) {
    return compute_excess_returns(prices, nullptr, config.day_count);
  }
  const RiskFreeSeries rf =
      load_riskfree_series(config.riskfree_path, config.riskfree_schema);
  ExcessReturnSeries y =
      compute_excess_returns(prices, &rf, config.day_count);
  y.meta.price_source = config.prices_path;
  y.meta.riskfree_source = config.riskfree_path;
  return y;
}

namespace {

struct ModelOutcome {
  MechKind kind;
  bool ok = false;
  std::string error;
  ModelFit fit;
  ModelEvidence evidence;
  bool has_evidence = false;
};

// fit + (optionally) evidence for every requested model, `jobs` at a time;
// per-model seeds derive from the mechanism name so results do not depend
// on list order or scheduling
std::vector<ModelOutcome> run_models(const RunConfig& config,
                                     const ExcessReturnSeries& y,
                                     bool with_evidence,
                                     bool reuse_existing_chains) {
  std::vector<ModelOutcome> out(config.models.size());
  const auto worker = [&](std::size_t idx) {
    ModelOutcome& o = out[idx];
    o.kind = config.models[idx];
    const std::string id = kind_name(o.kind);
    try {
      const std::uint64_t mseed = model_seed_for(config.seed, o.kind);
      const fs::path chain_path =
          fs::path(config.output_dir) / ("chain_" + id + ".csv");
      bool loaded = false;
      if (reuse_existing_chains && fs::exists(chain_path)) {
        log_err("[" + id + "] loading existing chain " + chain_path.string());
        o.fit = load_chain_csv(chain_path.string(), o.kind);
        loaded = true;
      }
      if (!loaded) {
        log_err("[" + id + "] sampling posterior (" +
                std::to_string(config.sampler.iterations) + " iterations x " +
                std::to_string(config.sampler.chains) + " chain(s))");
        o.fit = fit_model(y.values, o.kind, config.priors, config.sampler,
                          config.init_policy, mseed);
      }
      if (with_evidence) {
        log_err("[" + id + "] estimating marginal likelihood (" +
                config.evidence.method + ")");
        o.evidence = model_evidence(y.values, o.fit, config.priors,
                                    config.init_policy, config.evidence,
                                    mseed);
        o.has_evidence = true;
      }
      o.ok = true;
    } catch (const std::exception& e) {
      o.ok = false;
      o.error = e.what();
    }
  };

  if (config.jobs <= 1) {
    for (std::size_t i = 0; i < out.size(); ++i) worker(i);
    return out;
  }
  std::size_t next = 0;
  while (next < out.size()) {
    const std::size_t batch = std::min(config.jobs, out.size() - next);
    std::vector<std::future<void>> futs;
    futs.reserve(batch);
    for (std::size_t k = 0; k < batch; ++k) {
      futs.push_back(
          std::async(std::launch::async, worker, next + k));
    }
    for (auto& f : futs) f.get();
    next += batch;
  }
  return out;
}

int report_failures(const std::vector<ModelOutcome>& outcomes,
                    const char* stage) {
  int failures = 0;
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++failures;
      log_err(std::string("FAILED [") + kind_name(o.kind) + "] " + stage +
              ": " + o.error);
    }
  }
  return failures;
}

}  // namespace

int cmd_fit(const RunConfig& config) {
  const ExcessReturnSeries y = resolve_data(config);
  log_err("fit: " + std::to_string(y.values.size()) + " observations, " +
          std::to_string(config.models.size()) + " model(s)");
  fs::create_directories(config.output_dir);
  const nlohmann::json resolved = config.resolved();

  auto outcomes = run_models(config, y, /*with_evidence=*/false,
                             /*reuse_existing_chains=*/false);
  for (const auto& o : outcomes) {
    if (!o.ok) continue;
    const std::string id = kind_name(o.kind);
    const fs::path dir(config.output_dir);
    write_chain_csv((dir / ("chain_" + id + ".csv")).string(), o.fit,
                    {comment_config(resolved)});
    write_json_file((dir / ("summary_" + id + ".json")).string(),
                    summary_to_json(o.fit, resolved));
    log_err("[" + id + "] wrote chain and summary (acceptance " +
            format_double(o.fit.chain.acceptance_rate) + ")");
  }
  return report_failures(outcomes, "fit") == 0 ? 0 : 1;
}

int cmd_compare(const RunConfig& config) {
  fs::create_directories(config.output_dir);
  const nlohmann::json resolved = config.resolved();

  std::vector<ModelEvidence> evidence;
  std::vector<double> prob_positive;
  std::vector<ModelOutcome> outcomes;
  int failures = 0;

  if (config.evidence_file) {
    // injected evidence fixture: {"log10_marginal": {model: value},
    //                             "prob_positive": {model: value}?}
    std::ifstream in(*config.evidence_file);
    if (!in) {
      log_err("evidence file not found: " + *config.evidence_file);
      return 2;
    }
    nlohmann::json fix;
    in >> fix;
    const auto& lm = fix.at("log10_marginal");
    for (MechKind kind : config.models) {
      const std::string id = kind_name(kind);
      if (!lm.contains(id)) {
        log_err("FAILED [" + id + "] compare: no injected evidence value");
        ++failures;
        continue;
      }
      ModelEvidence ev;
      ev.model_id = id;
      ev.log10_marginal = lm.at(id).get<double>();
      ev.estimator = "injected";
      ev.mc_se = 0.0;
      evidence.push_back(ev);
      double pp = std::numeric_limits<double>::quiet_NaN();
      if (fix.contains("prob_positive") &&
          fix.at("prob_positive").contains(id)) {
        pp = fix.at("prob_positive").at(id).get<double>();
      }
      prob_positive.push_back(pp);
    }
  } else {
    const ExcessReturnSeries y = resolve_data(config);
    log_err("compare: " + std::to_string(y.values.size()) +
            " observations, " + std::to_string(config.models.size()) +
            " model(s)");
    outcomes = run_models(config, y, /*with_evidence=*/true,
                          /*reuse_existing_chains=*/true);
    failures = report_failures(outcomes, "compare");
    for (const auto& o : outcomes) {
      if (!o.ok) continue;
      const std::string id = kind_name(o.kind);
      const fs::path dir(config.output_dir);
      const fs::path chain_path = dir / ("chain_" + id + ".csv");
      if (!fs::exists(chain_path)) {
        write_chain_csv(chain_path.string(), o.fit,
                        {comment_config(resolved)});
        write_json_file((dir / ("summary_" + id + ".json")).string(),
                        summary_to_json(o.fit, resolved));
      }
      evidence.push_back(o.evidence);
      prob_positive.push_back(o.fit.risk.prob_positive);
    }
  }

  if (evidence.empty()) {
    log_err("compare: no model produced evidence; nothing to report");
    return 1;
  }
  std::vector<double> priors;
  if (config.model_prior_probs) {
    // align with surviving models
    for (std::size_t i = 0; i < config.models.size(); ++i) {
      const std::string id = kind_name(config.models[i]);
      for (const auto& e : evidence) {
        if (e.model_id == id) {
          priors.push_back((*config.model_prior_probs)[i]);
          break;
        }
      }
    }
    double s = 0.0;
    for (double p : priors) s += p;
    for (auto& p : priors) p /= s;
  } else {
    priors.assign(evidence.size(), 1.0 / double(evidence.size()));
  }

  const ComparisonReport rep =
      make_comparison_report(evidence, priors, prob_positive);
  const fs::path dir(config.output_dir);
  write_comparison_csv((dir / "comparison.csv").string(), rep,
                       {comment_config(resolved)});
  nlohmann::json jrep = comparison_to_json(rep);
  jrep["config"] = resolved;
  write_json_file((dir / "comparison.json").string(), jrep);
  log_err("compare: wrote comparison.csv and comparison.json");
  return failures == 0 ? 0 : 1;
}

int cmd_simulate(const RunConfig& config) {
  if (!config.has_simulate) {
    log_err("simulate: config has no \"simulate\" block");
    return 2;
  }
  config.sim_params.validate(config.priors.require_stationarity);
  config.sim_mechanism.validate();
  fs::create_directories(config.output_dir);

  const std::vector<double> y =
      simulate(config.sim_params, config.sim_mechanism, config.sim_n,
               config.seed, config.sim_init);
  ExcessReturnSeries series;
  series.values = y;
  series.dates.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    series.dates.push_back(
        Date{config.sim_start_date.serial + static_cast<int>(i)});
  }
  series.meta.day_count = "none";
  const fs::path out = fs::path(config.output_dir) / config.sim_output;
  write_excess_returns_csv(out.string(), series,
                           {comment_config(config.resolved())});
  log_err("simulate: wrote " + out.string() + " (" +
          std::to_string(y.size()) + " observations)");
  return 0;
}

int cmd_convert(const RunConfig& config) {
  if (config.prices_path.empty()) {
    log_err("convert: config has no data.prices path");
    return 2;
  }
  fs::create_directories(config.output_dir);
  const PriceSeries prices =
      load_price_series(config.prices_path, config.price_schema);
  ExcessReturnSeries y;
  if (config.riskfree_path.empty()) {
    y = compute_excess_returns(prices, nullptr, config.day_count);
  } else {
    const RiskFreeSeries rf =
        load_riskfree_series(config.riskfree_path, config.riskfree_schema);
    y = compute_excess_returns(prices, &rf, config.day_count);
  }
  const fs::path out = fs::path(config.output_dir) / "excess_returns.csv";
  write_excess_returns_csv(out.string(), y,
                           {comment_config(config.resolved())});
  log_err("convert: wrote " + out.string() + " (" +
          std::to_string(y.values.size()) + " returns)");
  return 0;
}

}  // namespace skewgim
