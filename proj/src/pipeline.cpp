#include "skewgim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "skewgim/csv.hpp"

namespace skewgim {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScalarPrior scalar_prior_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "normal") {
    return NormalPrior{j.at("mean").get<double>(), j.at("sd").get<double>()};
  }
  if (type == "lognormal") {
    return LogNormalPrior{j.at("mu").get<double>(),
                          j.at("sigma").get<double>()};
  }
  if (type == "exponential") {
    return ExponentialPrior{j.at("mean").get<double>()};
  }
  if (type == "uniform") {
    return UniformPrior{j.at("lo").get<double>(), j.at("hi").get<double>()};
  }
  throw std::invalid_argument("unknown prior type: " + type);
}

nlohmann::json scalar_prior_to_json(const ScalarPrior& p) {
  nlohmann::json j;
  if (const auto* n = std::get_if<NormalPrior>(&p)) {
    j = {{"type", "normal"}, {"mean", n->mean}, {"sd", n->sd}};
  } else if (const auto* l = std::get_if<LogNormalPrior>(&p)) {
    j = {{"type", "lognormal"}, {"mu", l->mu}, {"sigma", l->sigma}};
  } else if (const auto* e = std::get_if<ExponentialPrior>(&p)) {
    j = {{"type", "exponential"}, {"mean", e->mean}};
  } else if (const auto* u = std::get_if<UniformPrior>(&p)) {
    j = {{"type", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
  }
  return j;
}

}  // namespace

nlohmann::json mechanism_to_json(const SkewMechanism& mech) {
  nlohmann::json eta = nlohmann::json::object();
  const auto names = eta_names(mech.kind);
  for (std::size_t i = 0; i < names.size(); ++i) {
    eta[names[i]] = mech.eta[i];
  }
  return {{"kind", kind_name(mech.kind)}, {"eta", eta}};
}

SkewMechanism mechanism_from_json(const nlohmann::json& j) {
  SkewMechanism mech;
  mech.kind = kind_from_name(j.at("kind").get<std::string>());
  const auto names = eta_names(mech.kind);
  const nlohmann::json eta =
      j.contains("eta") ? j.at("eta") : nlohmann::json::object();
  for (const auto& name : names) {
    if (!eta.contains(name)) {
      throw std::invalid_argument(std::string("mechanism ") +
                                  kind_name(mech.kind) +
                                  ": missing eta entry '" + name + "'");
    }
    mech.eta.push_back(eta.at(name).get<double>());
  }
  mech.validate();
  return mech;
}

nlohmann::json prior_spec_to_json(const PriorSpec& p) {
  nlohmann::json j;
  j["alpha"] = scalar_prior_to_json(p.alpha);
  j["alpha0"] = scalar_prior_to_json(p.alpha0);
  j["alpha1"] = scalar_prior_to_json(p.alpha1);
  j["beta1"] = scalar_prior_to_json(p.beta1);
  j["nu_minus_1"] = scalar_prior_to_json(p.nu_minus_1);
  j["inverse_scale_gamma"] = scalar_prior_to_json(p.inverse_scale_gamma);
  j["hidden_truncation_shape"] =
      scalar_prior_to_json(p.hidden_truncation_shape);
  j["beta_one_gamma"] = scalar_prior_to_json(p.beta_one_gamma);
  j["beta_two_a"] = scalar_prior_to_json(p.beta_two_a);
  j["beta_two_b"] = scalar_prior_to_json(p.beta_two_b);
  j["ferreira_steel_gamma"] = scalar_prior_to_json(p.ferreira_steel_gamma);
  j["bernstein_alpha"] = p.bernstein_alpha;
  j["require_stationarity"] = p.require_stationarity;
  return j;
}

PriorSpec prior_spec_from_json(const nlohmann::json& j) {
  PriorSpec p;
  auto maybe = [&](const char* key, ScalarPrior& slot) {
    if (j.contains(key)) slot = scalar_prior_from_json(j.at(key));
  };
  maybe("alpha", p.alpha);
  maybe("alpha0", p.alpha0);
  maybe("alpha1", p.alpha1);
  maybe("beta1", p.beta1);
  maybe("nu_minus_1", p.nu_minus_1);
  maybe("inverse_scale_gamma", p.inverse_scale_gamma);
  maybe("hidden_truncation_shape", p.hidden_truncation_shape);
  maybe("beta_one_gamma", p.beta_one_gamma);
  maybe("beta_two_a", p.beta_two_a);
  maybe("beta_two_b", p.beta_two_b);
  maybe("ferreira_steel_gamma", p.ferreira_steel_gamma);
  if (j.contains("bernstein_alpha")) {
    const auto v = j.at("bernstein_alpha").get<std::vector<double>>();
    if (v.size() != 3) {
      throw std::invalid_argument("bernstein_alpha needs 3 entries");
    }
    p.bernstein_alpha = {v[0], v[1], v[2]};
  }
  if (j.contains("require_stationarity")) {
    p.require_stationarity = j.at("require_stationarity").get<bool>();
  }
  return p;
}

std::uint64_t model_seed_for(std::uint64_t run_seed, MechKind kind) {
  return Rng::derive(run_seed, fnv1a64(kind_name(kind)));
}

ModelFit fit_model(std::span<const double> y, MechKind kind,
                   const PriorSpec& prior, const SamplerSettings& settings,
                   const InitPolicy& init_policy, std::uint64_t model_seed) {
  if (settings.chains == 0) {
    throw std::invalid_argument("fit_model: chains must be >= 1");
  }
  SkewMechanism mech = SkewMechanism::symmetry_restriction(kind);

  ModelFit fit;
  fit.kind = kind;
  double acc = 0.0;
  for (std::size_t c = 0; c < settings.chains; ++c) {
    SamplerConfig sc;
    sc.seed = Rng::derive(model_seed, c);
    sc.iterations = settings.iterations;
    sc.burn_in = settings.burn_in;
    sc.thin = settings.thin;
    sc.adapt_window = settings.adapt_window;
    sc.init_policy = init_policy;
    PosteriorChain one = rwm_sample(y, mech, prior, sc);
    acc += one.acceptance_rate;
    if (c == 0) {
      fit.chain = std::move(one);
      fit.chain_ids.assign(fit.chain.natural.size(), 0);
    } else {
      auto append = [](auto& dst, auto& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()),
                   std::make_move_iterator(src.end()));
      };
      append(fit.chain.natural, one.natural);
      append(fit.chain.unconstrained, one.unconstrained);
      append(fit.chain.log_kernel, one.log_kernel);
      append(fit.chain.mean_z, one.mean_z);
      fit.chain_ids.resize(fit.chain.natural.size(), static_cast<int>(c));
    }
  }
  fit.chain.acceptance_rate = acc / static_cast<double>(settings.chains);
  fit.chain.seed = model_seed;
  fit.risk = risk_premium_summary(fit.chain);
  return fit;
}

ModelEvidence model_evidence(std::span<const double> y, const ModelFit& fit,
                             const PriorSpec& prior,
                             const InitPolicy& init_policy,
                             EvidenceConfig config, std::uint64_t model_seed) {
  GarchPosterior post(std::vector<double>(y.begin(), y.end()), fit.kind,
                      prior, init_policy);
  config.seed = Rng::derive(model_seed, 0xE5ULL);
  return estimate_log_evidence(fit.chain.unconstrained, fit.chain.log_kernel,
                               post.as_log_kernel(), config,
                               kind_name(fit.kind));
}

void write_chain_csv(const std::string& path, const ModelFit& fit,
                     const std::vector<std::string>& comments) {
  std::vector<std::string> header{"chain"};
  for (const auto& n : fit.chain.names) header.push_back(n);
  header.push_back("ez");
  header.push_back("log_kernel");
  std::vector<std::vector<std::string>> rows;
  rows.reserve(fit.chain.natural.size());
  for (std::size_t i = 0; i < fit.chain.natural.size(); ++i) {
    std::vector<std::string> r;
    r.push_back(std::to_string(fit.chain_ids[i]));
    for (double v : fit.chain.natural[i]) r.push_back(format_double(v));
    r.push_back(format_double(fit.chain.mean_z[i]));
    r.push_back(format_double(fit.chain.log_kernel[i]));
    rows.push_back(std::move(r));
  }
  write_csv(path, header, rows, comments);
}

ModelFit load_chain_csv(const std::string& path, MechKind kind) {
  const CsvTable t = read_csv(path);
  ParamTransform tf(kind);
  const auto names = tf.names();

  ModelFit fit;
  fit.kind = kind;
  fit.chain.kind = kind;
  fit.chain.names = names;

  const std::size_t ci_chain = t.column("chain");
  std::vector<std::size_t> ci(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) ci[k] = t.column(names[k]);
  const std::size_t ci_ez = t.column("ez");
  const std::size_t ci_lk = t.column("log_kernel");

  for (const auto& row : t.rows) {
    fit.chain_ids.push_back(std::stoi(row.at(ci_chain)));
    std::vector<double> nat(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
      nat[k] = std::stod(row.at(ci[k]));
    }
    fit.chain.unconstrained.push_back(tf.to_unconstrained(nat));
    fit.chain.natural.push_back(std::move(nat));
    fit.chain.mean_z.push_back(std::stod(row.at(ci_ez)));
    fit.chain.log_kernel.push_back(std::stod(row.at(ci_lk)));
  }
  if (fit.chain.natural.empty()) {
    throw std::runtime_error("chain file has no draws: " + path);
  }
  fit.risk = risk_premium_summary(fit.chain);
  return fit;
}

nlohmann::json summary_to_json(const ModelFit& fit,
                               const nlohmann::json& resolved_config) {
  nlohmann::json j;
  j["model"] = kind_name(fit.kind);
  j["seed"] = fit.chain.seed;
  j["iterations"] = fit.chain.iterations;
  j["burn_in"] = fit.chain.burn_in;
  j["thin"] = fit.chain.thin;
  j["kept_draws"] = fit.chain.natural.size();
  j["acceptance_rate"] = fit.chain.acceptance_rate;

  nlohmann::json post = nlohmann::json::object();
  const std::size_t n = fit.chain.natural.size();
  for (std::size_t k = 0; k < fit.chain.names.size(); ++k) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fit.chain.natural[i][k];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd =
        n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    std::sort(v.begin(), v.end());
    auto q = [&](double p) {
      const double pos = p * static_cast<double>(n - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, n - 1);
      return v[lo] * (1.0 - (pos - lo)) + v[hi] * (pos - lo);
    };
    post[fit.chain.names[k]] = {{"mean", mean}, {"sd", sd},
                                {"q05", q(0.05)}, {"q25", q(0.25)},
                                {"q50", q(0.50)}, {"q75", q(0.75)},
                                {"q95", q(0.95)}};
  }
  j["posterior"] = post;
  j["risk_premium"] = {
      {"prob_positive", fit.risk.prob_positive}, {"mean", fit.risk.mean},
      {"sd", fit.risk.sd},                       {"q05", fit.risk.q05},
      {"q25", fit.risk.q25},                     {"q50", fit.risk.q50},
      {"q75", fit.risk.q75},                     {"q95", fit.risk.q95}};
  j["config"] = resolved_config;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace skewgim
