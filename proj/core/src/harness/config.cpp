#include "dplr/harness/config.hpp"

#include <json.hpp>

#include "dplr/error.hpp"

namespace dplr::harness {

using nlohmann::json;

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::Utility: return "utility";
    case ExperimentKind::Gaps: return "gaps";
    case ExperimentKind::Dbm: return "dbm";
    case ExperimentKind::Rigidity: return "rigidity";
    case ExperimentKind::Verify: return "verify";
  }
  return "unknown";
}

std::string_view to_string(MechanismKind kind) noexcept {
  return kind == MechanismKind::Complex ? "complex" : "real";
}

std::string_view to_string(DbmMode mode) noexcept {
  switch (mode) {
    case DbmMode::Matrix: return "matrix";
    case DbmMode::Sde: return "sde";
    case DbmMode::Flow: return "flow";
    case DbmMode::Coupled: return "coupled";
  }
  return "unknown";
}

DbmMode parse_dbm_mode(std::string_view name) {
  if (name == "matrix") return DbmMode::Matrix;
  if (name == "sde") return DbmMode::Sde;
  if (name == "flow") return DbmMode::Flow;
  if (name == "coupled") return DbmMode::Coupled;
  fail(ErrorCode::InvalidInput, "unknown dbm mode '" + std::string(name) + "'");
}

namespace {

ExperimentKind parse_kind(const std::string& s) {
  for (auto k : {ExperimentKind::Utility, ExperimentKind::Gaps, ExperimentKind::Dbm,
                 ExperimentKind::Rigidity, ExperimentKind::Verify})
    if (to_string(k) == s) return k;
  fail(ErrorCode::InvalidInput, "unknown experiment kind '" + s + "'");
}

MechanismKind parse_mechanism(const std::string& s) {
  if (s == "complex") return MechanismKind::Complex;
  if (s == "real") return MechanismKind::Real;
  fail(ErrorCode::InvalidInput, "unknown mechanism '" + s + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  require(trials >= 1, ErrorCode::InvalidInput, "trials must be >= 1");
  require(d >= 1, ErrorCode::InvalidInput, "d must be >= 1");
  if (kind == ExperimentKind::Utility) {
    const bool budget = epsilon.has_value() || delta.has_value();
    require(budget != T_override.has_value(), ErrorCode::InvalidInput,
            "supply exactly one of (epsilon, delta) or T");
    if (budget)
      require(epsilon.has_value() && delta.has_value(), ErrorCode::InvalidInput,
              "epsilon and delta must be given together");
    require(k >= 1 && k <= d, ErrorCode::InvalidRank, "k must satisfy 1 <= k <= d");
  }
}

PrivacyParams ExperimentConfig::privacy() const {
  if (T_override) return PrivacyParams::from_noise_time(*T_override);
  require(epsilon.has_value() && delta.has_value(), ErrorCode::InvalidInput,
          "privacy budget missing");
  return privacy_time(*epsilon, *delta);
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("kind"), ErrorCode::InvalidInput,
          "config must be an object with a \"kind\" key");
  ExperimentConfig c;
  try {
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.d = j.value("d", c.d);
    c.k = j.value("k", c.k);
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("T")) c.T_override = j.at("T").get<double>();
    if (j.contains("ensemble")) c.ensemble = parse_ensemble(j.at("ensemble").get<std::string>());
    if (j.contains("mechanism")) c.mechanism = parse_mechanism(j.at("mechanism").get<std::string>());
    if (j.contains("spectrum")) {
      const json& s = j.at("spectrum");
      c.spectrum.kind = parse_family(s.value("family", std::string("two_block")));
      c.spectrum.c = s.value("c", c.spectrum.c);
      c.spectrum.scale = s.value("scale", c.spectrum.scale);
      if (s.contains("values")) c.spectrum.values = s.at("values").get<std::vector<double>>();
    }
    if (j.contains("basis")) {
      const auto b = j.at("basis").get<std::string>();
      require(b == "random" || b == "diagonal", ErrorCode::InvalidInput,
              "basis must be random or diagonal");
      c.random_basis = b == "random";
    }
    c.enforce_gap = j.value("enforce_gap", c.enforce_gap);
    if (j.contains("indices")) c.gap_indices = j.at("indices").get<std::vector<std::size_t>>();
    c.L = j.value("L", c.L);
    if (j.contains("rigidity_scale")) {
      const auto s = j.at("rigidity_scale").get<std::string>();
      require(s == "unit" || s == "raw", ErrorCode::InvalidInput,
              "rigidity_scale must be unit or raw");
      c.rigidity_unit_scale = s == "unit";
    }
    if (j.contains("mode")) c.dbm_mode = parse_dbm_mode(j.at("mode").get<std::string>());
    c.t_end = j.value("t_end", c.t_end);
    c.steps = j.value("steps", c.steps);
    if (j.contains("initial")) c.initial = j.at("initial").get<std::vector<double>>();
    if (j.contains("xi0")) c.xi0 = j.at("xi0").get<std::vector<double>>();
    c.diagonal_variance = j.value("diagonal_variance", c.diagonal_variance);
    if (j.contains("inject_fault")) c.inject_fault = j.at("inject_fault").get<std::string>();
    c.output = j.value("output", c.output);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("bad config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::string to_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["d"] = c.d;
  j["k"] = c.k;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  if (c.epsilon) j["epsilon"] = *c.epsilon;
  if (c.delta) j["delta"] = *c.delta;
  if (c.T_override) j["T"] = *c.T_override;
  j["ensemble"] = to_string(c.ensemble);
  switch (c.kind) {
    case ExperimentKind::Utility:
      j["mechanism"] = to_string(c.mechanism);
      j["spectrum"] = {{"family", to_string(c.spectrum.kind)},
                       {"c", c.spectrum.c},
                       {"scale", c.spectrum.scale},
                       {"values", c.spectrum.values}};
      j["basis"] = c.random_basis ? "random" : "diagonal";
      j["enforce_gap"] = c.enforce_gap;
      break;
    case ExperimentKind::Gaps:
      j["indices"] = c.gap_indices;
      break;
    case ExperimentKind::Rigidity:
      j["L"] = c.L;
      j["rigidity_scale"] = c.rigidity_unit_scale ? "unit" : "raw";
      break;
    case ExperimentKind::Dbm:
      j["mode"] = to_string(c.dbm_mode);
      j["t_end"] = c.t_end;
      j["steps"] = c.steps;
      j["initial"] = c.initial;
      j["xi0"] = c.xi0;
      j["diagonal_variance"] = c.diagonal_variance;
      break;
    case ExperimentKind::Verify:
      if (c.inject_fault) j["inject_fault"] = *c.inject_fault;
      break;
  }
  if (!c.output.empty()) j["output"] = c.output;
  return j.dump();
}

}  // namespace dplr::harness
