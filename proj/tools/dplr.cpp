#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dplr/bounds.hpp"
#include "dplr/eigen.hpp"
#include "dplr/error.hpp"
#include "dplr/harness/campaigns.hpp"
#include "dplr/harness/config.hpp"
#include "dplr/harness/report.hpp"
#include "dplr/harness/verify.hpp"
#include "dplr/matrix_io.hpp"
#include "dplr/mechanism.hpp"
#include "dplr/parallel.hpp"
#include "dplr/rng.hpp"
#include "dplr/version.hpp"

namespace {

using namespace dplr;
using namespace dplr::harness;

constexpr std::uint64_t kMechanismStream = 5;

void emit(const CsvReport& report, const std::string& out) {
  if (out.empty() || out == "-")
    report.write(std::cout);
  else
    report.write(std::filesystem::path(out));
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) fail(ErrorCode::InvalidInput, "cannot write " + out);
  f << text << '\n';
}

PrivacyParams privacy_from(double eps, double delta, double T) {
  const bool budget = eps > 0.0 || delta > 0.0;
  if (budget == (T >= 0.0))
    fail(ErrorCode::InvalidInput, "supply exactly one of --epsilon/--delta or --T");
  return budget ? privacy_time(eps, delta) : PrivacyParams::from_noise_time(T);
}

struct MechanismArgs {
  std::string input;
  std::size_t k = 1;
  double epsilon = 0.0, delta = 0.0, T = -1.0;
  std::string ensemble = "gue";
  std::size_t trials = 1;
  bool psd_warning_only = false;
  std::string out;
};

int run_mechanism(const MechanismArgs& a, std::uint64_t seed) {
  const HermitianMatrix m = read_hermitian(a.input);
  const PrivacyParams params = privacy_from(a.epsilon, a.delta, a.T);
  const NoiseEnsemble ens = parse_ensemble(a.ensemble);
  MechanismOptions opt;
  opt.psd_warning_only = a.psd_warning_only;

  std::vector<MechanismResult> results(a.trials);
  const RngStream root(seed, kMechanismStream);
  parallel_for(a.trials, [&](std::size_t t) {
    RngStream rng = root.split(t);
    results[t] = ens == NoiseEnsemble::GUE ? complex_gaussian_mechanism(m, a.k, params, rng, opt)
                                           : real_gaussian_mechanism(m, a.k, params, rng, opt);
  });

  nlohmann::json cfg = {{"input", a.input}, {"k", a.k}, {"ensemble", a.ensemble},
                        {"trials", a.trials}, {"T", params.T}};
  if (params.is_private) {
    cfg["epsilon"] = a.epsilon;
    cfg["delta"] = a.delta;
  }
  CsvReport rep;
  rep.metadata = standard_metadata(
      "mechanism", seed,
      "trial t uses RngStream(seed, " + std::to_string(kMechanismStream) + ").split(t)",
      cfg.dump());
  if (!results.empty())
    for (const auto& w : results.front().warnings) rep.add_metadata("warning: " + w);
  rep.columns = {"trial",         "strong_frob",   "weak_frob_sq",  "weak_frob_diff",
                 "subspace_frob", "subspace_spec", "inner_product", "gap_assumption"};
  for (std::size_t t = 0; t < a.trials; ++t) {
    const UtilityMetrics& u = results[t].metrics;
    rep.add_row({std::to_string(t), format_value(u.strong_frob), format_value(u.weak_frob_sq),
                 format_value(u.weak_frob_diff), format_value(u.subspace_frob),
                 format_value(u.subspace_spec), format_value(u.inner_product),
                 format_bool(results[t].gap_assumption_holds)});
  }
  emit(rep, a.out);
  return 0;
}

struct BoundsArgs {
  std::string spectrum;  // comma list or CSV file
  std::string mode = "leading";
  std::size_t k = 1;
  double epsilon = 0.0, delta = 0.0, T = -1.0;
  double L = 1.0;
  double constant = 1.0;
  std::string out;
};

std::vector<double> parse_values(const std::string& text) {
  if (std::filesystem::exists(text)) return read_csv_values(text);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "bad spectrum entry '" + item + "'");
    }
  }
  return out;
}

int run_bounds(const BoundsArgs& a) {
  const PrivacyParams params = privacy_from(a.epsilon, a.delta, a.T);
  std::vector<double> spectrum = parse_values(a.spectrum);
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  const std::size_t d = spectrum.size();
  const BoundMode mode = a.mode == "explicit" ? BoundMode::Explicit : BoundMode::Leading;
  require(d >= 1, ErrorCode::InvalidInput, "--spectrum is empty");
  require(a.k >= 1 && a.k <= d, ErrorCode::InvalidRank, "k must satisfy 1 <= k <= d");
  const PolylogFactor poly = PolylogFactor::make(d, a.L);
  nlohmann::json j;
  j["d"] = d;
  j["k"] = a.k;
  j["T"] = params.T;
  j["polylog"] = {{"L", a.L}, {"value", poly.value}};
  j["mode"] = a.mode;
  const double gap = a.k < d ? spectrum[a.k - 1] - spectrum[a.k] : spectrum[d - 1];
  if (gap > 0.0) {
    j["covariance"] = covariance_utility_bound(spectrum, a.k, params.T, poly, a.constant, mode);
    j["covariance_unit_polylog"] =
        covariance_utility_bound(spectrum, a.k, params.T, PolylogFactor::unit(), a.constant, mode);
  }
  j["weaker_metric"] = weaker_metric_bound(a.k, d, params.T, poly, a.constant);
  if (a.k < d) {
    j["gap_assumption"] = check_gap_assumption(spectrum, a.k, params.T);
    if (gap > 0.0) {
      j["subspace"] = subspace_utility_bound(spectrum, a.k, params.T);
      j["davis_kahan_subspace"] = davis_kahan_subspace_bound(spectrum, a.k, params.T);
    }
  }
  emit_text(j.dump(2), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private low-rank covariance approximation and random-matrix experiments"};
  app.set_version_flag("--version", std::string(dplr::version()));
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Base seed for every random stream")->capture_default_str();

  MechanismArgs mech;
  auto* mech_cmd = app.add_subcommand("mechanism", "Run the Gaussian mechanism on a matrix file");
  mech_cmd->add_option("--input", mech.input, "Matrix CSV (base name or <base>_re.csv)")->required();
  mech_cmd->add_option("--k", mech.k, "Target rank")->required();
  mech_cmd->add_option("--epsilon", mech.epsilon, "Privacy epsilon");
  mech_cmd->add_option("--delta", mech.delta, "Privacy delta");
  mech_cmd->add_option("--T", mech.T, "Noise time override (non-private)");
  mech_cmd->add_option("--ensemble", mech.ensemble, "gue (complex mechanism) or goe (real)")
      ->check(CLI::IsMember({"gue", "goe"}));
  mech_cmd->add_option("--trials", mech.trials, "Number of trials")->check(CLI::PositiveNumber);
  mech_cmd->add_flag("--psd-warning-only", mech.psd_warning_only, "Accept non-PSD input with a warning");
  mech_cmd->add_option("--out", mech.out, "Output CSV (default stdout)");

  ExperimentConfig gaps;
  gaps.kind = ExperimentKind::Gaps;
  gaps.trials = 20000;
  std::string gaps_ens = "gue", gaps_out;
  auto* gaps_cmd = app.add_subcommand("gaps", "Sample scaled eigenvalue gaps and fit the tail exponent");
  gaps_cmd->add_option("--d", gaps.d, "Dimension")->capture_default_str();
  gaps_cmd->add_option("--index", gaps.gap_indices, "1-based gap index (repeatable)");
  gaps_cmd->add_option("--trials", gaps.trials, "Trials per index")->capture_default_str();
  gaps_cmd->add_option("--ensemble", gaps_ens)->check(CLI::IsMember({"gue", "goe"}));
  gaps_cmd->add_option("--out", gaps_out, "Output CSV (default stdout)");

  ExperimentConfig dbm;
  dbm.kind = ExperimentKind::Dbm;
  dbm.d = 4;
  dbm.trials = 1;
  std::string dbm_ens = "gue", dbm_mode = "sde", dbm_out;
  auto* dbm_cmd = app.add_subcommand("dbm", "Simulate Dyson Brownian motion trajectories");
  dbm_cmd->add_option("--mode", dbm_mode)->check(CLI::IsMember({"matrix", "sde", "flow", "coupled"}));
  dbm_cmd->add_option("--d", dbm.d, "Dimension")->capture_default_str();
  dbm_cmd->add_option("--initial", dbm.initial, "Initial eigenvalues (default evenly spaced)")
      ->delimiter(',');
  dbm_cmd->add_option("--xi0", dbm.xi0, "Initial eigenvalues of the dominated path (coupled)")
      ->delimiter(',');
  dbm_cmd->add_option("--t-end", dbm.t_end)->capture_default_str();
  dbm_cmd->add_option("--steps", dbm.steps)->capture_default_str();
  dbm_cmd->add_option("--trials", dbm.trials)->capture_default_str();
  dbm_cmd->add_option("--diagonal-variance", dbm.diagonal_variance)->capture_default_str();
  dbm_cmd->add_option("--ensemble", dbm_ens)->check(CLI::IsMember({"gue", "goe"}));
  dbm_cmd->add_option("--out", dbm_out, "Output CSV (default stdout)");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate theoretical bounds as JSON");
  bounds_cmd->add_option("--spectrum", bounds.spectrum, "Eigenvalues of M: comma list or CSV file")
      ->required();
  bounds_cmd->add_option("--mode", bounds.mode)->check(CLI::IsMember({"leading", "explicit"}));
  bounds_cmd->add_option("--k", bounds.k)->required();
  bounds_cmd->add_option("--epsilon", bounds.epsilon);
  bounds_cmd->add_option("--delta", bounds.delta);
  bounds_cmd->add_option("--T", bounds.T);
  bounds_cmd->add_option("--L", bounds.L)->capture_default_str();
  bounds_cmd->add_option("--constant", bounds.constant)->capture_default_str();
  bounds_cmd->add_option("--out", bounds.out);

  ExperimentConfig rig;
  rig.kind = ExperimentKind::Rigidity;
  rig.d = 64;
  rig.trials = 500;
  std::string rig_ens = "gue", rig_out;
  bool rig_raw = false;
  auto* rig_cmd = app.add_subcommand("rigidity", "Compare noise eigenvalues with classical locations");
  rig_cmd->add_option("--d", rig.d)->capture_default_str();
  rig_cmd->add_option("--trials", rig.trials)->capture_default_str();
  rig_cmd->add_option("--L", rig.L)->capture_default_str();
  rig_cmd->add_option("--ensemble", rig_ens)->check(CLI::IsMember({"gue", "goe"}));
  rig_cmd->add_flag("--raw", rig_raw, "Do not rescale eigenvalues to unit off-diagonal variance");
  rig_cmd->add_option("--out", rig_out);

  VerifyOptions vopt;
  std::string fault, verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant battery; JSON results");
  verify_cmd->add_option("--inject-fault", fault, "Negative control (variance-convention)");
  verify_cmd->add_option("--ks-trials", vopt.ks_trials)->capture_default_str();
  verify_cmd->add_option("--out", verify_out);

  std::string config_path;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  exp_cmd->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*mech_cmd) return run_mechanism(mech, seed);
    if (*bounds_cmd) return run_bounds(bounds);
    if (*gaps_cmd) {
      gaps.seed = seed;
      gaps.ensemble = parse_ensemble(gaps_ens);
      emit(run_gap_campaign(gaps).report, gaps_out);
      return 0;
    }
    if (*dbm_cmd) {
      dbm.seed = seed;
      dbm.ensemble = parse_ensemble(dbm_ens);
      dbm.dbm_mode = parse_dbm_mode(dbm_mode);
      emit(run_dbm_campaign(dbm), dbm_out);
      return 0;
    }
    if (*rig_cmd) {
      rig.seed = seed;
      rig.ensemble = parse_ensemble(rig_ens);
      rig.rigidity_unit_scale = !rig_raw;
      emit(run_rigidity_check(rig).report, rig_out);
      return 0;
    }
    if (*verify_cmd) {
      vopt.seed = seed;
      if (!fault.empty()) vopt.inject_fault = fault;
      const VerifyReport report = run_verify_suite(vopt);
      emit_text(report.to_json(), verify_out);
      return report.all_passed() ? 0 : 1;
    }
    if (*exp_cmd) {
      std::ifstream f(config_path);
      std::stringstream text;
      text << f.rdbuf();
      const ExperimentConfig cfg = parse_experiment_config(text.str());
      if (cfg.kind == ExperimentKind::Verify) {
        VerifyOptions o;
        o.seed = cfg.seed;
        o.inject_fault = cfg.inject_fault;
        const VerifyReport report = run_verify_suite(o);
        emit_text(report.to_json(), cfg.output);
        return report.all_passed() ? 0 : 1;
      }
      emit(run_experiment(cfg), cfg.output);
      return 0;
    }
  } catch (const dplr::Error& e) {
    std::fprintf(stderr, "dplr: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dplr: %s\n", e.what());
    return 1;
  }
  return 0;
}
