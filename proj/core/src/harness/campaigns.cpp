#include "dplr/harness/campaigns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dplr/bounds.hpp"
#include "dplr/dyson.hpp"
#include "dplr/eigen.hpp"
#include "dplr/ensemble.hpp"
#include "dplr/error.hpp"
#include "dplr/harness/spectrum.hpp"
#include "dplr/parallel.hpp"
#include "dplr/rng.hpp"
#include "dplr/semicircle.hpp"
#include "dplr/stats.hpp"

namespace dplr::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string stream_note(std::uint64_t stream) {
  return "trial t uses RngStream(seed, " + std::to_string(stream) + ").split(t)";
}

CsvReport make_report(const ExperimentConfig& config, std::uint64_t stream) {
  CsvReport r;
  r.metadata = standard_metadata(std::string(to_string(config.kind)), config.seed,
                                 stream_note(stream), to_json(config));
  return r;
}

bool gap_check(const std::vector<double>& spectrum, std::size_t k, double T) {
  const std::size_t d = spectrum.size();
  if (k < d) return check_gap_assumption(spectrum, k, T);
  return spectrum[d - 1] >= 4.0 * std::sqrt(T * static_cast<double>(d));
}

// Metric accessors in CSV column order.
constexpr std::size_t kMetricCount = 7;
const char* const kMetricNames[kMetricCount] = {"strong_frob",   "weak_frob_sq",  "weak_frob_diff",
                                                "subspace_frob", "subspace_spec", "inner_product",
                                                "hat_frob"};

double& metric(UtilityMetrics& m, std::size_t i) {
  double* fields[kMetricCount] = {&m.strong_frob,   &m.weak_frob_sq,  &m.weak_frob_diff,
                                  &m.subspace_frob, &m.subspace_spec, &m.inner_product,
                                  &m.hat_frob};
  return *fields[i];
}

UtilityMetrics bounds_for(const std::vector<double>& spectrum, std::size_t k, double T,
                          const PolylogFactor& polylog) {
  const std::size_t d = spectrum.size();
  UtilityMetrics b;
  for (std::size_t i = 0; i < kMetricCount; ++i) metric(b, i) = kNaN;
  const double cov = covariance_utility_bound(spectrum, k, T, polylog, 1.0, BoundMode::Leading);
  b.strong_frob = cov;
  b.hat_frob = cov;
  b.weak_frob_sq = weaker_metric_bound(k, d, T, polylog);
  if (k < d && spectrum[k - 1] > spectrum[k]) b.subspace_frob = subspace_utility_bound(spectrum, k, T);
  return b;
}

}  // namespace

UtilityCampaign run_utility_campaign(const ExperimentConfig& config) {
  config.validate();
  const std::size_t d = config.d;
  const std::size_t k = config.k;
  const PrivacyParams params = config.privacy();

  UtilityCampaign out;
  UtilitySummary& s = out.summary;
  s.spectrum = generate_spectrum(config.spectrum, d, k);
  s.gap_T = params.is_private ? 2.0 * params.T : params.T;
  s.gap_assumption = gap_check(s.spectrum, k, s.gap_T);
  if (!s.gap_assumption) {
    if (config.enforce_gap)
      fail(ErrorCode::DegenerateGap, "spectrum violates the gap assumption at T = " +
                                         format_value(s.gap_T));
    s.warnings.push_back("gap assumption violated at T = " + format_value(s.gap_T));
  }

  const RngStream root(config.seed, kUtilityStream);
  s.trials.resize(config.trials);
  std::vector<std::vector<std::string>> trial_warnings(config.trials);
  parallel_for(config.trials, [&](std::size_t t) {
    RngStream rng = root.split(t);
    HermitianMatrix m = HermitianMatrix::diagonal(s.spectrum);
    if (config.random_basis) m = matrix_with_spectrum(random_orthogonal(d, rng), s.spectrum);
    MechanismResult r = config.mechanism == MechanismKind::Complex
                            ? complex_gaussian_mechanism(m, k, params, rng)
                            : real_gaussian_mechanism(m, k, params, rng);
    s.trials[t] = r.metrics;
    trial_warnings[t] = std::move(r.warnings);
  });
  for (auto& w : trial_warnings)
    for (auto& line : w)
      if (std::find(s.warnings.begin(), s.warnings.end(), line) == s.warnings.end())
        s.warnings.push_back(std::move(line));

  for (std::size_t i = 0; i < kMetricCount; ++i) {
    std::vector<double> col(config.trials);
    for (std::size_t t = 0; t < config.trials; ++t) col[t] = metric(s.trials[t], i);
    metric(s.rms, i) = i == 1 ? std::sqrt(std::max(mean(col), 0.0)) : root_mean_square(col);
  }
  s.theory = bounds_for(s.spectrum, k, params.T, PolylogFactor::make(d, config.L));
  s.rate = bounds_for(s.spectrum, k, params.T, PolylogFactor::unit());

  CsvReport& rep = out.report;
  rep = make_report(config, kUtilityStream);
  rep.add_metadata("T=" + format_value(params.T) + " gap_T=" + format_value(s.gap_T) +
                   (params.is_private ? "" : " non-private"));
  rep.add_metadata("footer: rms (weak_frob_sq: sqrt of mean), theory_bound (leading, constant 1, "
                   "polylog L=" + format_value(config.L) + "), ratio, rate (unit polylog), "
                   "rate_ratio");
  for (const auto& w : s.warnings) rep.add_metadata("warning: " + w);
  rep.columns = {"trial"};
  for (const char* name : kMetricNames) rep.columns.emplace_back(name);
  rep.columns.emplace_back("gap_assumption");
  for (std::size_t t = 0; t < config.trials; ++t) {
    std::vector<std::string> row{std::to_string(t)};
    for (std::size_t i = 0; i < kMetricCount; ++i) row.push_back(format_value(metric(s.trials[t], i)));
    row.push_back(format_bool(s.gap_assumption));
    rep.add_row(std::move(row));
  }
  auto footer = [&](const char* label, auto value) {
    std::vector<std::string> row{label};
    for (std::size_t i = 0; i < kMetricCount; ++i) row.push_back(format_value(value(i)));
    row.push_back("");
    rep.add_row(std::move(row));
  };
  footer("rms", [&](std::size_t i) { return metric(s.rms, i); });
  footer("theory_bound", [&](std::size_t i) { return metric(s.theory, i); });
  footer("ratio", [&](std::size_t i) { return metric(s.rms, i) / metric(s.theory, i); });
  footer("rate", [&](std::size_t i) { return metric(s.rate, i); });
  footer("rate_ratio", [&](std::size_t i) { return metric(s.rms, i) / metric(s.rate, i); });
  return out;
}

GapCampaign run_gap_campaign(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::size_t> indices = config.gap_indices;
  if (indices.empty()) indices.push_back(std::max<std::size_t>(1, config.d / 2));

  GapCampaign out;
  const RngStream root(config.seed, kGapStream);
  for (std::size_t idx : indices) {
    TailSample sample = collect_gap_samples(config.d, config.ensemble, idx, config.trials,
                                            root.split(idx));
    fit_tail_exponent(sample);
    out.samples.push_back(std::move(sample));
  }

  CsvReport& rep = out.report;
  rep.metadata = standard_metadata("gaps", config.seed,
                                   "gap index i uses RngStream(seed, " +
                                       std::to_string(kGapStream) + ").split(i), trial t its split(t)",
                                   to_json(config));
  rep.add_metadata("value = (eta_i - eta_{i+1}) * sqrt(d); footer rows per index: exponent, "
                   "standard_error, theory_exponent, s_lo, s_hi, cdf_lo, cdf_hi, points");
  rep.columns = {"gap_index", "row", "value"};
  for (const auto& sample : out.samples) {
    const std::string idx = std::to_string(sample.gap_index);
    for (std::size_t t = 0; t < sample.scaled_gaps.size(); ++t)
      rep.add_row({idx, std::to_string(t), format_value(sample.scaled_gaps[t])});
  }
  for (const auto& sample : out.samples) {
    const std::string idx = std::to_string(sample.gap_index);
    const TailFit& f = sample.fit;
    rep.add_row({idx, "exponent", format_value(f.exponent)});
    rep.add_row({idx, "standard_error", format_value(f.standard_error)});
    rep.add_row({idx, "theory_exponent", format_value(beta(sample.ensemble) + 1.0)});
    rep.add_row({idx, "s_lo", format_value(f.s_lo)});
    rep.add_row({idx, "s_hi", format_value(f.s_hi)});
    rep.add_row({idx, "cdf_lo", format_value(f.cdf_lo)});
    rep.add_row({idx, "cdf_hi", format_value(f.cdf_hi)});
    rep.add_row({idx, "points", std::to_string(f.points)});
  }
  return out;
}

RigidityCampaign run_rigidity_check(const ExperimentConfig& config) {
  config.validate();
  const std::size_t d = config.d;
  const ClassicalSpectrum omega = classical_locations(d);
  const std::vector<double> envelope = rigidity_envelope(d, config.L);
  const double unit = config.rigidity_unit_scale ? std::sqrt(offdiagonal_power(config.ensemble)) : 1.0;

  RigidityCampaign out;
  RigiditySummary& s = out.summary;
  s.max_ratio.resize(config.trials);
  std::vector<std::size_t> argmax(config.trials);
  const RngStream root(config.seed, kRigidityStream);
  parallel_for(config.trials, [&](std::size_t t) {
    RngStream rng = root.split(t);
    const std::vector<double> eta = eigvalsh(sample_noise(d, config.ensemble, rng));
    double worst = -1.0;
    for (std::size_t j = 1; j <= d; ++j) {
      const double r = std::abs(eta[j - 1] / unit - omega.omega(j)) / envelope[j - 1];
      if (r > worst) {
        worst = r;
        argmax[t] = j;
      }
    }
    s.max_ratio[t] = worst;
  });
  s.median = quantile(s.max_ratio, 0.5);
  s.q90 = quantile(s.max_ratio, 0.9);
  s.worst = *std::max_element(s.max_ratio.begin(), s.max_ratio.end());
  s.fraction_within =
      static_cast<double>(std::count_if(s.max_ratio.begin(), s.max_ratio.end(),
                                        [](double r) { return r <= 1.0; })) /
      static_cast<double>(config.trials);
  s.classical_residual = omega.max_residual();

  CsvReport& rep = out.report;
  rep = make_report(config, kRigidityStream);
  rep.add_metadata("eigenvalue scale divisor=" + format_value(unit) +
                   (config.rigidity_unit_scale ? " (unit off-diagonal variance)" : " (raw)"));
  rep.columns = {"trial", "max_ratio", "argmax_j"};
  for (std::size_t t = 0; t < config.trials; ++t)
    rep.add_row({std::to_string(t), format_value(s.max_ratio[t]), std::to_string(argmax[t])});
  rep.add_row({"median", format_value(s.median), ""});
  rep.add_row({"q90", format_value(s.q90), ""});
  rep.add_row({"max", format_value(s.worst), ""});
  rep.add_row({"fraction_within", format_value(s.fraction_within), ""});
  rep.add_row({"classical_residual", format_value(s.classical_residual), ""});
  return out;
}

CsvReport run_dbm_campaign(const ExperimentConfig& config) {
  config.validate();
  const std::size_t d = config.d;
  std::vector<double> gamma0 = config.initial;
  if (gamma0.empty()) {
    gamma0.resize(d);
    for (std::size_t i = 0; i < d; ++i)
      gamma0[i] = static_cast<double>(d) - 1.0 - 2.0 * static_cast<double>(i);
  }
  require(gamma0.size() == d, ErrorCode::InvalidInput, "initial must have d entries");
  std::sort(gamma0.begin(), gamma0.end(), std::greater<>());
  std::vector<double> xi0 = config.xi0;
  if (config.dbm_mode == DbmMode::Coupled) {
    require(xi0.size() == d, ErrorCode::InvalidInput, "coupled mode needs xi0 with d entries");
    std::sort(xi0.begin(), xi0.end(), std::greater<>());
  }

  const TimeGrid grid(0.0, config.t_end, config.steps);
  SdeOptions sde;
  sde.diagonal_variance = config.diagonal_variance;
  const RngStream root(config.seed, kDbmStream);

  struct TrialPaths {
    TrajectorySet main;
    TrajectorySet xi;
    std::vector<double> violation;
  };
  std::vector<TrialPaths> paths(config.trials);
  parallel_for(config.trials, [&](std::size_t t) {
    RngStream rng = root.split(t);
    TrialPaths& p = paths[t];
    switch (config.dbm_mode) {
      case DbmMode::Matrix:
        p.main = matrix_diffusion_path(HermitianMatrix::diagonal(gamma0), grid, config.ensemble, rng);
        break;
      case DbmMode::Sde:
        p.main = eigenvalue_sde_path(gamma0, config.ensemble, grid, rng, sde);
        break;
      case DbmMode::Flow:
        p.main = eigenvector_flow_path(eigh(HermitianMatrix::diagonal(gamma0)), config.ensemble,
                                       grid, rng, sde);
        break;
      case DbmMode::Coupled: {
        CoupledGapReport r = coupled_gap_run(xi0, gamma0, config.ensemble, grid, rng, sde);
        p.main = std::move(r.gamma);
        p.xi = std::move(r.xi);
        p.violation.resize(grid.steps() + 1);
        for (std::size_t n = 0; n <= grid.steps(); ++n) {
          double v = 0.0;
          for (std::size_t i = 0; i + 1 < d; ++i) {
            const double xg = p.xi.eigenvalues[n][i] - p.xi.eigenvalues[n][i + 1];
            const double gg = p.main.eigenvalues[n][i] - p.main.eigenvalues[n][i + 1];
            v = std::max(v, xg - gg);
          }
          p.violation[n] = v;
        }
        break;
      }
    }
  });

  CsvReport rep = make_report(config, kDbmStream);
  rep.add_metadata("mode=" + std::string(to_string(config.dbm_mode)) +
                   " dt=" + format_value(grid.dt()));
  rep.columns = {"trial", "time"};
  for (std::size_t i = 1; i <= d; ++i) rep.columns.push_back("gamma_" + std::to_string(i));
  if (config.dbm_mode == DbmMode::Coupled) {
    for (std::size_t i = 1; i <= d; ++i) rep.columns.push_back("xi_" + std::to_string(i));
    rep.columns.emplace_back("violation");
  }
  for (std::size_t t = 0; t < config.trials; ++t) {
    const TrialPaths& p = paths[t];
    for (std::size_t n = 0; n <= grid.steps(); ++n) {
      std::vector<std::string> row{std::to_string(t), format_value(grid.time(n))};
      for (double g : p.main.eigenvalues[n]) row.push_back(format_value(g));
      if (config.dbm_mode == DbmMode::Coupled) {
        for (double x : p.xi.eigenvalues[n]) row.push_back(format_value(x));
        row.push_back(format_value(p.violation[n]));
      }
      rep.add_row(std::move(row));
    }
  }
  return rep;
}

CsvReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Utility: return run_utility_campaign(config).report;
    case ExperimentKind::Gaps: return run_gap_campaign(config).report;
    case ExperimentKind::Rigidity: return run_rigidity_check(config).report;
    case ExperimentKind::Dbm: return run_dbm_campaign(config);
    case ExperimentKind::Verify: break;
  }
  fail(ErrorCode::InvalidInput, "verify runs produce JSON; use run_verify_suite");
}

}  // namespace dplr::harness
