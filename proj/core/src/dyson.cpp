#include "dplr/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "dplr/error.hpp"

namespace dplr {

TimeGrid::TimeGrid(double t0, double t_end, std::size_t steps)
    : t0_(t0), t_end_(t_end), steps_(steps) {
  require(std::isfinite(t0) && std::isfinite(t_end) && t0 >= 0.0 && t_end > t0,
          ErrorCode::InvalidInput, "time grid needs 0 <= t0 < t_end");
  require(steps > 0, ErrorCode::InvalidInput, "time grid needs at least one step");
}

double TimeGrid::time(std::size_t i) const noexcept {
  return i == steps_ ? t_end_ : t0_ + static_cast<double>(i) * dt();
}

namespace {

bool strictly_decreasing(std::span<const double> g) {
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (!(g[i] > g[i + 1])) return false;
  return true;
}

void require_sorted(std::span<const double> g) {
  require(!g.empty(), ErrorCode::InvalidInput, "initial eigenvalues must be non-empty");
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    require(g[i] >= g[i + 1], ErrorCode::InvalidInput,
            "initial eigenvalues must be sorted non-increasing");
}

void sort_descending(std::vector<double>& g) { std::sort(g.begin(), g.end(), std::greater<>()); }

// Matrix increment whose diagonal has variance v * h.
HermitianMatrix matrix_increment(std::size_t d, double h, NoiseEnsemble ensemble, double v,
                                 RngStream& rng) {
  return brownian_increment(d, h, ensemble, rng).scaled(std::sqrt(v / 4.0));
}

[[noreturn]] void stiffness(double t, std::size_t i) {
  std::ostringstream os;
  os << "eigenvalues " << i + 1 << " and " << i + 2 << " cross at t = " << t
     << " after the step-halving floor";
  fail(ErrorCode::StiffnessFailure, os.str());
}

// Euler-Maruyama driver for one or more particle systems sharing the same
// diagonal increments. A step is rejected if any system would lose strict
// ordering; the increment is then refined on [t, t + h/2] by a Brownian
// bridge draw and both halves are retried.
constexpr double kDriftFraction = 0.1;

class EigenvalueStepper {
 public:
  EigenvalueStepper(double coefficient, double variance, bool zero_noise, int max_halvings,
                    RngStream& rng)
      : coefficient_(coefficient),
        variance_(variance),
        zero_noise_(zero_noise),
        max_halvings_(max_halvings),
        rng_(rng) {}

  std::vector<double> draw_increment(std::size_t d, double h) {
    std::vector<double> db(d, 0.0);
    if (!zero_noise_) {
      const double s = std::sqrt(variance_ * h);
      for (auto& x : db) x = s * rng_.normal();
    }
    return db;
  }

  void advance(std::span<std::vector<double>*> systems, const std::vector<double>& db, double h,
               double t, int depth = 0) {
    proposals_.resize(systems.size());
    bool ok = true;
    std::size_t bad_index = 0;
    bool accurate = true;
    for (std::size_t s = 0; s < systems.size() && ok; ++s) {
      const std::vector<double>& g = *systems[s];
      const std::vector<double> drift = eigenvalue_drift(g, coefficient_);
      auto& p = proposals_[s];
      p.resize(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        p[i] = g[i] + drift[i] * h + db[i];
        // Euler overshoots the 1/gap repulsion when the drift move is not
        // small against the neighbouring gaps.
        double room = INFINITY;
        if (i > 0) room = std::min(room, g[i - 1] - g[i]);
        if (i + 1 < g.size()) room = std::min(room, g[i] - g[i + 1]);
        if (std::abs(drift[i]) * h > kDriftFraction * room) accurate = false;
      }
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (!(p[i] > p[i + 1]) || !std::isfinite(p[i])) {
          ok = false;
          bad_index = i;
          break;
        }
      }
    }
    // Accuracy refinement uses at most half the depth budget; the rest is
    // reserved for the ordering guard.
    if (ok && !accurate && 2 * depth < max_halvings_) ok = false;
    if (ok) {
      for (std::size_t s = 0; s < systems.size(); ++s) {
        *systems[s] = proposals_[s];
        sort_descending(*systems[s]);
      }
      min_step_ = std::min(min_step_, h);
      return;
    }
    if (depth >= max_halvings_) stiffness(t, bad_index);
    ++halvings_;
    const double half = 0.5 * h;
    std::vector<double> first = draw_increment(db.size(), 0.5 * half);
    for (std::size_t i = 0; i < db.size(); ++i) first[i] += 0.5 * db[i];
    std::vector<double> second(db.size());
    for (std::size_t i = 0; i < db.size(); ++i) second[i] = db[i] - first[i];
    advance(systems, first, half, t, depth + 1);
    advance(systems, second, half, t + half, depth + 1);
  }

  double min_step() const noexcept { return min_step_; }
  std::size_t halvings() const noexcept { return halvings_; }

 private:
  double coefficient_;
  double variance_;
  bool zero_noise_;
  int max_halvings_;
  RngStream& rng_;
  std::vector<std::vector<double>> proposals_;
  double min_step_ = INFINITY;
  std::size_t halvings_ = 0;
};

// One exact matrix-diffusion step from diag(g).
std::vector<double> warm_start(std::span<const double> g, const HermitianMatrix& increment) {
  return eigvalsh(HermitianMatrix::diagonal(g) + increment);
}

TrajectorySet empty_trajectory(const TimeGrid& grid, NoiseEnsemble ensemble) {
  TrajectorySet out;
  out.grid = grid;
  out.ensemble = ensemble;
  out.eigenvalues.reserve(grid.steps() + 1);
  out.min_step = grid.dt();
  return out;
}

}  // namespace

double repulsion_coefficient(NoiseEnsemble ensemble, const SdeOptions& options) noexcept {
  return beta(ensemble) * options.diagonal_variance / 2.0;
}

std::vector<double> eigenvalue_drift(std::span<const double> gamma, double coefficient) {
  const std::size_t d = gamma.size();
  std::vector<double> drift(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double f = coefficient / (gamma[i] - gamma[j]);
      drift[i] += f;
      drift[j] -= f;
    }
  return drift;
}

TrajectorySet matrix_diffusion_path(const HermitianMatrix& m, const TimeGrid& grid,
                                    NoiseEnsemble ensemble, RngStream& rng,
                                    const DiffusionOptions& options) {
  TrajectorySet out = empty_trajectory(grid, ensemble);
  const std::size_t d = m.dim();
  HermitianMatrix phi = m;
  if (grid.t0() > 0.0 && !options.zero_noise)
    phi = phi + brownian_increment(d, grid.t0(), ensemble, rng);
  for (std::size_t step = 0; step <= grid.steps(); ++step) {
    if (step > 0 && !options.zero_noise) phi = phi + brownian_increment(d, grid.dt(), ensemble, rng);
    if (options.store_vectors) {
      EigenDecomposition e = eigh(phi);
      out.eigenvalues.push_back(std::move(e.values));
      out.eigenvectors.push_back(std::move(e.vectors));
    } else {
      out.eigenvalues.push_back(eigvalsh(phi));
    }
  }
  return out;
}

TrajectorySet eigenvalue_sde_path(std::span<const double> gamma0, NoiseEnsemble ensemble,
                                  const TimeGrid& grid, RngStream& rng,
                                  const SdeOptions& options) {
  require_sorted(gamma0);
  const std::size_t d = gamma0.size();
  TrajectorySet out = empty_trajectory(grid, ensemble);
  EigenvalueStepper stepper(repulsion_coefficient(ensemble, options), options.diagonal_variance,
                            options.zero_noise, options.max_halvings, rng);

  std::vector<double> g(gamma0.begin(), gamma0.end());
  out.eigenvalues.push_back(g);
  std::size_t first = 0;
  if (!strictly_decreasing(g)) {
    require(!options.zero_noise, ErrorCode::InvalidInput,
            "coincident initial eigenvalues need a noisy warm start");
    g = warm_start(g, matrix_increment(d, grid.dt(), ensemble, options.diagonal_variance, rng));
    out.eigenvalues.push_back(g);
    first = 1;
  }
  std::vector<double>* systems[] = {&g};
  for (std::size_t step = first; step < grid.steps(); ++step) {
    const double h = grid.time(step + 1) - grid.time(step);
    stepper.advance(systems, stepper.draw_increment(d, h), h, grid.time(step));
    out.eigenvalues.push_back(g);
  }
  out.min_step = std::min(grid.dt(), stepper.min_step());
  out.halvings = stepper.halvings();
  return out;
}

void orthonormalize_columns(ComplexMatrix& u) {
  const std::size_t n = u.rows();
  for (std::size_t j = 0; j < u.cols(); ++j) {
    for (std::size_t l = 0; l < j; ++l) {
      Complex dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, l)) * u(i, j);
      for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, l);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, j));
    norm = std::sqrt(norm);
    require(norm > 0.0, ErrorCode::InvalidInput, "cannot orthonormalize dependent columns");
    for (std::size_t i = 0; i < n; ++i) u(i, j) /= norm;
  }
}

namespace {

struct FlowState {
  std::vector<double> gamma;
  ComplexMatrix vectors;
};

class FlowStepper {
 public:
  FlowStepper(NoiseEnsemble ensemble, const SdeOptions& options, RngStream& rng)
      : ensemble_(ensemble),
        options_(options),
        coefficient_(repulsion_coefficient(ensemble, options)),
        rng_(rng) {}

  ComplexMatrix draw_increment(std::size_t d, double h) {
    if (options_.zero_noise) return ComplexMatrix(d, d);
    return matrix_increment(d, h, ensemble_, options_.diagonal_variance, rng_).matrix();
  }

  void advance(FlowState& state, const ComplexMatrix& db, double h, double t, int depth = 0) {
    const std::size_t d = state.gamma.size();
    const auto& g = state.gamma;
    const std::vector<double> drift = eigenvalue_drift(g, coefficient_);
    std::vector<double> next(d);
    for (std::size_t i = 0; i < d; ++i) next[i] = g[i] + drift[i] * h + db(i, i).real();
    std::size_t bad = d;
    for (std::size_t i = 0; i + 1 < d; ++i)
      if (!(next[i] > next[i + 1])) {
        bad = i;
        break;
      }
    if (bad == d) {
      // du_i = sum_{j != i} dB_ji / (g_i - g_j) u_j - (c / 2) sum_{j != i} h / (g_i - g_j)^2 u_i
      ComplexMatrix x(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        double damping = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          if (j == i) continue;
          const double gap = g[i] - g[j];
          x(j, i) = db(j, i) / gap;
          damping += 1.0 / (gap * gap);
        }
        x(i, i) = 1.0 - 0.5 * coefficient_ * h * damping;
      }
      state.vectors = state.vectors * x;
      orthonormalize_columns(state.vectors);
      state.gamma = std::move(next);
      min_step_ = std::min(min_step_, h);
      return;
    }
    if (depth >= options_.max_halvings) stiffness(t, bad);
    ++halvings_;
    const double half = 0.5 * h;
    ComplexMatrix first = draw_increment(d, 0.5 * half);
    first += db * 0.5;
    const ComplexMatrix second = db - first;
    advance(state, first, half, t, depth + 1);
    advance(state, second, half, t + half, depth + 1);
  }

  double min_step() const noexcept { return min_step_; }
  std::size_t halvings() const noexcept { return halvings_; }

 private:
  NoiseEnsemble ensemble_;
  SdeOptions options_;
  double coefficient_;
  RngStream& rng_;
  double min_step_ = INFINITY;
  std::size_t halvings_ = 0;
};

}  // namespace

TrajectorySet eigenvector_flow_path(const EigenDecomposition& decomp0, NoiseEnsemble ensemble,
                                    const TimeGrid& grid, RngStream& rng,
                                    const SdeOptions& options) {
  require(strictly_decreasing(decomp0.values), ErrorCode::InvalidInput,
          "eigenvector flow needs strictly positive initial gaps");
  const std::size_t d = decomp0.dim();
  TrajectorySet out = empty_trajectory(grid, ensemble);
  FlowState state{decomp0.values, decomp0.vectors};
  FlowStepper stepper(ensemble, options, rng);
  out.eigenvalues.push_back(state.gamma);
  out.eigenvectors.push_back(state.vectors);
  out.max_unitarity_defect = unitarity_defect(state.vectors);
  for (std::size_t step = 0; step < grid.steps(); ++step) {
    const double h = grid.time(step + 1) - grid.time(step);
    stepper.advance(state, stepper.draw_increment(d, h), h, grid.time(step));
    out.eigenvalues.push_back(state.gamma);
    out.eigenvectors.push_back(state.vectors);
    out.max_unitarity_defect = std::max(out.max_unitarity_defect, unitarity_defect(state.vectors));
  }
  out.min_step = std::min(grid.dt(), stepper.min_step());
  out.halvings = stepper.halvings();
  return out;
}

CoupledGapReport coupled_gap_run(std::span<const double> xi0, std::span<const double> gamma0,
                                 NoiseEnsemble ensemble, const TimeGrid& grid, RngStream& rng,
                                 const SdeOptions& options) {
  require_sorted(xi0);
  require_sorted(gamma0);
  require(xi0.size() == gamma0.size(), ErrorCode::InvalidInput,
          "coupled systems must have the same dimension");
  const std::size_t d = xi0.size();
  for (std::size_t i = 0; i + 1 < d; ++i)
    require(xi0[i] - xi0[i + 1] <= gamma0[i] - gamma0[i + 1], ErrorCode::InvalidInput,
            "initial xi gaps must not exceed gamma gaps");

  CoupledGapReport report;
  report.xi = empty_trajectory(grid, ensemble);
  report.gamma = empty_trajectory(grid, ensemble);
  EigenvalueStepper stepper(repulsion_coefficient(ensemble, options), options.diagonal_variance,
                            options.zero_noise, options.max_halvings, rng);

  std::vector<double> xi(xi0.begin(), xi0.end());
  std::vector<double> gamma(gamma0.begin(), gamma0.end());

  auto record = [&](double t) {
    report.xi.eigenvalues.push_back(xi);
    report.gamma.eigenvalues.push_back(gamma);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      const double excess = (xi[i] - xi[i + 1]) - (gamma[i] - gamma[i + 1]);
      if (excess > 0.0 && !report.first_crossing_time) report.first_crossing_time = t;
      if (excess > report.max_violation) {
        report.max_violation = excess;
        report.violation_index = i + 1;
      }
    }
  };
  record(grid.time(0));

  std::size_t first = 0;
  const bool xi_tied = !strictly_decreasing(xi);
  const bool gamma_tied = !strictly_decreasing(gamma);
  if (xi_tied || gamma_tied) {
    require(!options.zero_noise, ErrorCode::InvalidInput,
            "coincident initial eigenvalues need a noisy warm start");
    const double h = grid.dt();
    const HermitianMatrix inc = matrix_increment(d, h, ensemble, options.diagonal_variance, rng);
    std::vector<double> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = inc(i, i).real();
    auto step_one = [&](std::vector<double>& state, bool tied) {
      if (tied) {
        state = warm_start(state, inc);
      } else {
        std::vector<double>* one[] = {&state};
        stepper.advance(one, diag, h, grid.time(0));
      }
    };
    step_one(xi, xi_tied);
    step_one(gamma, gamma_tied);
    record(grid.time(1));
    first = 1;
  }

  std::vector<double>* systems[] = {&xi, &gamma};
  for (std::size_t step = first; step < grid.steps(); ++step) {
    const double h = grid.time(step + 1) - grid.time(step);
    stepper.advance(systems, stepper.draw_increment(d, h), h, grid.time(step));
    record(grid.time(step + 1));
  }
  report.xi.min_step = report.gamma.min_step = std::min(grid.dt(), stepper.min_step());
  report.xi.halvings = report.gamma.halvings = stepper.halvings();
  return report;
}

}  // namespace dplr
