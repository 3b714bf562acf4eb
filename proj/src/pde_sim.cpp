#include "fhnhopf/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhnhopf/errors.hpp"
#include "fhnhopf/spectral.hpp"

namespace fhn {

namespace {

constexpr double kDivergenceBound = 1e6;

void check_finite(std::span<const double> u, double t) {
  for (double value : u) {
    if (!(std::abs(value) <= kDivergenceBound)) {
      std::ostringstream msg;
      msg << "simulation diverged at t = " << t << " (|u| = " << std::abs(value) << ")";
      throw DivergenceError(msg.str());
    }
  }
}

}  // namespace

void laplacian_neumann(std::span<const double> u, double dx, std::span<double> out) {
  const std::size_t n = u.size();
  if (n < 3 || out.size() != n) throw ConfigError("laplacian_neumann: need at least 3 nodes and matching output");
  const double inv = 1.0 / (dx * dx);
  out[0] = 2.0 * (u[1] - u[0]) * inv;
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv;
  out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv;
}

std::vector<double> laplacian_neumann(std::span<const double> u, double dx) {
  std::vector<double> out(u.size());
  laplacian_neumann(u, dx, out);
  return out;
}

StationaryState discrete_stationary_state(const ModelParams& params, const HeterogeneityProfile& profile) {
  StationaryState s = stationary_state(params, profile);
  const auto lap = laplacian_neumann(s.u_bar, params.dx());
  for (std::size_t i = 0; i < s.size(); ++i) s.v_bar[i] = f_cubic(s.u_bar[i]) + params.d * lap[i];
  return s;
}

ReactionDiffusion::ReactionDiffusion(const ModelParams& params, const HeterogeneityProfile& profile)
    : params_(params), c_(params.nx) {
  const Grid grid(params);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = profile.value(grid[i]);
  for (auto& k : k_u_) k.resize(c_.size());
  for (auto& k : k_v_) k.resize(c_.size());
  stage_u_.resize(c_.size());
  stage_v_.resize(c_.size());
  lap_.resize(c_.size());
}

void ReactionDiffusion::rhs(std::span<const double> u, std::span<const double> v, std::span<double> du,
                            std::span<double> dv) const {
  laplacian_neumann(u, params_.dx(), lap_);
  const double inv_eps = 1.0 / params_.epsilon;
  const double d = params_.d;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    du[i] = (f_cubic(u[i]) - v[i] + d * lap_[i]) * inv_eps;
    dv[i] = u[i] - c_[i];
  }
}

void ReactionDiffusion::step(FieldState& state, double dt) const {
  const std::size_t n = c_.size();
  if (state.u.size() != n || state.v.size() != n) throw ConfigError("rk4_step: state size does not match the grid");
  static constexpr double stage_weight[3] = {0.5, 0.5, 1.0};

  rhs(state.u, state.v, k_u_[0], k_v_[0]);
  for (int s = 0; s < 3; ++s) {
    const double w = stage_weight[s] * dt;
    for (std::size_t i = 0; i < n; ++i) {
      stage_u_[i] = state.u[i] + w * k_u_[s][i];
      stage_v_[i] = state.v[i] + w * k_v_[s][i];
    }
    rhs(stage_u_, stage_v_, k_u_[s + 1], k_v_[s + 1]);
  }
  const double sixth = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    state.u[i] += sixth * (k_u_[0][i] + 2.0 * k_u_[1][i] + 2.0 * k_u_[2][i] + k_u_[3][i]);
    state.v[i] += sixth * (k_v_[0][i] + 2.0 * k_v_[1][i] + 2.0 * k_v_[2][i] + k_v_[3][i]);
  }
  state.t += dt;
  check_finite(state.u, state.t);
}

double ReactionDiffusion::stable_dt() const {
  const double dx = params_.dx();
  return params_.epsilon * dx * dx / (2.0 * params_.d);
}

FieldState rk4_step(const FieldState& state, const ReactionDiffusion& system, double dt) {
  FieldState next = state;
  system.step(next, dt);
  return next;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::steady:
      return "steady";
    case Regime::oscillatory:
      return "oscillatory";
    case Regime::indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

OscillationSummary classify_series(std::span<const double> t, std::span<const double> values, double t_end,
                                   const ClassificationThresholds& thresholds) {
  OscillationSummary out;
  const double start = thresholds.tail_fraction * t_end - 1e-12;
  std::vector<double> tail_t;
  std::vector<double> tail;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= start) {
      tail_t.push_back(t[i]);
      tail.push_back(values[i]);
    }
  }
  if (tail.empty()) return out;

  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  out.peak_to_peak = *hi - *lo;
  double sum = 0.0;
  for (double value : tail) sum += value;
  out.tail_mean = sum / static_cast<double>(tail.size());

  if (out.peak_to_peak < thresholds.steady_below) {
    out.regime = Regime::steady;
  } else if (out.peak_to_peak > thresholds.oscillatory_above) {
    out.regime = Regime::oscillatory;
  } else {
    out.regime = Regime::indeterminate;
  }
  if (out.regime == Regime::steady) return out;

  std::vector<double> up;
  for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
    const double y0 = tail[i] - out.tail_mean;
    const double y1 = tail[i + 1] - out.tail_mean;
    if (y0 < 0.0 && y1 >= 0.0) up.push_back(tail_t[i] + (tail_t[i + 1] - tail_t[i]) * (-y0) / (y1 - y0));
  }
  out.crossings = up.size();
  if (up.size() >= 2) out.period = (up.back() - up.front()) / static_cast<double>(up.size() - 1);
  return out;
}

FieldState perturbed_stationary(const ModelParams& params, const HeterogeneityProfile& profile, double amplitude) {
  const StationaryState discrete = discrete_stationary_state(params, profile);
  FieldState state{0.0, discrete.u_bar, discrete.v_bar};
  if (amplitude != 0.0) {
    const StationaryState analytic = stationary_state(params, profile);
    const SpectralProblem problem(analytic, params, profile);
    const double nu0 = eigenvalue_nu(0, problem);
    const auto u0 = eigenfunction(0, nu0, problem);
    for (std::size_t i = 0; i < state.u.size(); ++i) state.u[i] += amplitude * u0[i];
  }
  return state;
}

SimulationResult simulate(const ModelParams& params, const HeterogeneityProfile& profile,
                          const SimulationOptions& options) {
  if (!(options.t_end > 0.0)) throw ConfigError("simulate: t_end must be positive");
  if (!(options.dt > 0.0)) throw ConfigError("simulate: dt must be positive");
  params.validate();

  const Grid grid(params);
  const ReactionDiffusion system(params, profile);
  SimulationResult result;
  result.dt_exceeds_guard = options.dt > system.stable_dt();

  FieldState state = options.initial ? *options.initial : perturbed_stationary(params, profile, options.perturbation);
  if (state.u.size() != params.nx || state.v.size() != params.nx)
    throw ConfigError("simulate: initial state does not match the grid");
  state.t = 0.0;

  auto& probe = result.probe;
  probe.probe_x = options.probe_x.empty() ? std::vector<double>{-params.a, 0.0} : options.probe_x;
  for (double& x : probe.probe_x) {
    const std::size_t idx = grid.nearest_index(x);
    probe.probe_index.push_back(idx);
    x = grid[idx];
  }
  probe.u.resize(probe.probe_x.size());

  const auto steps = static_cast<long long>(std::llround(options.t_end / options.dt));
  const long long stride = std::max<long long>(1, std::llround(options.sample_dt / options.dt));
  std::vector<std::pair<long long, double>> snapshot_steps;
  for (double ts : options.snapshot_times) {
    if (ts < 0.0 || ts > options.t_end + 0.5 * options.dt) continue;
    snapshot_steps.emplace_back(std::llround(ts / options.dt), ts);
  }
  std::sort(snapshot_steps.begin(), snapshot_steps.end());
  std::size_t next_snapshot = 0;
  const std::size_t center = grid.center_index();

  auto record = [&](long long k) {
    if (k % stride == 0 || k == steps) {
      probe.t.push_back(state.t);
      for (std::size_t j = 0; j < probe.probe_index.size(); ++j) probe.u[j].push_back(state.u[probe.probe_index[j]]);
      result.center_series.push_back(state.u[center]);
      if (options.observer) options.observer(state);
    }
    while (next_snapshot < snapshot_steps.size() && snapshot_steps[next_snapshot].first == k) {
      result.snapshots.push_back(state);
      ++next_snapshot;
    }
  };

  record(0);
  for (long long k = 1; k <= steps; ++k) {
    system.step(state, options.dt);
    state.t = static_cast<double>(k) * options.dt;
    record(k);
  }
  result.summary = classify_series(probe.t, result.center_series, options.t_end, options.thresholds);
  result.final_state = std::move(state);
  return result;
}

OdeResult ode_simulate(double c, double epsilon, double t_end, double dt, double u_init, double v_init,
                       double sample_dt, const ClassificationThresholds& thresholds) {
  if (!(epsilon > 0.0) || !(t_end > 0.0) || !(dt > 0.0)) throw ConfigError("ode_simulate: epsilon, t_end, dt must be positive");
  auto field = [&](double u, double v, double& du, double& dv) {
    du = (f_cubic(u) - v) / epsilon;
    dv = u - c;
  };
  OdeResult out;
  const auto steps = static_cast<long long>(std::llround(t_end / dt));
  const long long stride = std::max<long long>(1, std::llround(sample_dt / dt));
  double u = u_init;
  double v = v_init;
  auto record = [&](long long k) {
    if (k % stride == 0 || k == steps) {
      out.t.push_back(static_cast<double>(k) * dt);
      out.u.push_back(u);
      out.v.push_back(v);
    }
  };
  record(0);
  for (long long k = 1; k <= steps; ++k) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    field(u, v, k1u, k1v);
    field(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v, k2u, k2v);
    field(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v, k3u, k3v);
    field(u + dt * k3u, v + dt * k3v, k4u, k4v);
    u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!(std::abs(u) <= kDivergenceBound)) {
      std::ostringstream msg;
      msg << "ode_simulate diverged at t = " << static_cast<double>(k) * dt;
      throw DivergenceError(msg.str());
    }
    record(k);
  }
  out.summary = classify_series(out.t, out.u, t_end, thresholds);
  return out;
}

}  // namespace fhn
