#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fhnhopf/model.hpp"

namespace fhn {

struct FieldState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

/// Second-order Neumann Laplacian with mirrored ghost nodes u[-1] = u[1], u[n] = u[n-2].
void laplacian_neumann(std::span<const double> u, double dx, std::span<double> out);
std::vector<double> laplacian_neumann(std::span<const double> u, double dx);

/// Equilibrium of the discretized system: u = c(x), v = f(u) + d * (discrete Laplacian of u).
StationaryState discrete_stationary_state(const ModelParams& params, const HeterogeneityProfile& profile);

/// Method-of-lines right-hand side: eps u_t = f(u) - v + d u_xx, v_t = u - c(x).
class ReactionDiffusion {
 public:
  ReactionDiffusion(const ModelParams& params, const HeterogeneityProfile& profile);

  std::size_t size() const { return c_.size(); }
  const ModelParams& params() const { return params_; }
  std::span<const double> c_nodes() const { return c_; }

  void rhs(std::span<const double> u, std::span<const double> v, std::span<double> du, std::span<double> dv) const;

  /// Advances `state` by one classical RK4 step in place. Throws DivergenceError
  /// when any |u| exceeds 1e6 or becomes non-finite.
  void step(FieldState& state, double dt) const;

  /// Explicit-diffusion guard eps dx^2 / (2 d).
  double stable_dt() const;

 private:
  ModelParams params_;
  std::vector<double> c_;
  mutable std::vector<double> k_u_[4];
  mutable std::vector<double> k_v_[4];
  mutable std::vector<double> stage_u_;
  mutable std::vector<double> stage_v_;
  mutable std::vector<double> lap_;
};

FieldState rk4_step(const FieldState& state, const ReactionDiffusion& system, double dt);

enum class Regime { steady, oscillatory, indeterminate };

std::string to_string(Regime r);

struct OscillationSummary {
  Regime regime = Regime::indeterminate;
  double peak_to_peak = 0.0;  // over the tail window
  double tail_mean = 0.0;
  std::optional<double> period;
  std::size_t crossings = 0;
};

struct ClassificationThresholds {
  double steady_below = 1e-5;
  double oscillatory_above = 1e-2;
  double tail_fraction = 0.8;  // window is [tail_fraction * t_end, t_end]
};

/// Classifies a sampled series over its tail window; the period is the mean spacing of
/// upward crossings of the tail mean (crossing times linearly interpolated).
OscillationSummary classify_series(std::span<const double> t, std::span<const double> values, double t_end,
                                   const ClassificationThresholds& thresholds = {});

struct TraceProbe {
  std::vector<double> probe_x;
  std::vector<std::size_t> probe_index;
  std::vector<double> t;
  std::vector<std::vector<double>> u;  // u[probe][sample]
};

struct SimulationOptions {
  double t_end = 600.0;
  double dt = 1e-4;
  double sample_dt = 1e-2;
  std::vector<double> probe_x;         // empty: {-a, 0}
  std::vector<double> snapshot_times;
  double perturbation = 1e-3;          // amplitude of the mode-0 kick on u
  std::optional<FieldState> initial;   // custom initial state replaces stationary + kick
  std::function<void(const FieldState&)> observer;  // called at every sample time
  ClassificationThresholds thresholds;
};

struct SimulationResult {
  FieldState final_state;
  TraceProbe probe;
  std::vector<double> center_series;   // u(0, t) at probe.t
  std::vector<FieldState> snapshots;
  OscillationSummary summary;
  bool dt_exceeds_guard = false;
};

/// Default initial condition: discrete stationary state plus perturbation * u0 on u,
/// with u0 the L2-normalized ground eigenfunction on the same grid.
FieldState perturbed_stationary(const ModelParams& params, const HeterogeneityProfile& profile, double amplitude);

SimulationResult simulate(const ModelParams& params, const HeterogeneityProfile& profile,
                          const SimulationOptions& options = {});

struct OdeResult {
  std::vector<double> t;
  std::vector<double> u;
  std::vector<double> v;
  OscillationSummary summary;
};

/// Planar system eps u_t = f(u) - v, v_t = u - c by RK4, sampled every sample_dt.
OdeResult ode_simulate(double c, double epsilon, double t_end, double dt, double u_init, double v_init,
                       double sample_dt = 1e-2, const ClassificationThresholds& thresholds = {});

}  // namespace fhn
