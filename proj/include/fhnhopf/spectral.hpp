#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "fhnhopf/model.hpp"

namespace fhn {

/// Prufer phase/amplitude traces at the grid nodes for one spectral shift nu.
struct PruferPath {
  double nu = 0.0;
  std::vector<double> theta;  // theta[0] == pi/2
  std::vector<double> r;      // r[0] == 1
  double theta_end = 0.0;     // theta(a)
};

struct TemporalPair {
  std::complex<double> plus;
  std::complex<double> minus;
};

struct EigenPair {
  int n = 0;
  double nu = 0.0;
  std::vector<double> u;  // L2-normalized, u(-a) > 0
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
};

/// How f'(u_bar(x)) is evaluated between grid nodes.
enum class PotentialMode { exact, interpolated };

/// The Neumann problem -d u'' - f'(u_bar) u = nu u on (-a, a).
///
/// The potential q(x) = f'(u_bar(x)) is tabulated once at every RK4 half-step
/// (substep h = dx / substeps). With a profile the table uses the exact
/// f'(c(x)); without one it interpolates the node values piecewise-linearly.
/// The substep count is raised above the requested one when h * max|q| / d
/// would exceed 0.5 (steep potentials or small d).
class SpectralProblem {
 public:
  SpectralProblem(const StationaryState& stationary, const ModelParams& params, int substeps = 10);
  SpectralProblem(const StationaryState& stationary, const ModelParams& params,
                  const HeterogeneityProfile& profile, int substeps = 10);

  double d() const { return d_; }
  double a() const { return a_; }
  double dx() const { return dx_; }
  int substeps() const { return substeps_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> node_potential() const { return node_potential_; }
  PotentialMode mode() const { return mode_; }

  /// q(x) = f'(u_bar(x)) along the same evaluation path used by the shooting.
  double potential(double x) const;

  /// Value at half-step index k (x = -a + k h / 2).
  double tabulated(std::size_t k) const { return half_potential_[k]; }

 private:
  void tabulate();

  double d_;
  double a_;
  double dx_;
  int substeps_;
  PotentialMode mode_;
  std::optional<HeterogeneityProfile> profile_;
  std::vector<double> nodes_;
  std::vector<double> node_potential_;
  std::vector<double> half_potential_;
};

/// Integrates theta' = cos^2 theta + ((q + nu)/d) sin^2 theta from theta(-a) = pi/2
/// with fixed-step RK4, and r by trapezoid quadrature of its exponent on the substep trace.
PruferPath shoot_theta(double nu, const SpectralProblem& problem);

/// theta(a) only; the hot path of the eigenvalue search.
double theta_at_end(double nu, const SpectralProblem& problem);

struct EigenvalueOptions {
  double tolerance = 1e-10;
  double initial_half_width = 1.0;
  double growth = 2.0;
  double max_abs_nu = 1e6;
};

/// nu_n with theta(a; nu_n) = pi/2 + n pi. Throws BracketNotFound.
double eigenvalue_nu(int n, const SpectralProblem& problem, const EigenvalueOptions& options = {});

/// u = r sin(theta), scaled so that the trapezoid integral of u^2 is 1 and u(-a) > 0.
std::vector<double> eigenfunction(const PruferPath& path, double dx);

/// Same normalization, but shot from both ends (theta(a) = pi/2 + n pi) and joined at the
/// middle node, so decaying tails near x = +-a are not swamped by the growing solution.
/// This is what eigenpair() uses.
std::vector<double> eigenfunction(int n, double nu, const SpectralProblem& problem);

/// Roots of epsilon lambda^2 + nu lambda + 1 = 0; `plus` carries the + sign of the root.
TemporalPair temporal_eigs(double nu, double epsilon);

/// Inverse map nu = -(1/lambda + lambda epsilon).
std::complex<double> nu_from_lambda(std::complex<double> lambda, double epsilon);

EigenPair eigenpair(int n, const SpectralProblem& problem, double epsilon);
std::vector<EigenPair> spectrum(int modes, const SpectralProblem& problem, double epsilon);

/// Rayleigh quotient of the constant test function: -(1/2a) * integral of f'(u_bar).
double rayleigh_upper_bound(const StationaryState& stationary, const ModelParams& params);

struct InstabilityCertificate {
  bool certified = false;  // integral of f'(u_bar) > 0
  double integral = 0.0;
  std::optional<double> nu0;              // set when certified
  std::optional<double> leading_re_lambda;
  bool cross_check_ok = true;             // Re lambda_0 > 0 whenever certified
};

InstabilityCertificate instability_certificate(const StationaryState& stationary, const ModelParams& params,
                                               const SpectralProblem& problem);

/// Count of sign changes between consecutive nodes, ignoring values below `zero_tol` in magnitude.
int count_sign_changes(std::span<const double> values, double zero_tol = 1e-10);

}  // namespace fhn
