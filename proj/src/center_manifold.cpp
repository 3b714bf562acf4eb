#include "fhnhopf/center_manifold.hpp"

#include <cmath>

#include "fhnhopf/errors.hpp"
#include "fhnhopf/quadrature.hpp"

namespace fhn {

namespace {

void check_sizes(std::span<const double> u0, const StationaryState& stationary) {
  if (u0.size() != stationary.size()) throw ConfigError("center manifold: eigenfunction and stationary grids differ");
}

std::vector<cplx> solve_with_shift(cplx shift, std::span<const double> u0, const StationaryState& stationary,
                                   const ModelParams& params) {
  const auto forcing = quadratic_forcing(u0, stationary, params);
  const std::vector<cplx> rhs(forcing.begin(), forcing.end());
  return solve_tridiagonal(neumann_helmholtz_system(shift, stationary.fprime_bar, params.d, params.dx(), rhs));
}

}  // namespace

ProjectionCoefficients projection_coefficients(std::span<const double> u0, const StationaryState& stationary,
                                               const ModelParams& params) {
  check_sizes(u0, stationary);
  std::vector<double> sq(u0.size());
  std::vector<double> cube(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    sq[i] = u0[i] * u0[i];
    cube[i] = stationary.u_bar[i] * sq[i] * u0[i];
  }
  ProjectionCoefficients out;
  out.C = 2.0 * params.epsilon * trapezoid(sq, params.dx());
  out.cubic_moment = trapezoid(cube, params.dx());
  out.g20 = -3.0 / out.C * out.cubic_moment;
  out.g11 = -6.0 / out.C * out.cubic_moment;
  return out;
}

std::vector<double> quadratic_forcing(std::span<const double> u0, const StationaryState& stationary,
                                      const ModelParams& params) {
  const auto coeffs = projection_coefficients(u0, stationary, params);
  const double eps = params.epsilon;
  std::vector<double> out(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    out[i] = -6.0 * stationary.u_bar[i] * u0[i] * u0[i] + 12.0 * (eps / coeffs.C) * u0[i] * coeffs.cubic_moment;
  }
  return out;
}

std::vector<cplx> solve_w20(std::span<const double> u0, const StationaryState& stationary, const ModelParams& params) {
  return solve_with_shift(cplx(0.0, 1.5 * std::sqrt(params.epsilon)), u0, stationary, params);
}

std::vector<cplx> solve_w02(std::span<const double> u0, const StationaryState& stationary, const ModelParams& params) {
  return solve_with_shift(cplx(0.0, -1.5 * std::sqrt(params.epsilon)), u0, stationary, params);
}

SecondOrderTerms w11_w02(std::span<const cplx> w20, std::span<const double> h1, double epsilon) {
  if (w20.size() != h1.size()) throw ConfigError("w11_w02: size mismatch");
  SecondOrderTerms out;
  out.w11_first.assign(w20.size(), 0.0);
  out.w11_second.resize(w20.size());
  out.w02_first.resize(w20.size());
  for (std::size_t i = 0; i < w20.size(); ++i) {
    out.w11_second[i] = epsilon * h1[i];
    out.w02_first[i] = std::conj(w20[i]);
  }
  return out;
}

LyapunovReport lyapunov_l1(const EigenPair& ground, const StationaryState& stationary, const ModelParams& params) {
  const std::span<const double> u0 = ground.u;
  check_sizes(u0, stationary);
  const double dx = params.dx();
  const double eps = params.epsilon;

  LyapunovReport r;
  r.nu0 = ground.nu;
  r.lambda1 = ground.lambda_plus;
  r.x = stationary.x;
  const auto coeffs = projection_coefficients(u0, stationary, params);
  r.C = coeffs.C;
  r.g20 = coeffs.g20;
  r.g11 = coeffs.g11;
  r.omega0 = 1.0 / std::sqrt(eps);
  r.w20_profile = solve_w20(u0, stationary, params);

  std::vector<double> quartic(u0.size());
  std::vector<cplx> coupling(u0.size());
  std::vector<double> coupling_re(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double sq = u0[i] * u0[i];
    quartic[i] = sq * sq;
    coupling[i] = sq * stationary.u_bar[i] * r.w20_profile[i];
    coupling_re[i] = stationary.u_bar[i] * sq * r.w20_profile[i].real();
  }
  r.quartic_moment = trapezoid(quartic, dx);
  r.g21 = -3.0 / r.C * (trapezoid(std::span<const cplx>(coupling), dx) + r.quartic_moment);

  r.l1 = -3.0 * std::sqrt(eps) / (2.0 * r.C) * (r.quartic_moment + trapezoid(coupling_re, dx));
  const cplx i_unit(0.0, 1.0);
  r.l1_alt = (i_unit * r.g20 * r.g11 + r.omega0 * r.g21).real() / (2.0 * r.omega0 * r.omega0);
  r.residual = std::abs(r.l1 - r.l1_alt);
  return r;
}

LyapunovReport lyapunov_at(const ModelParams& params, const HeterogeneityProfile& profile) {
  const StationaryState stationary = stationary_state(params, profile);
  const SpectralProblem problem(stationary, params, profile);
  return lyapunov_l1(eigenpair(0, problem, params.epsilon), stationary, params);
}

ReducedEquation reduced_equation_coeffs(const LyapunovReport& report) {
  return {report.lambda1, report.g20, report.g21};
}

AdjointPairing adjoint_pairing(std::span<const double> u0, double dx, double epsilon) {
  const double root = std::sqrt(epsilon);
  std::vector<cplx> q1(u0.size());
  std::vector<cplx> q2(u0.size());
  std::vector<double> sq(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) {
    q1[i] = u0[i];
    q2[i] = cplx(0.0, -root) * u0[i];
    sq[i] = u0[i] * u0[i];
  }
  const double C = 2.0 * epsilon * trapezoid(sq, dx);

  auto inner = [&](const std::vector<cplx>& a1, const std::vector<cplx>& a2, const std::vector<cplx>& b1,
                   const std::vector<cplx>& b2) {
    std::vector<cplx> first(a1.size());
    std::vector<cplx> second(a1.size());
    for (std::size_t i = 0; i < a1.size(); ++i) {
      first[i] = std::conj(a1[i]) * b1[i];
      second[i] = std::conj(a2[i]) * b2[i];
    }
    return epsilon * trapezoid(std::span<const cplx>(first), dx) + trapezoid(std::span<const cplx>(second), dx);
  };

  std::vector<cplx> p1(q1.size());
  std::vector<cplx> p2(q2.size());
  std::vector<cplx> qbar1(q1.size());
  std::vector<cplx> qbar2(q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) {
    p1[i] = q1[i] / C;
    p2[i] = q2[i] / C;
    qbar1[i] = std::conj(q1[i]);
    qbar2[i] = std::conj(q2[i]);
  }
  return {inner(p1, p2, q1, q2), inner(p1, p2, qbar1, qbar2)};
}

}  // namespace fhn
