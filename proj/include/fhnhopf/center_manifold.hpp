#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fhnhopf/model.hpp"
#include "fhnhopf/spectral.hpp"
#include "fhnhopf/tridiagonal.hpp"

namespace fhn {

/// Normalization and quadratic coefficients of the reduced equation.
struct ProjectionCoefficients {
  double C = 0.0;                // 2 eps * integral u0^2
  double cubic_moment = 0.0;     // integral u_bar u0^3
  double g20 = 0.0;              // -(3/C) cubic_moment
  double g11 = 0.0;              // -(6/C) cubic_moment
};

ProjectionCoefficients projection_coefficients(std::span<const double> u0, const StationaryState& stationary,
                                               const ModelParams& params);

/// First component of eps * H: -6 u_bar u0^2 + 12 (eps/C) u0 * integral(u_bar u0^3).
std::vector<double> quadratic_forcing(std::span<const double> u0, const StationaryState& stationary,
                                      const ModelParams& params);

/// Solves (3/2 i sqrt(eps) - f'(u_bar)) w - d w'' = quadratic_forcing with Neumann conditions.
std::vector<cplx> solve_w20(std::span<const double> u0, const StationaryState& stationary, const ModelParams& params);

/// Independent solve of the conjugate (w02) system; equals conj(w20) in exact arithmetic.
std::vector<cplx> solve_w02(std::span<const double> u0, const StationaryState& stationary, const ModelParams& params);

struct SecondOrderTerms {
  std::vector<double> w11_first;   // identically 0
  std::vector<double> w11_second;  // eps * H^1
  std::vector<cplx> w02_first;     // conj(w20)
};

/// `h1` is the first component of H (i.e. quadratic_forcing / eps).
SecondOrderTerms w11_w02(std::span<const cplx> w20, std::span<const double> h1, double epsilon);

struct LyapunovReport {
  double nu0 = 0.0;
  std::complex<double> lambda1;
  double C = 0.0;
  double omega0 = 0.0;
  double g20 = 0.0;
  double g11 = 0.0;
  std::complex<double> g21;
  std::vector<double> x;
  std::vector<cplx> w20_profile;
  double quartic_moment = 0.0;   // integral u0^4
  double l1 = 0.0;               // closed form
  double l1_alt = 0.0;           // (1/(2 omega0^2)) Re(i g20 g11 + omega0 g21)
  double residual = 0.0;         // |l1 - l1_alt|
};

/// Both l1 formulas from the ground eigenpair. Valid at p0; evaluable elsewhere for testing.
LyapunovReport lyapunov_l1(const EigenPair& ground, const StationaryState& stationary, const ModelParams& params);

/// Convenience: stationary state, ground eigenpair and report for `params` and `profile`.
LyapunovReport lyapunov_at(const ModelParams& params, const HeterogeneityProfile& profile);

/// z_t = lambda1 z + quadratic (z + zbar)^2 + cubic z^2 zbar + ...
struct ReducedEquation {
  std::complex<double> lambda1;
  double quadratic = 0.0;
  std::complex<double> cubic;
};

ReducedEquation reduced_equation_coeffs(const LyapunovReport& report);

/// (p, q) and (p, qbar) for q = u0 (1, -i sqrt(eps)), p = q / C under
/// ((u1, v1), (u2, v2)) = eps * integral conj(u1) u2 + integral conj(v1) v2.
struct AdjointPairing {
  cplx p_q;
  cplx p_qbar;
};

AdjointPairing adjoint_pairing(std::span<const double> u0, double dx, double epsilon);

}  // namespace fhn
