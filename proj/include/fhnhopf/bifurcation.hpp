#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fhnhopf/model.hpp"

namespace fhn {

/// Maps the bifurcation parameter to a profile (the polynomial family by default).
using ProfileFamily = std::function<HeterogeneityProfile(double)>;

ProfileFamily polynomial_family(double a);

/// Ground spatial eigenvalue nu_0 at parameter value p.
double ground_nu(const ModelParams& base, double p, const ProfileFamily& family);
double ground_nu(const ModelParams& base, double p);

struct HopfPoint {
  double p0 = 0.0;
  double nu0 = 0.0;
  std::complex<double> lambda;  // leading temporal eigenvalue at p0
  double bracket_lo = 0.0;      // bracket after expansion
  double bracket_hi = 0.0;
  int sign_changes = 0;         // sign scan of nu_0 over the bracket
  int iterations = 0;
};

struct HopfSearchOptions {
  double p_tolerance = 1e-6;
  double nu_tolerance = 1e-8;
  double p_ceiling = 64.0;
  double scan_step = 0.1;
  int max_iterations = 200;
};

/// Locates p0 with nu_0(p0) = 0 by bisection. The bracket is expanded
/// geometrically (down towards 0, up to p_ceiling) until nu_0 changes sign;
/// throws NoSignChange otherwise.
HopfPoint find_p0(const ModelParams& base, double p_lo, double p_hi, const ProfileFamily& family,
                  const HopfSearchOptions& options = {});
HopfPoint find_p0(const ModelParams& base, double p_lo, double p_hi, const HopfSearchOptions& options = {});

/// Number of sign changes of nu_0 sampled on [lo, hi] at the given step.
int scan_sign_changes(const ModelParams& base, double lo, double hi, double step, const ProfileFamily& family);

enum class Stability { stable, unstable, critical };

std::string to_string(Stability s);

struct SweepRow {
  double p = 0.0;
  double nu0 = 0.0;
  double re_lambda0 = 0.0;
  double im_lambda0 = 0.0;
  Stability classification = Stability::stable;
  std::optional<std::string> error;  // eigensolver failure for this row
};

Stability classify(double nu0, double re_lambda0, double critical_tolerance = 1e-6);

/// One row per p, sorted by p. Rows are independent and spread over `threads` workers.
std::vector<SweepRow> stability_sweep(std::span<const double> p_values, const ModelParams& base,
                                      unsigned threads = 1, const ProfileFamily& family = {});

}  // namespace fhn
