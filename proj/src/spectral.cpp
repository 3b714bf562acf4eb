#include "fhnhopf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fhnhopf/errors.hpp"
#include "fhnhopf/quadrature.hpp"

namespace fhn {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Largest h * |q| / d allowed; beyond roughly 2 the phase overshoots its
// attractor near k pi in strongly decaying regions and the mode count slips.
constexpr double kMaxPhaseStep = 0.5;

inline double phase_rate(double theta, double q, double nu, double d) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return c * c + ((q + nu) / d) * s * s;
}

inline double log_amplitude_rate(double theta, double q, double nu, double d) {
  return 0.5 * std::sin(2.0 * theta) * (1.0 - (nu + q) / d);
}

void check_grid(const StationaryState& stationary, const ModelParams& params) {
  if (stationary.size() != params.nx)
    throw ConfigError("spectral problem: stationary state and parameters use different grids");
}

}  // namespace

SpectralProblem::SpectralProblem(const StationaryState& stationary, const ModelParams& params, int substeps)
    : d_(params.d),
      a_(params.a),
      dx_(params.dx()),
      substeps_(substeps),
      mode_(PotentialMode::interpolated),
      nodes_(stationary.x),
      node_potential_(stationary.fprime_bar) {
  check_grid(stationary, params);
  tabulate();
}

SpectralProblem::SpectralProblem(const StationaryState& stationary, const ModelParams& params,
                                 const HeterogeneityProfile& profile, int substeps)
    : d_(params.d),
      a_(params.a),
      dx_(params.dx()),
      substeps_(substeps),
      mode_(PotentialMode::exact),
      profile_(profile),
      nodes_(stationary.x),
      node_potential_(stationary.fprime_bar) {
  check_grid(stationary, params);
  tabulate();
}

double SpectralProblem::potential(double x) const {
  x = std::clamp(x, -a_, a_);
  if (mode_ == PotentialMode::exact) return f_prime(profile_->value(x));
  const std::size_t cells = nodes_.size() - 1;
  const double s = (x + a_) / dx_;
  const std::size_t i = std::min(static_cast<std::size_t>(s), cells - 1);
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * node_potential_[i] + t * node_potential_[i + 1];
}

void SpectralProblem::tabulate() {
  if (substeps_ < 1) throw ConfigError("spectral problem: substeps must be positive");
  double q_max = 0.0;
  for (double q : node_potential_) q_max = std::max(q_max, std::abs(q));
  const double needed = std::ceil(dx_ * q_max / (d_ * kMaxPhaseStep));
  if (needed > substeps_) substeps_ = static_cast<int>(needed);
  const std::size_t halves = 2 * (nodes_.size() - 1) * static_cast<std::size_t>(substeps_);
  const auto m = static_cast<double>(halves);
  half_potential_.resize(halves + 1);
  for (std::size_t k = 0; k <= halves; ++k) {
    if (k % (2 * static_cast<std::size_t>(substeps_)) == 0 && mode_ == PotentialMode::interpolated) {
      half_potential_[k] = node_potential_[k / (2 * static_cast<std::size_t>(substeps_))];
      continue;
    }
    half_potential_[k] = potential(a_ * (2.0 * static_cast<double>(k) - m) / m);
  }
}

namespace {

// Shared integrator; Sink receives (node index, theta, log r) at every node.
template <typename Sink>
double integrate_phase(double nu, const SpectralProblem& problem, bool with_amplitude, Sink&& sink) {
  const std::size_t cells = problem.size() - 1;
  const auto substeps = static_cast<std::size_t>(problem.substeps());
  const double h = problem.dx() / static_cast<double>(substeps);
  const double d = problem.d();

  double theta = kHalfPi;
  double log_r = 0.0;
  sink(0, theta, log_r);
  std::size_t k = 0;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t s = 0; s < substeps; ++s, k += 2) {
      const double q0 = problem.tabulated(k);
      const double qm = problem.tabulated(k + 1);
      const double q1 = problem.tabulated(k + 2);
      const double k1 = phase_rate(theta, q0, nu, d);
      const double k2 = phase_rate(theta + 0.5 * h * k1, qm, nu, d);
      const double k3 = phase_rate(theta + 0.5 * h * k2, qm, nu, d);
      const double k4 = phase_rate(theta + h * k3, q1, nu, d);
      const double next = theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (with_amplitude) {
        log_r += 0.5 * h * (log_amplitude_rate(theta, q0, nu, d) + log_amplitude_rate(next, q1, nu, d));
      }
      theta = next;
    }
    sink(cell + 1, theta, log_r);
  }
  return theta;
}

// Right-to-left counterpart from theta(a) = theta_end, r(a) = 1, down to node `stop`.
// Stable where the eigenfunction decays towards x = a.
template <typename Sink>
void integrate_phase_backward(double nu, double theta_end, std::size_t stop, const SpectralProblem& problem,
                              Sink&& sink) {
  const std::size_t cells = problem.size() - 1;
  const auto substeps = static_cast<std::size_t>(problem.substeps());
  const double h = problem.dx() / static_cast<double>(substeps);
  const double d = problem.d();

  double theta = theta_end;
  double log_r = 0.0;
  sink(cells, theta, log_r);
  std::size_t k = 2 * cells * substeps;
  for (std::size_t cell = cells; cell > stop; --cell) {
    for (std::size_t s = 0; s < substeps; ++s, k -= 2) {
      const double q0 = problem.tabulated(k);
      const double qm = problem.tabulated(k - 1);
      const double q1 = problem.tabulated(k - 2);
      const double k1 = phase_rate(theta, q0, nu, d);
      const double k2 = phase_rate(theta - 0.5 * h * k1, qm, nu, d);
      const double k3 = phase_rate(theta - 0.5 * h * k2, qm, nu, d);
      const double k4 = phase_rate(theta - h * k3, q1, nu, d);
      const double next = theta - h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      log_r -= 0.5 * h * (log_amplitude_rate(theta, q0, nu, d) + log_amplitude_rate(next, q1, nu, d));
      theta = next;
    }
    sink(cell - 1, theta, log_r);
  }
}

std::vector<double> normalized(std::vector<double> u, double dx) {
  std::vector<double> u2(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) u2[i] = u[i] * u[i];
  const double norm = std::sqrt(trapezoid(u2, dx));
  const double scale = (u.front() < 0.0 ? -1.0 : 1.0) / norm;
  for (double& value : u) value *= scale;
  return u;
}

}  // namespace

PruferPath shoot_theta(double nu, const SpectralProblem& problem) {
  PruferPath path;
  path.nu = nu;
  path.theta.resize(problem.size());
  path.r.resize(problem.size());
  path.theta_end = integrate_phase(nu, problem, true, [&](std::size_t i, double theta, double log_r) {
    path.theta[i] = theta;
    path.r[i] = std::exp(log_r);
  });
  return path;
}

double theta_at_end(double nu, const SpectralProblem& problem) {
  return integrate_phase(nu, problem, false, [](std::size_t, double, double) {});
}

double eigenvalue_nu(int n, const SpectralProblem& problem, const EigenvalueOptions& options) {
  if (n < 0) throw ConfigError("eigenvalue_nu: mode index must be nonnegative");
  const double target = kHalfPi + static_cast<double>(n) * std::numbers::pi;
  auto mismatch = [&](double nu) { return theta_at_end(nu, problem) - target; };

  auto bracket_failure = [&](double nu) {
    std::ostringstream msg;
    msg << "eigenvalue_nu: no bracket for mode " << n << " within |nu| <= " << options.max_abs_nu
        << " (last probe " << nu << ")";
    return BracketNotFound(msg.str());
  };

  // theta(a) is increasing in nu, so expand each side until the target is enclosed.
  double lo = -options.initial_half_width;
  double hi = options.initial_half_width;
  double f_lo = mismatch(lo);
  while (f_lo > 0.0) {
    hi = lo;
    lo *= options.growth;
    if (std::abs(lo) > options.max_abs_nu) throw bracket_failure(lo);
    f_lo = mismatch(lo);
  }
  double f_hi = mismatch(hi);
  while (f_hi < 0.0) {
    lo = hi;
    hi = hi > 0.0 ? hi * options.growth : options.initial_half_width;
    if (std::abs(hi) > options.max_abs_nu) throw bracket_failure(hi);
    f_hi = mismatch(hi);
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mismatch(mid);
    if (f_mid == 0.0) return mid;
    (f_mid < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenfunction(const PruferPath& path, double dx) {
  std::vector<double> u(path.theta.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = path.r[i] * std::sin(path.theta[i]);
  return normalized(std::move(u), dx);
}

std::vector<double> eigenfunction(int n, double nu, const SpectralProblem& problem) {
  const std::size_t last = problem.size() - 1;
  const std::size_t mid = last / 2;
  std::vector<double> theta(problem.size());
  std::vector<double> log_r(problem.size());

  double left_theta = 0.0, left_log_r = 0.0;
  integrate_phase(nu, problem, true, [&](std::size_t i, double th, double lr) {
    if (i <= mid) {
      theta[i] = th;
      log_r[i] = lr;
    }
    if (i == mid) {
      left_theta = th;
      left_log_r = lr;
    }
  });
  const double theta_end = kHalfPi + static_cast<double>(n) * std::numbers::pi;
  double right_theta = 0.0, right_log_r = 0.0;
  integrate_phase_backward(nu, theta_end, mid, problem, [&](std::size_t i, double th, double lr) {
    if (i > mid) {
      theta[i] = th;
      log_r[i] = lr;
    } else {
      right_theta = th;
      right_log_r = lr;
    }
  });

  // Same point in the phase plane up to orientation; r fixes the scale.
  const double shift = left_log_r - right_log_r;
  const double sign = std::cos(left_theta - right_theta) < 0.0 ? -1.0 : 1.0;
  std::vector<double> u(problem.size());
  for (std::size_t i = 0; i <= last; ++i) {
    const double value = std::exp(log_r[i] + (i > mid ? shift : 0.0)) * std::sin(theta[i]);
    u[i] = i > mid ? sign * value : value;
  }
  return normalized(std::move(u), problem.dx());
}

TemporalPair temporal_eigs(double nu, double epsilon) {
  const std::complex<double> root = std::sqrt(std::complex<double>(nu * nu - 4.0 * epsilon, 0.0));
  return {(-nu + root) / (2.0 * epsilon), (-nu - root) / (2.0 * epsilon)};
}

std::complex<double> nu_from_lambda(std::complex<double> lambda, double epsilon) {
  return -(1.0 / lambda + lambda * epsilon);
}

EigenPair eigenpair(int n, const SpectralProblem& problem, double epsilon) {
  EigenPair pair;
  pair.n = n;
  pair.nu = eigenvalue_nu(n, problem);
  pair.u = eigenfunction(n, pair.nu, problem);
  const auto lambdas = temporal_eigs(pair.nu, epsilon);
  pair.lambda_plus = lambdas.plus;
  pair.lambda_minus = lambdas.minus;
  return pair;
}

std::vector<EigenPair> spectrum(int modes, const SpectralProblem& problem, double epsilon) {
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(std::max(modes, 0)));
  for (int n = 0; n < modes; ++n) out.push_back(eigenpair(n, problem, epsilon));
  return out;
}

double rayleigh_upper_bound(const StationaryState& stationary, const ModelParams& params) {
  return -trapezoid(stationary.fprime_bar, params.dx()) / (2.0 * params.a);
}

InstabilityCertificate instability_certificate(const StationaryState& stationary, const ModelParams& params,
                                               const SpectralProblem& problem) {
  InstabilityCertificate cert;
  cert.integral = trapezoid(stationary.fprime_bar, params.dx());
  cert.certified = cert.integral > 0.0;
  if (cert.certified) {
    cert.nu0 = eigenvalue_nu(0, problem);
    cert.leading_re_lambda = temporal_eigs(*cert.nu0, params.epsilon).plus.real();
    cert.cross_check_ok = *cert.leading_re_lambda > 0.0;
  }
  return cert;
}

int count_sign_changes(std::span<const double> values, double zero_tol) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= zero_tol) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace fhn
