#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fhn {

/// Cubic nonlinearity f(u) = -u^3 + 3u.
double f_cubic(double u);
/// f'(u) = -3u^2 + 3.
double f_prime(double u);

struct ModelParams {
  double epsilon = 0.1;  // time-scale ratio
  double d = 1.0;        // diffusion coefficient
  double a = 1.0;        // half-domain length, domain is (-a, a)
  double p = 0.0;        // heterogeneity amplitude
  std::size_t nx = 201;  // node count, odd so that x = 0 is a node

  double dx() const { return 2.0 * a / static_cast<double>(nx - 1); }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  ModelParams with_p(double new_p) const {
    ModelParams copy = *this;
    copy.p = new_p;
    return copy;
  }
  ModelParams with_nx(std::size_t new_nx) const {
    ModelParams copy = *this;
    copy.nx = new_nx;
    return copy;
  }
};

/// Uniform node set on [-a, a]; the middle node is exactly 0.
class Grid {
 public:
  Grid(double a, std::size_t nx);
  explicit Grid(const ModelParams& params) : Grid(params.a, params.nx) {}

  std::span<const double> nodes() const { return nodes_; }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t center_index() const { return nodes_.size() / 2; }
  double dx() const { return dx_; }
  double half_length() const { return a_; }

  /// Index of the node nearest to x (x clamped into the domain).
  std::size_t nearest_index(double x) const;

 private:
  double a_;
  double dx_;
  std::vector<double> nodes_;
};

enum class ProfileKind { polynomial, constant };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Excitability profile c(x). The polynomial family is p(x^4/a^4 - 2x^2/a^2);
/// the constant kind exists only for analytic validation.
class HeterogeneityProfile {
 public:
  static HeterogeneityProfile polynomial(double p, double a);
  static HeterogeneityProfile constant(double c0, double a);

  ProfileKind kind() const { return kind_; }
  double amplitude() const { return p_; }
  double half_length() const { return a_; }
  double constant_value() const { return c0_; }

  // Unchecked evaluation; callers that need the |x| <= a contract use c_profile.
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  HeterogeneityProfile with_amplitude(double p) const;

 private:
  HeterogeneityProfile(ProfileKind kind, double p, double a, double c0)
      : kind_(kind), p_(p), a_(a), c0_(c0) {}

  ProfileKind kind_;
  double p_;
  double a_;
  double c0_;
};

/// c(x); throws DomainError when |x| > a.
double c_profile(double x, const HeterogeneityProfile& profile);

enum class CheckStatus { pass, fail, vacuous };

struct ConditionCheck {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct ProfileReport {
  std::vector<ConditionCheck> checks;
  bool validation_only = false;  // constant-override profile
  bool degenerate = false;       // p == 0, flat profile

  bool all_passed() const;
  const ConditionCheck* find(const std::string& name) const;
};

ProfileReport validate_profile(const HeterogeneityProfile& profile, const Grid& grid);

struct StationaryState {
  std::vector<double> x;
  std::vector<double> u_bar;
  std::vector<double> v_bar;
  std::vector<double> fprime_bar;

  std::size_t size() const { return x.size(); }
};

/// Equilibrium u = c(x), v = f(u) + d c''(x) with the analytic second derivative.
StationaryState stationary_state(const ModelParams& params, const HeterogeneityProfile& profile);

}  // namespace fhn
