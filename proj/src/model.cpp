#include "fhnhopf/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fhnhopf/errors.hpp"

namespace fhn {

double f_cubic(double u) { return -u * u * u + 3.0 * u; }

double f_prime(double u) { return -3.0 * u * u + 3.0; }

void ModelParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid model parameters: " + what); };
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon must be positive");
  if (!(d > 0.0) || !std::isfinite(d)) fail("d must be positive");
  if (!(a > 0.0) || !std::isfinite(a)) fail("a must be positive");
  if (!(p >= 0.0) || !std::isfinite(p)) fail("p must be nonnegative");
  if (nx < 5) fail("nx must be at least 5");
  if (nx % 2 == 0) fail("nx must be odd so that x = 0 is a grid node");
}

Grid::Grid(double a, std::size_t nx) : a_(a), dx_(2.0 * a / static_cast<double>(nx - 1)), nodes_(nx) {
  if (nx < 3) throw ConfigError("grid needs at least 3 nodes");
  const auto m = static_cast<double>(nx - 1);
  // Symmetric construction: endpoints and the midpoint are exact.
  for (std::size_t i = 0; i < nx; ++i) {
    nodes_[i] = a * (2.0 * static_cast<double>(i) - m) / m;
  }
}

std::size_t Grid::nearest_index(double x) const {
  const double s = (std::clamp(x, -a_, a_) + a_) / dx_;
  return std::min(static_cast<std::size_t>(std::lround(s)), nodes_.size() - 1);
}

std::string to_string(ProfileKind kind) {
  return kind == ProfileKind::polynomial ? "polynomial" : "constant";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "polynomial") return ProfileKind::polynomial;
  if (name == "constant" || name == "constant-override") return ProfileKind::constant;
  throw ConfigError("unknown profile_kind '" + name + "' (expected polynomial or constant)");
}

HeterogeneityProfile HeterogeneityProfile::polynomial(double p, double a) {
  return {ProfileKind::polynomial, p, a, 0.0};
}

HeterogeneityProfile HeterogeneityProfile::constant(double c0, double a) {
  return {ProfileKind::constant, 0.0, a, c0};
}

double HeterogeneityProfile::value(double x) const {
  if (kind_ == ProfileKind::constant) return c0_;
  const double s2 = (x / a_) * (x / a_);
  return p_ * (s2 * s2 - 2.0 * s2);
}

double HeterogeneityProfile::derivative(double x) const {
  if (kind_ == ProfileKind::constant) return 0.0;
  const double a2 = a_ * a_;
  return p_ * (4.0 * x * x * x / (a2 * a2) - 4.0 * x / a2);
}

double HeterogeneityProfile::second_derivative(double x) const {
  if (kind_ == ProfileKind::constant) return 0.0;
  const double a2 = a_ * a_;
  return p_ * (12.0 * x * x / (a2 * a2) - 4.0 / a2);
}

HeterogeneityProfile HeterogeneityProfile::with_amplitude(double p) const {
  HeterogeneityProfile copy = *this;
  copy.p_ = p;
  return copy;
}

double c_profile(double x, const HeterogeneityProfile& profile) {
  const double a = profile.half_length();
  if (std::abs(x) > a * (1.0 + 1e-14)) {
    std::ostringstream msg;
    msg << "c_profile: x = " << x << " outside [-" << a << ", " << a << "]";
    throw DomainError(msg.str());
  }
  return profile.value(x);
}

bool ProfileReport::all_passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const ConditionCheck& c) { return c.status == CheckStatus::fail; });
}

const ConditionCheck* ProfileReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ProfileReport validate_profile(const HeterogeneityProfile& profile, const Grid& grid) {
  ProfileReport report;
  report.validation_only = profile.kind() == ProfileKind::constant;
  report.degenerate = profile.kind() == ProfileKind::polynomial && profile.amplitude() == 0.0;

  const auto nodes = grid.nodes();
  const double scale = std::max(1.0, std::abs(profile.amplitude()) + std::abs(profile.constant_value()));
  const double tol = 1e-12 * scale;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  };
  auto vacuous = [&](std::string name) {
    report.checks.push_back({std::move(name), CheckStatus::vacuous, "flat profile (p = 0)"});
  };

  bool nonpositive = true;
  for (double x : nodes) nonpositive = nonpositive && profile.value(x) <= 0.0;
  add("c<=0", nonpositive);

  const double c_center = profile.value(nodes[grid.center_index()]);
  add("c(0)=0", std::abs(c_center) <= tol,
      report.validation_only ? "constant-override profile is for validation only" : "");

  if (report.degenerate) {
    vacuous("c'>0 on (-a,0)");
    vacuous("c'<0 on (0,a)");
  } else {
    bool left = true;
    bool right = true;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
      const double x = nodes[i];
      if (x < 0.0) left = left && profile.derivative(x) > 0.0;
      if (x > 0.0) right = right && profile.derivative(x) < 0.0;
    }
    add("c'>0 on (-a,0)", left);
    add("c'<0 on (0,a)", right);
  }

  add("c'(+-a)=0", std::abs(profile.derivative(nodes.front())) <= tol &&
                       std::abs(profile.derivative(nodes.back())) <= tol);

  if (report.degenerate) {
    vacuous("decreasing in p");
  } else if (profile.kind() == ProfileKind::constant) {
    add("decreasing in p", false, "constant-override does not depend on p");
  } else {
    const double p1 = profile.amplitude();
    const auto upper = profile.with_amplitude(1.5 * p1);
    bool ok = true;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double x = nodes[i];
      const double c1 = profile.value(x);
      const double c2 = upper.value(x);
      ok = ok && (i == grid.center_index() ? c2 <= c1 : c2 < c1);
    }
    add("decreasing in p", ok);
  }
  return report;
}

StationaryState stationary_state(const ModelParams& params, const HeterogeneityProfile& profile) {
  if (std::abs(profile.half_length() - params.a) > 1e-14 * params.a)
    throw ConfigError("stationary_state: profile and parameters disagree on a");
  if (profile.kind() == ProfileKind::polynomial && profile.amplitude() != params.p)
    throw ConfigError("stationary_state: profile and parameters disagree on p");

  const Grid grid(params);
  StationaryState s;
  s.x.assign(grid.nodes().begin(), grid.nodes().end());
  s.u_bar.resize(s.x.size());
  s.v_bar.resize(s.x.size());
  s.fprime_bar.resize(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double u = profile.value(s.x[i]);
    s.u_bar[i] = u;
    s.v_bar[i] = f_cubic(u) + params.d * profile.second_derivative(s.x[i]);
    s.fprime_bar[i] = f_prime(u);
  }
  return s;
}

}  // namespace fhn
