#include "fhnhopf/bifurcation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "fhnhopf/errors.hpp"
#include "fhnhopf/spectral.hpp"

namespace fhn {

ProfileFamily polynomial_family(double a) {
  return [a](double p) { return HeterogeneityProfile::polynomial(p, a); };
}

double ground_nu(const ModelParams& base, double p, const ProfileFamily& family) {
  const ModelParams params = base.with_p(p);
  const HeterogeneityProfile profile = family(p);
  const StationaryState stationary = stationary_state(params, profile);
  const SpectralProblem problem(stationary, params, profile);
  return eigenvalue_nu(0, problem);
}

double ground_nu(const ModelParams& base, double p) { return ground_nu(base, p, polynomial_family(base.a)); }

int scan_sign_changes(const ModelParams& base, double lo, double hi, double step, const ProfileFamily& family) {
  const auto samples = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double p = std::min(hi, lo + static_cast<double>(i) * step);
    values.push_back(ground_nu(base, p, family));
  }
  return count_sign_changes(values, 0.0);
}

HopfPoint find_p0(const ModelParams& base, double p_lo, double p_hi, const ProfileFamily& family,
                  const HopfSearchOptions& options) {
  if (!(p_lo >= 0.0) || !(p_hi > p_lo)) throw ConfigError("find_p0: bracket must satisfy 0 <= p_lo < p_hi");
  auto nu = [&](double p) { return ground_nu(base, p, family); };

  double lo = p_lo;
  double hi = std::min(p_hi, options.p_ceiling);
  double nu_lo = nu(lo);
  while (nu_lo >= 0.0) {
    if (lo == 0.0) throw NoSignChange("find_p0: nu_0 is nonnegative down to p = 0");
    lo = lo > 1e-3 ? 0.5 * lo : 0.0;
    nu_lo = nu(lo);
  }
  double nu_hi = nu(hi);
  while (nu_hi <= 0.0) {
    if (hi >= options.p_ceiling) {
      std::ostringstream msg;
      msg << "find_p0: nu_0 stays negative up to p = " << options.p_ceiling << " (nu_0 = " << nu_hi << ")";
      throw NoSignChange(msg.str());
    }
    lo = hi;
    nu_lo = nu_hi;
    hi = std::min(2.0 * hi, options.p_ceiling);
    nu_hi = nu(hi);
  }

  HopfPoint result;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.sign_changes = scan_sign_changes(base, lo, hi, options.scan_step, family);

  double mid = 0.5 * (lo + hi);
  double nu_mid = nu(mid);
  int iterations = 1;
  while (iterations < options.max_iterations) {
    if (std::abs(nu_mid) < options.nu_tolerance && hi - lo < options.p_tolerance) break;
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    (nu_mid < 0.0 ? lo : hi) = mid;
    mid = 0.5 * (lo + hi);
    nu_mid = nu(mid);
    ++iterations;
  }
  result.p0 = mid;
  result.nu0 = nu_mid;
  result.lambda = temporal_eigs(nu_mid, base.epsilon).plus;
  result.iterations = iterations;
  return result;
}

HopfPoint find_p0(const ModelParams& base, double p_lo, double p_hi, const HopfSearchOptions& options) {
  return find_p0(base, p_lo, p_hi, polynomial_family(base.a), options);
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::critical:
      return "critical";
  }
  return "unknown";
}

Stability classify(double nu0, double re_lambda0, double critical_tolerance) {
  if (std::abs(nu0) < critical_tolerance) return Stability::critical;
  return re_lambda0 > 0.0 ? Stability::unstable : Stability::stable;
}

std::vector<SweepRow> stability_sweep(std::span<const double> p_values, const ModelParams& base, unsigned threads,
                                      const ProfileFamily& family) {
  if (p_values.empty()) throw ConfigError("stability_sweep: no p values");
  std::vector<double> ps(p_values.begin(), p_values.end());
  std::sort(ps.begin(), ps.end());
  if (ps.front() < 0.0) throw ConfigError("stability_sweep: p values must be nonnegative");
  const ProfileFamily fam = family ? family : polynomial_family(base.a);

  std::vector<SweepRow> rows(ps.size());
  auto evaluate = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.p = ps[i];
    try {
      row.nu0 = ground_nu(base, row.p, fam);
      const auto lambda = temporal_eigs(row.nu0, base.epsilon).plus;
      row.re_lambda0 = lambda.real();
      row.im_lambda0 = lambda.imag();
      row.classification = classify(row.nu0, row.re_lambda0);
    } catch (const Error& e) {
      row.nu0 = row.re_lambda0 = row.im_lambda0 = std::nan("");
      row.error = e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) evaluate(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) evaluate(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace fhn
