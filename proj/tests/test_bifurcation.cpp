#include <cmath>
#include <vector>

#include "doctest.h"
#include "fhnhopf/bifurcation.hpp"
#include "fhnhopf/errors.hpp"
#include "fhnhopf/spectral.hpp"
#include "helpers.hpp"

using namespace fhn;
using fhn::testing::params_for;

namespace {
ProfileFamily constant_family(double a) {
  return [a](double p) { return HeterogeneityProfile::constant(p, a); };
}
}  // namespace

TEST_SUITE("bifurcation") {
  TEST_CASE("constant family crosses at c = 1") {
    // nu_0 = -f'(c) = 3c^2 - 3.
    const auto base = params_for(0.0, 101);
    const auto family = constant_family(base.a);
    CHECK(ground_nu(base, 0.5, family) == doctest::Approx(-2.25).epsilon(1e-8));
    const auto hopf = find_p0(base, 0.2, 3.0, family);
    CHECK(std::abs(hopf.p0 - 1.0) < 1e-6);
    CHECK(std::abs(hopf.nu0) < 1e-8);
    CHECK(hopf.sign_changes == 1);
    CHECK(hopf.lambda.imag() == doctest::Approx(1.0 / std::sqrt(0.1)).epsilon(1e-6));
  }

  TEST_CASE("polynomial family: p0 separates unstable from stable") {
    const auto base = params_for(0.0);
    const auto hopf = find_p0(base, 0.5, 4.0);
    CHECK(std::abs(hopf.nu0) < 1e-8);
    CHECK(hopf.sign_changes == 1);
    CHECK(hopf.p0 > hopf.bracket_lo);
    CHECK(hopf.p0 < hopf.bracket_hi);
    CHECK(ground_nu(base, hopf.p0 - 0.05) < 0.0);
    CHECK(ground_nu(base, hopf.p0 + 0.05) > 0.0);
    CHECK(std::abs(hopf.lambda.real()) < 1e-6);
    CHECK(hopf.lambda.imag() == doctest::Approx(1.0 / std::sqrt(0.1)).epsilon(1e-6));
  }

  TEST_CASE("bracket expansion in both directions") {
    const auto base = params_for(0.0, 101);
    const auto reference = find_p0(base, 0.5, 4.0);
    const auto upward = find_p0(base, 0.1, 0.3);
    CHECK(std::abs(upward.p0 - reference.p0) < 1e-5);
    const auto downward = find_p0(base, 3.0, 5.0);
    CHECK(std::abs(downward.p0 - reference.p0) < 1e-5);
  }

  TEST_CASE("no crossing below the ceiling") {
    const auto base = params_for(0.0, 101);
    HopfSearchOptions options;
    options.p_ceiling = 1.0;
    CHECK_THROWS_AS(find_p0(base, 0.2, 0.8, options), NoSignChange);
    // Always-stable family.
    const auto stable = constant_family(base.a);
    CHECK_THROWS_AS(find_p0(base, 2.0, 3.0, [&](double p) { return stable(p + 2.0); }), NoSignChange);
    CHECK_THROWS_AS(find_p0(base, 2.0, 1.0), ConfigError);
  }

  TEST_CASE("nu_0 increases with p") {
    const auto base = params_for(0.0, 101);
    double previous = ground_nu(base, 0.0);
    CHECK(previous == doctest::Approx(-3.0).epsilon(1e-8));
    for (double p = 0.25; p <= 6.0; p += 0.25) {
      const double nu = ground_nu(base, p);
      CHECK(nu > previous);
      previous = nu;
    }
  }

  TEST_CASE("sign scan") {
    const auto base = params_for(0.0, 101);
    const auto family = polynomial_family(base.a);
    CHECK(scan_sign_changes(base, 0.5, 4.0, 0.1, family) == 1);
    CHECK(scan_sign_changes(base, 0.5, 1.5, 0.1, family) == 0);
  }

  TEST_CASE("classification") {
    CHECK(classify(0.0, 0.0) == Stability::critical);
    CHECK(classify(5e-7, -2e-6) == Stability::critical);
    CHECK(classify(-0.5, 2.5) == Stability::unstable);
    CHECK(classify(0.5, -2.5) == Stability::stable);
    CHECK(to_string(Stability::critical) == "critical");
  }

  TEST_CASE("stability sweep rows") {
    const auto base = params_for(0.0, 101);
    const auto hopf = find_p0(base, 0.5, 4.0);
    const std::vector<double> ps = {10.0, 0.0, hopf.p0, 1.0, 3.0};
    const auto rows = stability_sweep(ps, base);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].p > rows[i - 1].p);

    CHECK(rows[0].p == 0.0);
    CHECK(rows[0].classification == Stability::unstable);
    CHECK(rows[0].nu0 == doctest::Approx(-3.0).epsilon(1e-8));
    CHECK(rows[0].re_lambda0 > 0.0);

    const auto& critical = rows[2];
    CHECK(critical.classification == Stability::critical);
    CHECK(critical.im_lambda0 == doctest::Approx(1.0 / std::sqrt(0.1)).epsilon(1e-6));

    CHECK(rows[4].p == 10.0);
    CHECK(rows[4].classification == Stability::stable);
    CHECK(rows[4].re_lambda0 < 0.0);
    for (const auto& r : rows) CHECK_FALSE(r.error.has_value());
  }

  TEST_CASE("sweep is independent of the worker count") {
    const auto base = params_for(0.0, 101);
    std::vector<double> ps;
    for (int i = 0; i <= 20; ++i) ps.push_back(0.2 * i);
    const auto serial = stability_sweep(ps, base, 1);
    const auto parallel = stability_sweep(ps, base, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].p == parallel[i].p);
      CHECK(serial[i].nu0 == parallel[i].nu0);
      CHECK(serial[i].classification == parallel[i].classification);
    }
  }

  TEST_CASE("failing rows are reported, not thrown") {
    const auto base = params_for(0.0, 101);
    const auto poly = polynomial_family(base.a);
    ProfileFamily flaky = [&](double p) -> HeterogeneityProfile {
      if (p > 2.5) throw DomainError("no profile here");
      return poly(p);
    };
    const std::vector<double> ps = {1.0, 3.0};
    const auto rows = stability_sweep(ps, base, 2, flaky);
    CHECK_FALSE(rows[0].error.has_value());
    REQUIRE(rows[1].error.has_value());
    CHECK(std::isnan(rows[1].nu0));
    CHECK_THROWS_AS(stability_sweep(std::vector<double>{}, base), ConfigError);
  }
}
