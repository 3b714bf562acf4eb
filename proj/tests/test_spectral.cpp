#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fd_oracle.hpp"
#include "fhnhopf/errors.hpp"
#include "fhnhopf/quadrature.hpp"
#include "fhnhopf/spectral.hpp"
#include "helpers.hpp"

using namespace fhn;
using fhn::testing::constant_setup;
using fhn::testing::polynomial_setup;

namespace {
constexpr double kPi = std::numbers::pi;

// Neumann spectrum of -d u'' - f'(c0) u on (-a, a).
double analytic_nu(int n, double d, double a, double c0) {
  const double k = n * kPi / (2.0 * a);
  return d * k * k - f_prime(c0);
}
}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("shoot_theta: ground mode of the homogeneous problem is a fixed point") {
    const auto s = constant_setup(0.0);
    const auto path = shoot_theta(-3.0, s.problem);
    CHECK(path.theta[0] == kPi / 2);
    CHECK(path.r[0] == 1.0);
    CHECK(path.theta_end == doctest::Approx(kPi / 2).epsilon(1e-13));
  }

  TEST_CASE("shoot_theta: first excited homogeneous mode ends at 3 pi / 2") {
    const auto s = constant_setup(0.0);
    const auto path = shoot_theta(kPi * kPi / 4 - 3.0, s.problem);
    CHECK(std::abs(path.theta_end - 1.5 * kPi) < 1e-8);
  }

  TEST_CASE("shoot_theta: positivity and monotonicity in nu") {
    const auto s = polynomial_setup(2.0);
    std::vector<double> nus = {-20.0, -5.0, -1.0, 0.0, 0.5, 3.0, 12.0, 40.0};
    PruferPath previous = shoot_theta(nus[0], s.problem);
    for (double t : previous.theta) CHECK(t > 0.0);
    for (std::size_t j = 1; j < nus.size(); ++j) {
      const auto path = shoot_theta(nus[j], s.problem);
      CHECK(path.theta[0] == previous.theta[0]);
      for (std::size_t i = 1; i < path.theta.size(); ++i) {
        CHECK(path.theta[i] > 0.0);
        CHECK(path.theta[i] > previous.theta[i]);
      }
      previous = path;
    }
  }

  TEST_CASE("theta_at_end agrees with the full path") {
    const auto s = polynomial_setup(1.2);
    for (double nu : {-2.0, 0.3, 7.0}) CHECK(theta_at_end(nu, s.problem) == shoot_theta(nu, s.problem).theta_end);
  }

  TEST_CASE("eigenvalue_nu: analytic homogeneous Neumann spectrum") {
    const auto s = constant_setup(0.0);
    CHECK(std::abs(eigenvalue_nu(0, s.problem) - (-3.0)) < 1e-9);
    CHECK(std::abs(eigenvalue_nu(2, s.problem) - (kPi * kPi - 3.0)) < 1e-8);
    for (int n = 0; n < 5; ++n) CHECK(std::abs(eigenvalue_nu(n, s.problem) - analytic_nu(n, 1.0, 1.0, 0.0)) < 1e-6);
  }

  TEST_CASE("eigenvalue_nu: other constant levels and diffusion") {
    const auto s = constant_setup(0.6, 101, 0.3);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(eigenvalue_nu(n, s.problem) - analytic_nu(n, 0.3, 1.0, 0.6)) < 1e-6);
  }

  TEST_CASE("eigenvalue_nu: continuity towards the homogeneous limit") {
    const auto s = polynomial_setup(1e-6);
    CHECK(std::abs(eigenvalue_nu(0, s.problem) + 3.0) < 1e-4);
  }

  TEST_CASE("eigenvalue_nu: bracket failure is reported") {
    const auto s = polynomial_setup(1.0);
    EigenvalueOptions options;
    options.max_abs_nu = 4.0;
    CHECK_THROWS_AS(eigenvalue_nu(4, s.problem, options), BracketNotFound);
    CHECK_THROWS_AS(eigenvalue_nu(-1, s.problem), ConfigError);
  }

  TEST_CASE("eigenvalues are ordered and match the finite-difference oracle") {
    for (double p : {0.5, 2.0, 4.0}) {
      const auto s = polynomial_setup(p);
      const auto refined = fhn::testing::params_for(p, 4 * (201 - 1) + 1);
      const auto fine = stationary_state(refined, HeterogeneityProfile::polynomial(p, 1.0));
      const auto oracle = oracle::fd_neumann_eigenvalues(fine.fprime_bar, 1.0, refined.dx(), 5);
      double previous = -1e300;
      for (int n = 0; n < 5; ++n) {
        const double nu = eigenvalue_nu(n, s.problem);
        CHECK(nu > previous);
        previous = nu;
        CHECK_MESSAGE(std::abs(nu - oracle[static_cast<std::size_t>(n)]) < 1e-3, "p=" << p << " n=" << n);
      }
    }
  }

  TEST_CASE("steep potentials at small diffusion keep the mode count") {
    // |f'(u_bar)| / d reaches about 4300 here.
    for (double p : {9.5, 12.0}) {
      const auto s = polynomial_setup(p, 201, 0.1);
      CHECK(s.problem.substeps() > 10);
      const auto oracle_nu = oracle::fd_neumann_eigenvalues(s.stationary.fprime_bar, 0.1, s.params.dx(), 3);
      for (int n = 0; n < 3; ++n) {
        const auto path = shoot_theta(eigenvalue_nu(n, s.problem), s.problem);
        CHECK(std::abs(path.nu - oracle_nu[static_cast<std::size_t>(n)]) < 2e-2);
        const auto u = eigenfunction(n, path.nu, s.problem);
        CHECK(count_sign_changes(u) == n);
        const auto vec = oracle::fd_neumann_eigenvector(s.stationary.fprime_bar, 0.1, s.params.dx(),
                                                       oracle_nu[static_cast<std::size_t>(n)]);
        const double ratio = u[s.params.nx / 4] / vec[s.params.nx / 4];
        double worst = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - ratio * vec[i]));
        CHECK_MESSAGE(worst < 5e-2, "mode " << n << " shape gap " << worst);
      }
    }
  }

  TEST_CASE("interpolated potential path stays close to the exact one") {
    const auto s = polynomial_setup(2.0);
    const SpectralProblem interpolated(s.stationary, s.params);
    CHECK(interpolated.mode() == PotentialMode::interpolated);
    for (int n = 0; n < 3; ++n) CHECK(std::abs(eigenvalue_nu(n, interpolated) - eigenvalue_nu(n, s.problem)) < 1e-3);
    CHECK(interpolated.potential(s.stationary.x[7]) == s.stationary.fprime_bar[7]);
  }

  TEST_CASE("two-sided and one-sided eigenfunctions agree on benign problems") {
    const auto s = polynomial_setup(2.0);
    for (int n = 0; n < 4; ++n) {
      const double nu = eigenvalue_nu(n, s.problem);
      const auto one = eigenfunction(shoot_theta(nu, s.problem), s.params.dx());
      const auto two = eigenfunction(n, nu, s.problem);
      for (std::size_t i = 0; i < one.size(); ++i) CHECK(std::abs(one[i] - two[i]) < 1e-6);
    }
  }

  TEST_CASE("eigenfunction: homogeneous ground mode is the normalized constant") {
    const auto s = constant_setup(0.0);
    const auto u = eigenfunction(shoot_theta(-3.0, s.problem), s.params.dx());
    for (double v : u) CHECK(std::abs(v - 1.0 / std::sqrt(2.0)) < 1e-10);
  }

  TEST_CASE("eigenfunction: normalization, sign and nodal count") {
    const auto s = polynomial_setup(2.0);
    for (int n = 0; n < 5; ++n) {
      const auto pair = eigenpair(n, s.problem, s.params.epsilon);
      std::vector<double> sq(pair.u.size());
      for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = pair.u[i] * pair.u[i];
      CHECK(std::abs(trapezoid(sq, s.params.dx()) - 1.0) < 1e-12);
      CHECK(pair.u.front() > 0.0);
      CHECK(count_sign_changes(pair.u) == n);

      const auto vec = oracle::fd_neumann_eigenvector(s.stationary.fprime_bar, 1.0, s.params.dx(), pair.nu);
      CHECK(count_sign_changes(vec) == n);
    }
  }

  TEST_CASE("eigenfunction satisfies the differential equation") {
    const auto s = polynomial_setup(2.0, 401);
    const double dx = s.params.dx();
    for (int n = 0; n < 2; ++n) {
      const auto pair = eigenpair(n, s.problem, s.params.epsilon);
      double worst = 0.0;
      for (std::size_t i = 1; i + 1 < pair.u.size(); ++i) {
        const double uxx = (pair.u[i - 1] - 2 * pair.u[i] + pair.u[i + 1]) / (dx * dx);
        worst = std::max(worst, std::abs(-s.params.d * uxx - s.stationary.fprime_bar[i] * pair.u[i] - pair.nu * pair.u[i]));
      }
      CHECK_MESSAGE(worst < 1e-3, "mode " << n << " residual " << worst);
    }
  }

  TEST_CASE("temporal eigenvalues") {
    const auto imag = temporal_eigs(0.0, 0.1);
    CHECK(imag.plus.real() == doctest::Approx(0.0));
    CHECK(imag.plus.imag() == doctest::Approx(3.16228).epsilon(1e-5));
    CHECK(imag.minus.imag() == doctest::Approx(-3.16228).epsilon(1e-5));

    const double eps = 0.1;
    const auto dbl = temporal_eigs(2.0 * std::sqrt(eps), eps);
    CHECK(std::abs(dbl.plus - std::complex<double>(-1.0 / std::sqrt(eps), 0.0)) < 1e-7);
    CHECK(std::abs(dbl.minus - std::complex<double>(-1.0 / std::sqrt(eps), 0.0)) < 1e-7);

    const auto cplx_pair = temporal_eigs(-0.5, 0.1);
    CHECK(cplx_pair.plus.real() == doctest::Approx(2.5));
    CHECK(cplx_pair.plus.imag() == doctest::Approx(1.93649).epsilon(1e-5));
    CHECK(cplx_pair.minus.imag() == doctest::Approx(-1.93649).epsilon(1e-5));
  }

  TEST_CASE("temporal eigenvalues solve the quadratic and invert to nu") {
    for (double eps : {0.01, 0.1, 0.7}) {
      for (double nu : {-30.0, -3.0, -0.2, 0.0, 0.05, 1.0, 25.0}) {
        const auto pair = temporal_eigs(nu, eps);
        for (auto lambda : {pair.plus, pair.minus}) {
          CHECK(std::abs(eps * lambda * lambda + nu * lambda + 1.0) < 1e-12 * std::max(1.0, nu * nu / eps));
          CHECK(std::abs(nu_from_lambda(lambda, eps) - nu) < 1e-10 * std::max(1.0, std::abs(nu)));
        }
      }
    }
  }

  TEST_CASE("Rayleigh bound") {
    {
      const auto s = constant_setup(0.0);
      CHECK(rayleigh_upper_bound(s.stationary, s.params) == doctest::Approx(-3.0));
      CHECK(std::abs(eigenvalue_nu(0, s.problem) - rayleigh_upper_bound(s.stationary, s.params)) < 1e-9);
    }
    {
      const auto s = polynomial_setup(0.0);
      CHECK(rayleigh_upper_bound(s.stationary, s.params) == doctest::Approx(-3.0));
    }
    {
      // Exact integral over (-1, 1): -(1/2) * (6 - 642 p^2 / 315).
      const double p = 4.0;
      const auto s = polynomial_setup(p);
      const double exact = -3.0 + 321.0 * p * p / 315.0;
      const double bound = rayleigh_upper_bound(s.stationary, s.params);
      CHECK(std::abs(bound - exact) < 1e-3);
      CHECK(eigenvalue_nu(0, s.problem) <= bound + 1e-8);
    }
    for (double p : {0.3, 1.0, 2.0, 3.0}) {
      const auto s = polynomial_setup(p);
      CHECK(eigenvalue_nu(0, s.problem) <= rayleigh_upper_bound(s.stationary, s.params) + 1e-8);
    }
  }

  TEST_CASE("instability certificate") {
    {
      const auto s = polynomial_setup(0.0);
      const auto cert = instability_certificate(s.stationary, s.params, s.problem);
      CHECK(cert.certified);
      CHECK(cert.integral == doctest::Approx(6.0));
      REQUIRE(cert.leading_re_lambda);
      // nu0 = -3, eps = 0.1: (3 + sqrt(8.6)) / 0.2.
      CHECK(*cert.leading_re_lambda == doctest::Approx((3.0 + std::sqrt(8.6)) / 0.2).epsilon(1e-9));
      CHECK(cert.cross_check_ok);
    }
    {
      const auto s = polynomial_setup(10.0);
      const auto cert = instability_certificate(s.stationary, s.params, s.problem);
      CHECK_FALSE(cert.certified);
      CHECK(cert.integral < 0.0);
    }
    {
      const auto s = constant_setup(2.0);
      const auto cert = instability_certificate(s.stationary, s.params, s.problem);
      CHECK_FALSE(cert.certified);
      CHECK(cert.integral == doctest::Approx(-18.0));
    }
    for (double p : {0.5, 1.0, 1.5}) {
      const auto s = polynomial_setup(p);
      const auto cert = instability_certificate(s.stationary, s.params, s.problem);
      if (cert.certified) CHECK(cert.cross_check_ok);
    }
  }

  TEST_CASE("theta(a) decreases with p at fixed nu") {
    for (double nu : {-1.0, 0.0, 4.0}) {
      double previous = 1e300;
      for (double p = 0.0; p <= 4.0 + 1e-9; p += 0.5) {
        const auto s = polynomial_setup(p, 101);
        const double end = theta_at_end(nu, s.problem);
        CHECK(end < previous);
        previous = end;
      }
    }
  }

  TEST_CASE("sign change counting") {
    const std::vector<double> v = {1.0, 0.5, 0.0, -0.2, -0.1, 0.3, 1e-12, 0.2};
    CHECK(count_sign_changes(v) == 2);
  }
}
