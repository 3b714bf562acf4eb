#include "fhnhopf/tridiagonal.hpp"

#include <sstream>

#include "fhnhopf/errors.hpp"

namespace fhn {

std::vector<cplx> solve_tridiagonal(const TridiagonalSystem& system, double pivot_floor) {
  const std::size_t n = system.diag.size();
  if (system.lower.size() != n || system.upper.size() != n || system.rhs.size() != n)
    throw ConfigError("solve_tridiagonal: diagonal lengths disagree");
  if (n == 0) return {};

  std::vector<cplx> upper_star(n);
  std::vector<cplx> rhs_star(n);
  auto check = [&](const cplx& pivot, std::size_t row) {
    if (std::abs(pivot) < pivot_floor) {
      std::ostringstream msg;
      msg << "solve_tridiagonal: pivot |" << pivot << "| below " << pivot_floor << " at row " << row;
      throw SingularSystem(msg.str());
    }
  };

  check(system.diag[0], 0);
  upper_star[0] = system.upper[0] / system.diag[0];
  rhs_star[0] = system.rhs[0] / system.diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const cplx pivot = system.diag[i] - system.lower[i] * upper_star[i - 1];
    check(pivot, i);
    upper_star[i] = i + 1 < n ? system.upper[i] / pivot : cplx{};
    rhs_star[i] = (system.rhs[i] - system.lower[i] * rhs_star[i - 1]) / pivot;
  }

  std::vector<cplx> x(n);
  x[n - 1] = rhs_star[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = rhs_star[i] - upper_star[i] * x[i + 1];
  return x;
}

TridiagonalSystem neumann_helmholtz_system(cplx shift, std::span<const double> q, double d, double dx,
                                           std::span<const cplx> rhs) {
  const std::size_t n = q.size();
  if (rhs.size() != n || n < 3) throw ConfigError("neumann_helmholtz_system: bad sizes");
  const double k = d / (dx * dx);
  TridiagonalSystem sys;
  sys.lower.assign(n, cplx(-k, 0.0));
  sys.upper.assign(n, cplx(-k, 0.0));
  sys.diag.resize(n);
  sys.rhs.assign(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) sys.diag[i] = shift - q[i] + 2.0 * k;
  // Ghost values w[-1] = w[1], w[n] = w[n-2].
  sys.upper[0] = cplx(-2.0 * k, 0.0);
  sys.lower[n - 1] = cplx(-2.0 * k, 0.0);
  sys.lower[0] = 0.0;
  sys.upper[n - 1] = 0.0;
  return sys;
}

}  // namespace fhn
