#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fhn {

using cplx = std::complex<double>;

/// General (non-symmetric) tridiagonal system stored by diagonals.
/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
  std::vector<cplx> lower;
  std::vector<cplx> diag;
  std::vector<cplx> upper;
  std::vector<cplx> rhs;
};

/// Direct elimination without pivoting. Throws SingularSystem when a pivot
/// magnitude falls below `pivot_floor`.
std::vector<cplx> solve_tridiagonal(const TridiagonalSystem& system, double pivot_floor = 1e-14);

/// (shift - q(x)) w - d w'' = rhs with homogeneous Neumann conditions,
/// second-order central differences and mirrored ghost nodes.
TridiagonalSystem neumann_helmholtz_system(cplx shift, std::span<const double> q, double d, double dx,
                                           std::span<const cplx> rhs);

}  // namespace fhn
