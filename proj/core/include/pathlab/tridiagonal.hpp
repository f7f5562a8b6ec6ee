#pragma once

#include <span>
#include <vector>

namespace pathlab {

/// Symmetric tridiagonal matrix: `diag` has n entries, `offdiag` n - 1.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

/// Determinant by the three-term recursion
/// d_k = diag_k d_{k-1} - offdiag_{k-1}^2 d_{k-2}, d_0 = 1, d_{-1} = 0.
double tridiagonal_determinant(std::span<const double> diag, std::span<const double> offdiag);

/// All leading principal minors d_1 .. d_n of the same recursion.
std::vector<double> leading_minors(std::span<const double> diag, std::span<const double> offdiag);

/// Solves T x = rhs by tridiagonal elimination (no pivoting).
/// Throws NewtonDivergence if a pivot vanishes.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& t, std::span<const double> rhs);

}  // namespace pathlab
