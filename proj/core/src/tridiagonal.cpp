#include "pathlab/tridiagonal.hpp"

#include <cmath>

#include "pathlab/error.hpp"

namespace pathlab {
namespace {

void check_shape(std::span<const double> diag, std::span<const double> offdiag) {
  require(!diag.empty(), "tridiagonal: diag must be non-empty");
  require(offdiag.size() + 1 == diag.size(), "tridiagonal: offdiag must have length(diag) - 1");
}

}  // namespace

std::vector<double> leading_minors(std::span<const double> diag, std::span<const double> offdiag) {
  check_shape(diag, offdiag);
  std::vector<double> d(diag.size());
  double prev2 = 0.0;
  double prev = 1.0;
  for (std::size_t k = 0; k < diag.size(); ++k) {
    const double b = k > 0 ? offdiag[k - 1] : 0.0;
    d[k] = diag[k] * prev - b * b * prev2;
    prev2 = prev;
    prev = d[k];
  }
  return d;
}

double tridiagonal_determinant(std::span<const double> diag, std::span<const double> offdiag) {
  return leading_minors(diag, offdiag).back();
}

std::vector<double> solve_tridiagonal(const TridiagonalMatrix& t, std::span<const double> rhs) {
  check_shape(t.diag, t.offdiag);
  const std::size_t n = t.diag.size();
  require(rhs.size() == n, "solve_tridiagonal: rhs length mismatch");

  std::vector<double> c(n, 0.0);
  std::vector<double> x(rhs.begin(), rhs.end());
  double pivot = t.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = t.diag[i] - t.offdiag[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw Error(ErrorCode::NewtonDivergence, "solve_tridiagonal: singular pivot");
    }
    if (i + 1 < n) c[i] = t.offdiag[i] / pivot;
    x[i] = (i > 0 ? x[i] - t.offdiag[i - 1] * x[i - 1] : x[i]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace pathlab
