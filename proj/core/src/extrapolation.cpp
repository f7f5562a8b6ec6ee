#include "pathlab/extrapolation.hpp"

#include <cmath>
#include <string>

namespace pathlab {

void validate_ladder(const ExtrapolationLadder& ladder) {
  require(ladder.values.size() == ladder.parameters.size(), "ladder: values and parameters differ in length");
  if (ladder.values.size() < 2) throw Error(ErrorCode::LadderTooShort, "ladder needs at least 2 entries");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    require(std::isfinite(ladder.parameters[k]) && ladder.parameters[k] > 0.0,
            "ladder: parameters must be finite and positive");
    require(is_finite(ladder.values[k]), "ladder: values must be finite");
    if (k > 0) {
      require(ladder.parameters[k] < ladder.parameters[k - 1], "ladder: parameters must strictly decrease");
    }
  }
}

ComplexAmplitude richardson_extrapolate(const ExtrapolationLadder& ladder, int order) {
  validate_ladder(ladder);
  require(order >= 1, "richardson_extrapolate: order must be positive");
  const std::size_t k = ladder.size();
  for (std::size_t i = 1; i < k; ++i) {
    const double ratio = ladder.parameters[i] / ladder.parameters[i - 1];
    if (ratio < 0.495 || ratio > 0.505) {
      throw Error(ErrorCode::RatioViolation,
                  "richardson_extrapolate: step ratio " + std::to_string(ratio) + " is not 1/2 within 1%");
    }
  }

  // Row i: [1, t_i^p, t_i^{p+1}, ...] with t_i = h_i / h_0; solve for column 0.
  std::vector<std::vector<double>> a(k, std::vector<double>(k));
  std::vector<ComplexAmplitude> b(ladder.values);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = ladder.parameters[i] / ladder.parameters[0];
    a[i][0] = 1.0;
    for (std::size_t j = 1; j < k; ++j) a[i][j] = std::pow(t, order + static_cast<int>(j) - 1);
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < k; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<ComplexAmplitude> x(k);
  for (std::size_t i = k; i-- > 0;) {
    ComplexAmplitude acc = b[i];
    for (std::size_t c = i + 1; c < k; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return ensure_finite(x[0], "richardson_extrapolate");
}

double estimate_convergence_order(const ExtrapolationLadder& ladder, ComplexAmplitude reference) {
  validate_ladder(ladder);
  require(is_finite(reference), "estimate_convergence_order: reference must be finite");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto n = static_cast<double>(ladder.size());
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double err = std::abs(ladder.values[i] - reference);
    if (err == 0.0) {
      throw Error(ErrorCode::ZeroError, "estimate_convergence_order: entry " + std::to_string(i) +
                                            " equals the reference, order undefined");
    }
    const double x = std::log(ladder.parameters[i]);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pathlab
