#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "pathlab/error.hpp"

namespace pathlab {

/// Value of an oscillatory integral or kernel.
using ComplexAmplitude = std::complex<double>;

inline bool is_finite(ComplexAmplitude z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Throws Overflow when a public result is not finite.
inline ComplexAmplitude ensure_finite(ComplexAmplitude z, const std::string& where) {
  if (!is_finite(z)) throw Error(ErrorCode::Overflow, where + " produced a non-finite amplitude");
  return z;
}

/// Relative distance |a - b| / |b|, falling back to the absolute distance when b = 0.
inline double relative_error(ComplexAmplitude a, ComplexAmplitude b) noexcept {
  const double scale = std::abs(b);
  return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b);
}

}  // namespace pathlab
