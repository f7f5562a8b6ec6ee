#pragma once

#include <functional>
#include <vector>

#include "pathlab/amplitude.hpp"

namespace pathlab {

/// Static objective f with closed-form first and second derivatives.
struct ScalarObjective {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;

  /// Polynomial with constant-first coefficients c_0 + c_1 x + ... (degree <= 6).
  static ScalarObjective polynomial(std::vector<double> coefficients);

  /// f + c, same derivatives.
  ScalarObjective shifted(double c) const;
};

/// Test function g(x), or O(x) in the halved form.
struct Observable {
  std::function<ComplexAmplitude(double)> g;

  ComplexAmplitude operator()(double x) const { return g(x); }

  static Observable constant(ComplexAmplitude c);
  static Observable zero() { return constant(0.0); }
  /// exp(-a x^2).
  static Observable gaussian(double a);

  Observable scaled(double alpha) const;
  /// |O(x)|^2, the g paired with the halved form built from O.
  Observable modulus_squared() const;
};

}  // namespace pathlab
