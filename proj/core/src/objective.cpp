#include "pathlab/objective.hpp"

#include <cmath>
#include <memory>

namespace pathlab {
namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

}  // namespace

ScalarObjective ScalarObjective::polynomial(std::vector<double> coefficients) {
  require(!coefficients.empty(), "polynomial: need at least one coefficient");
  require(coefficients.size() <= 7, "polynomial: degree must be <= 6");
  for (double c : coefficients) require(std::isfinite(c), "polynomial: coefficients must be finite");

  auto c0 = std::make_shared<const std::vector<double>>(std::move(coefficients));
  auto c1 = std::make_shared<const std::vector<double>>(derivative(*c0));
  auto c2 = std::make_shared<const std::vector<double>>(derivative(*c1));
  return {[c0](double x) { return horner(*c0, x); },
          [c1](double x) { return horner(*c1, x); },
          [c2](double x) { return horner(*c2, x); }};
}

ScalarObjective ScalarObjective::shifted(double c) const {
  return {[f = f, c](double x) { return f(x) + c; }, df, d2f};
}

Observable Observable::constant(ComplexAmplitude c) {
  return {[c](double) { return c; }};
}

Observable Observable::gaussian(double a) {
  require(std::isfinite(a), "gaussian observable: width parameter must be finite");
  return {[a](double x) { return ComplexAmplitude(std::exp(-a * x * x), 0.0); }};
}

Observable Observable::scaled(double alpha) const {
  return {[g = g, alpha](double x) { return alpha * g(x); }};
}

Observable Observable::modulus_squared() const {
  return {[g = g](double x) { return ComplexAmplitude(std::norm(g(x)), 0.0); }};
}

}  // namespace pathlab
