#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "pathlab/stationary_delta.hpp"
#include "support/oracles.hpp"

using namespace pathlab;
using namespace pathlab::testing;

namespace {

// Leading stationary-phase term of eps^{-1/2} \int e^{i f/eps} O dx.
cplx stationary_phase(double f_star, double f2, cplx o_star, double eps) {
  const double sign = f2 > 0 ? 1.0 : -1.0;
  return std::sqrt(2.0 * kPi / std::abs(f2)) * o_star * std::exp(kI * (f_star / eps + sign * kPi / 4.0));
}

const std::vector<double> kEpsLadder{0.02, 0.01, 0.005};

RegularizationParams single_eta(double eta) {
  RegularizationParams reg;
  reg.eta_ladder = {eta};
  return reg;
}

}  // namespace

// ============================================================================
// halved_delta
// ============================================================================

TEST(HalvedDelta, UnitQuadraticIsFresnel) {
  const auto v = halved_delta(ScalarObjective::polynomial({0, 0, 0.5}), Observable::constant(1.0), 1e-3, {});
  EXPECT_LT(rel(v, stationary_phase(0.0, 1.0, 1.0, 1e-3)), 1e-3);
  EXPECT_NEAR(v.real(), 1.7725, 1e-3);
  EXPECT_NEAR(v.imag(), 1.7725, 1e-3);
}

TEST(HalvedDelta, ShiftedQuadraticModulus) {
  const auto v = halved_delta(ScalarObjective::polynomial({1, -2, 1}), Observable::constant(1.0), 1e-3, {});
  EXPECT_NEAR(std::abs(v), std::sqrt(kPi), 1e-3 * std::sqrt(kPi));
}

TEST(HalvedDelta, NoCriticalPointIsExponentiallySmall) {
  const auto v = halved_delta(ScalarObjective::polynomial({0, 1}), Observable::gaussian(1.0), 1e-3, {});
  EXPECT_LT(std::abs(v), 1e-6);
}

TEST(HalvedDelta, RejectsSeveralCriticalPoints) {
  try {
    halved_delta(ScalarObjective::polynomial({0, -1, 0, 1.0 / 3.0}), Observable::constant(1.0), 0.01, {});
    FAIL() << "expected MultipleCriticalPoints";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultipleCriticalPoints);
  }
}

TEST(HalvedDelta, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(halved_delta(ScalarObjective::polynomial({0, 0, 0.5}), Observable::constant(1.0), 0.0, {}), Error);
}

TEST(HalvedDelta, ShiftCovariance) {
  const auto f = ScalarObjective::polynomial({1, -2, 1});
  const auto o = Observable::gaussian(0.5);
  const double eps = 0.01, c = 0.3;
  const auto base = halved_delta(f, o, eps, {});
  const auto moved = halved_delta(f.shifted(c), o, eps, {});
  EXPECT_LT(rel(moved, base * std::exp(kI * c / eps)), 1e-12);
  EXPECT_LT(std::abs(delta_pairing(f.shifted(c), o, eps, {}) - delta_pairing(f, o, eps, {})) /
                std::abs(delta_pairing(f, o, eps, {})),
            1e-12);
}

// ============================================================================
// delta_pairing
// ============================================================================

TEST(DeltaPairing, GaussianObservableConvergesToPiOverE) {
  const auto ladder = delta_pairing_ladder(ScalarObjective::polynomial({1, -2, 1}), Observable::gaussian(0.5),
                                           kEpsLadder, {});
  const auto limit = richardson_extrapolate(ladder, 1);
  const double oracle = 2.0 * kPi * std::exp(-1.0) / 2.0;
  EXPECT_NEAR(oracle, 1.15573, 1e-5);
  EXPECT_LT(std::abs(limit - oracle) / oracle, 1e-2);
  EXPECT_GE(estimate_convergence_order(ladder, oracle), 0.9);
}

TEST(DeltaPairing, UnitQuadraticGivesTwoPi) {
  const auto ladder = delta_pairing_ladder(ScalarObjective::polynomial({0, 0, 0.5}), Observable::constant(1.0),
                                           kEpsLadder, {});
  EXPECT_LT(std::abs(richardson_extrapolate(ladder, 1) - 2.0 * kPi) / (2.0 * kPi), 1e-2);
}

TEST(DeltaPairing, ZeroObservable) {
  EXPECT_EQ(delta_pairing(ScalarObjective::polynomial({0, 0, 0.5}), Observable::zero(), 0.01, {}), cplx(0.0));
}

TEST(DeltaPairing, FactorisationAtEveryRegularisation) {
  const auto f = ScalarObjective::polynomial({1, -2, 1});
  const auto o = Observable::gaussian(0.5);
  for (double eps : kEpsLadder) {
    for (double eta : RegularizationParams{}.eta_ladder) {
      const auto reg = single_eta(eta);
      const double halved_sq = std::norm(halved_delta(f, o, eps, reg));
      const auto pairing = delta_pairing(f, o, eps, reg);
      EXPECT_LE(std::abs(pairing - halved_sq) / halved_sq, 1e-12) << eps << " " << eta;
      EXPECT_EQ(pairing.imag(), 0.0);
    }
  }
}

TEST(DeltaPairing, AgreesWithOracleOnQuadraticObjectives) {
  const std::vector<std::vector<double>> polys{{0, 0, 0.5}, {1, -2, 1}, {0, 1, 0.5}, {0.3, 1, -1}, {2, 0.5, 3}};
  const auto o = Observable::gaussian(0.5);
  for (const auto& c : polys) {
    const double x_star = -c[1] / (2.0 * c[2]);
    const double oracle = 2.0 * kPi * std::exp(-x_star * x_star) / std::abs(2.0 * c[2]);
    const auto ladder = delta_pairing_ladder(ScalarObjective::polynomial(c), o, kEpsLadder, {});
    EXPECT_LT(std::abs(richardson_extrapolate(ladder, 1) - oracle) / oracle, 1e-2) << "x* = " << x_star;
  }
}

TEST(DeltaPairing, LinearInTheTestFunction) {
  const auto f = ScalarObjective::polynomial({1, -2, 1});
  const auto o = Observable::gaussian(0.5);
  const double alpha = 3.7;
  const auto base = delta_pairing(f, o, 0.01, {});
  const auto scaled = delta_pairing(f, o.scaled(std::sqrt(alpha)), 0.01, {});
  EXPECT_LE(std::abs(scaled - alpha * base) / std::abs(alpha * base), 1e-12);
}

// ============================================================================
// classical_delta_direct
// ============================================================================

TEST(ClassicalDeltaDirect, ModerateEpsilonNearOracle) {
  const auto v = classical_delta_direct(ScalarObjective::polynomial({1, -2, 1}), Observable::gaussian(1.0), 0.02, {});
  const double oracle = kPi / std::exp(1.0);
  EXPECT_LT(std::abs(v - oracle) / oracle, 0.05);
}

TEST(ClassicalDeltaDirect, ZeroTestFunction) {
  EXPECT_EQ(classical_delta_direct(ScalarObjective::polynomial({1, -2, 1}), Observable::zero(), 0.02, {}), cplx(0.0));
}

TEST(ClassicalDeltaDirect, MatchesPairingAtSameEpsilon) {
  const auto f = ScalarObjective::polynomial({0, 0, 0.5});
  const auto direct = classical_delta_direct(f, Observable::gaussian(1.0), 0.02, {});
  const auto pairing = delta_pairing(f, Observable::gaussian(0.5), 0.02, {});
  EXPECT_LT(std::abs(direct - pairing) / std::abs(pairing), 0.05);
}

TEST(ClassicalDeltaDirect, ScalesWithTheTestFunction) {
  const auto f = ScalarObjective::polynomial({1, -2, 1});
  const auto g = Observable::gaussian(1.0);
  const auto base = classical_delta_direct(f, g, 0.02, {});
  const auto scaled = classical_delta_direct(f, g.scaled(2.5), 0.02, {});
  EXPECT_LE(std::abs(scaled - 2.5 * base) / std::abs(2.5 * base), 1e-14);
}

// ============================================================================
// critical_point_oracle
// ============================================================================

TEST(CriticalPointOracle, Examples) {
  EXPECT_NEAR(critical_point_oracle(ScalarObjective::polynomial({1, -2, 1}), Observable::gaussian(1.0), {-5, 5}),
              2.0 * kPi * std::exp(-1.0) / 2.0, 1e-12);
  EXPECT_NEAR(critical_point_oracle(ScalarObjective::polynomial({0, -1, 0, 1.0 / 3.0}), Observable::constant(1.0),
                                    {-5, 5}),
              2.0 * kPi, 1e-12);
  EXPECT_EQ(critical_point_oracle(ScalarObjective::polynomial({0, 1}), Observable::gaussian(1.0), {-5, 5}), 0.0);
}

// ============================================================================
// Phase law
// ============================================================================

TEST(PhaseLaw, ResidualVanishesAfterExtrapolation) {
  const std::vector<std::vector<double>> polys{{1, -2, 1}, {0, 1, 0.5}, {0.3, 1, -1}};
  for (const auto& c : polys) {
    const double r = phase_law_residual(ScalarObjective::polynomial(c), Observable::gaussian(0.5), kEpsLadder, {});
    EXPECT_LT(std::abs(r), 1e-2);
  }
}

TEST(PhaseLaw, ReducedValuesCarryStationaryPhase) {
  // f = -x^2 + x + 0.3: x* = 1/2, f* = 0.55, f'' = -2.
  const auto ladder =
      reduced_halved_ladder(ScalarObjective::polynomial({0.3, 1, -1}), Observable::constant(1.0), {0.01}, {});
  const cplx expected = stationary_phase(0.0, -2.0, 1.0, 0.01);
  EXPECT_LT(rel(ladder.values[0], expected), 1e-2);
}
