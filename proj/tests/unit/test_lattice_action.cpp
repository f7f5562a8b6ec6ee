#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pathlab/lattice_action.hpp"
#include "support/oracles.hpp"

using namespace pathlab;
using namespace pathlab::testing;

namespace {

Potential potential_of(const LagrangianSpec& l) { return {l.mass, l.omega, l.coupling()}; }

LatticePath path_with(const LatticeConfig& cfg, std::vector<double> interior) { return {cfg, std::move(interior)}; }

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> fd_gradient(const LagrangianSpec& l, const LatticePath& p, double step) {
  std::vector<double> g(p.interior.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    auto up = p, down = p;
    up.interior[k] += step;
    down.interior[k] -= step;
    g[k] = (discrete_action(l, up) - discrete_action(l, down)) / (2.0 * step);
  }
  return g;
}

std::vector<LagrangianSpec> kinds() {
  return {LagrangianSpec::free(1.3), LagrangianSpec::harmonic(0.8, 1.7), LagrangianSpec::quartic(1.0, 0.6, 0.25)};
}

LatticePath random_path(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const LatticeConfig cfg{u(rng), u(rng), 0.0, 1.0 + 0.5 * (u(rng) + 1.5), count(rng)};
  return path_with(cfg, random_vector(rng, static_cast<std::size_t>(cfg.n), -1.5, 1.5));
}

}  // namespace

// ============================================================================
// discrete_action
// ============================================================================

TEST(DiscreteAction, FreeStraightLineIsHalf) {
  for (int n : {0, 1, 5, 63}) {
    const LatticeConfig cfg{0.0, 1.0, 0.0, 1.0, n};
    EXPECT_NEAR(discrete_action(LagrangianSpec::free(), LatticePath::straight_line(cfg)), 0.5, 1e-14) << n;
  }
}

TEST(DiscreteAction, SingleSlice) {
  for (const auto& l : kinds()) {
    const LatticeConfig cfg{0.3, -0.7, 0.5, 2.0, 0};
    const double v = (cfg.phi1 - cfg.phi0) / cfg.duration();
    const double expected = cfg.duration() * (0.5 * l.mass * v * v - potential_of(l)(cfg.phi0));
    EXPECT_DOUBLE_EQ(discrete_action(l, path_with(cfg, {})), expected);
  }
}

TEST(DiscreteAction, SingleSliceIsContinuousInBoundaryData) {
  const auto l = LagrangianSpec::quartic(1.0, 1.0, 0.1);
  const double base = discrete_action(l, path_with({0.3, 0.9, 0.0, 1.2, 0}, {}));
  const double moved = discrete_action(l, path_with({0.3 + 1e-9, 0.9 - 1e-9, 0.0, 1.2 + 1e-9, 0}, {}));
  EXPECT_NEAR(moved, base, 1e-8);
}

TEST(DiscreteAction, MatchesReferenceSumOnRandomPaths) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_path(rng);
    for (const auto& l : kinds()) {
      const double ref = reference_action(potential_of(l), p.nodes(), p.config.eps_prime());
      EXPECT_NEAR(discrete_action(l, p), ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(DiscreteAction, HarmonicClassicalPathApproachesContinuumAction) {
  const auto l = LagrangianSpec::harmonic(1.0, 1.0);
  const double s_cl = harmonic_action(1.0, 1.0, 0.0, 1.0, 1.0);
  EXPECT_NEAR(s_cl, 0.3210463, 1e-7);

  // The left-endpoint potential of the forward sum contributes a known
  // first-order term eps' m w^2 (phi1^2 - phi0^2) / 4; what remains is O(eps'^2).
  std::vector<double> params, errs;
  for (int n : {8, 16, 32, 64}) {
    const LatticeConfig cfg{0.0, 1.0, 0.0, 1.0, n};
    const double eps = cfg.eps_prime();
    const double s = discrete_action(l, classical_path_solve(l, cfg));
    params.push_back(eps);
    errs.push_back(std::abs(s - s_cl - eps / 4.0));
  }
  EXPECT_GE(loglog_slope(params, errs), 1.9);

  const LatticeConfig fine{0.0, 1.0, 0.0, 1.0, 63};
  const double s63 = discrete_action(l, classical_path_solve(l, fine));
  EXPECT_LT(std::abs(s63 - s_cl - fine.eps_prime() / 4.0), 1e-3);
}

TEST(DiscreteAction, EqualEndpointPotentialsGiveSecondOrderDirectly) {
  const auto l = LagrangianSpec::harmonic(1.0, 1.0);
  const double s_cl = harmonic_action(1.0, 1.0, 0.5, 0.5, 1.0);
  std::vector<double> params, errs;
  for (int n : {8, 16, 32, 64}) {
    const LatticeConfig cfg{0.5, 0.5, 0.0, 1.0, n};
    params.push_back(cfg.eps_prime());
    errs.push_back(std::abs(discrete_action(l, classical_path_solve(l, cfg)) - s_cl));
  }
  EXPECT_GE(loglog_slope(params, errs), 1.9);
}

TEST(DiscreteAction, TimeReversal) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_path(rng);
    auto reversed = p;
    std::swap(reversed.config.phi0, reversed.config.phi1);
    std::reverse(reversed.interior.begin(), reversed.interior.end());

    const auto free = LagrangianSpec::free();
    EXPECT_NEAR(discrete_action(free, reversed), discrete_action(free, p),
                1e-12 * std::abs(discrete_action(free, p)));

    for (const auto& l : kinds()) {
      const auto u = potential_of(l);
      const double shift = p.config.eps_prime() * (u(p.config.phi0) - u(p.config.phi1));
      EXPECT_NEAR(discrete_action(l, reversed) - discrete_action(l, p), shift, 1e-12 * std::max(1.0, std::abs(discrete_action(l, p))));
    }
  }
}

// ============================================================================
// action_gradient / hessian_tridiagonal
// ============================================================================

TEST(ActionGradient, FreeStraightLineIsStationary) {
  const auto g = action_gradient(LagrangianSpec::free(), LatticePath::straight_line({-0.4, 2.0, 0.0, 1.5, 17}));
  EXPECT_LE(inf_norm(g), 1e-12);
}

TEST(ActionGradient, SingleInteriorPoint) {
  const double a = 0.37, m = 2.0, t = 1.5;
  const auto g = action_gradient(LagrangianSpec::free(m), path_with({0.0, 0.0, 0.0, t, 1}, {a}));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_NEAR(g[0], 2.0 * a * 2.0 / t * m, 1e-12);
  EXPECT_EQ(action_gradient(LagrangianSpec::free(m), path_with({0.0, 0.0, 0.0, t, 1}, {0.0}))[0], 0.0);
}

TEST(ActionGradient, FiniteDifferencesOnRandomPaths) {
  std::mt19937_64 rng(100);
  for (const auto& l : kinds()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = random_path(rng);
      const auto g = action_gradient(l, p);
      const auto fd = fd_gradient(l, p, 1e-5);
      std::vector<double> diff(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) diff[k] = g[k] - fd[k];
      EXPECT_LE(inf_norm(diff), 1e-6 * std::max(1.0, inf_norm(g))) << "trial " << trial;
    }
  }
}

TEST(HessianTridiagonal, FreeThreePoints) {
  const auto h = hessian_tridiagonal(LagrangianSpec::free(), LatticePath::straight_line({0.0, 1.0, 0.0, 1.0, 3}));
  EXPECT_EQ(h.diag, (std::vector<double>{8, 8, 8}));
  EXPECT_EQ(h.offdiag, (std::vector<double>{-4, -4}));
}

TEST(HessianTridiagonal, FiniteDifferencesOfGradient) {
  std::mt19937_64 rng(55);
  for (const auto& l : kinds()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = random_path(rng);
      const auto h = hessian_tridiagonal(l, p);
      const auto dense = tridiagonal_to_dense(h.diag, h.offdiag);
      const double scale = std::max(inf_norm(h.diag), 1.0);
      const double step = 1e-5;
      for (std::size_t k = 0; k < p.interior.size(); ++k) {
        auto up = p, down = p;
        up.interior[k] += step;
        down.interior[k] -= step;
        const auto gu = action_gradient(l, up), gd = action_gradient(l, down);
        for (std::size_t r = 0; r < p.interior.size(); ++r) {
          EXPECT_NEAR(dense[r][k], (gu[r] - gd[r]) / (2.0 * step), 1e-6 * scale);
        }
      }
    }
  }
}

TEST(HessianTridiagonal, HarmonicWithZeroFrequencyIsFree) {
  const auto p = LatticePath::straight_line({0.2, -0.3, 0.0, 0.7, 9});
  const auto a = hessian_tridiagonal(LagrangianSpec::harmonic(1.4, 0.0), p);
  const auto b = hessian_tridiagonal(LagrangianSpec::free(1.4), p);
  EXPECT_EQ(a.diag, b.diag);
  EXPECT_EQ(a.offdiag, b.offdiag);
}

// ============================================================================
// classical_path_solve
// ============================================================================

TEST(ClassicalPath, FreeIsStraightLine) {
  const auto p = classical_path_solve(LagrangianSpec::free(), {0.0, 1.0, 0.0, 1.0, 7});
  ASSERT_EQ(p.interior.size(), 7u);
  for (int k = 1; k <= 7; ++k) EXPECT_NEAR(p.interior[k - 1], k / 8.0, 1e-14);
}

TEST(ClassicalPath, HarmonicFollowsSine) {
  const LatticeConfig cfg{0.0, 1.0, 0.0, 1.0, 31};
  const auto p = classical_path_solve(LagrangianSpec::harmonic(1.0, 1.0), cfg);
  for (int k = 1; k <= 31; ++k) {
    EXPECT_NEAR(p.interior[k - 1], std::sin(cfg.time(k)) / std::sin(1.0), 1e-3);
  }
  EXPECT_LE(inf_norm(action_gradient(LagrangianSpec::harmonic(1.0, 1.0), p)), 1e-10);
}

TEST(ClassicalPath, QuarticSymmetricFixedPoint) {
  const auto l = LagrangianSpec::quartic(1.0, 1.0, 0.1);
  const auto p = classical_path_solve(l, {0.0, 0.0, 0.0, 1.0, 9});
  for (double x : p.interior) EXPECT_EQ(x, 0.0);
  for (double g : action_gradient(l, p)) EXPECT_EQ(g, 0.0);
}

TEST(ClassicalPath, QuarticSolveIsStationary) {
  const auto l = LagrangianSpec::quartic(1.0, 0.5, 0.3);
  const auto p = classical_path_solve(l, {-0.5, 1.2, 0.0, 1.0, 15});
  EXPECT_LE(inf_norm(action_gradient(l, p)), 1e-9);
}

TEST(ClassicalPath, FocalPointRejected) {
  try {
    classical_path_solve(LagrangianSpec::harmonic(1.0, kPi), {0.0, 1.0, 0.0, 1.0, 15});
    FAIL() << "expected FocalPoint";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FocalPoint);
  }
}

TEST(ClassicalPath, FreeActionIsMinimal) {
  const auto l = LagrangianSpec::free();
  const auto p = classical_path_solve(l, {0.0, 1.0, 0.0, 1.0, 10});
  const double s0 = discrete_action(l, p);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_vector(rng, 10, -1.0, 1.0);
    double norm = 0.0;
    for (double x : d) norm += x * x;
    auto q = p;
    for (std::size_t k = 0; k < 10; ++k) q.interior[k] += 1e-2 * d[k] / std::sqrt(norm);
    EXPECT_GT(discrete_action(l, q), s0);
  }
}

// ============================================================================
// Validation
// ============================================================================

TEST(LatticeValidation, RejectsBadInputs) {
  EXPECT_THROW(LatticeConfig({0.0, 1.0, 1.0, 0.5, 3}).validate(), Error);
  EXPECT_THROW(LatticeConfig({0.0, 1.0, 0.0, 1.0, -1}).validate(), Error);
  EXPECT_THROW(LagrangianSpec::free(-1.0).validate(), Error);
  EXPECT_THROW(discrete_action(LagrangianSpec::free(), path_with({0.0, 1.0, 0.0, 1.0, 3}, {0.1})), Error);
}
