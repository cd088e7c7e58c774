#include <gtest/gtest.h>

#include "stratwave/adjoint.hpp"
#include "stratwave/exact.hpp"
#include "stratwave/model.hpp"

using namespace stratwave;

namespace {

const PhysicalParams kParams{9.81, 0.7, 1.3};

Grid2D square(int n) { return Grid2D(n, n, 2.0 * M_PI, 2.0 * M_PI); }

}  // namespace

TEST(Substitution, MapsFieldsWithDensityWeight) {
  const Grid2D g = square(16);
  FieldState s = zero_state(g);
  s.v = ScalarField(g, 2.0);
  s.rho = ScalarField(g, 1.0);
  s.psi = ScalarField(g, 0.5);
  const Costate c = self_adjoint_substitution(s, PhysicalParams{3.0, 0.0, 1.0});
  EXPECT_DOUBLE_EQ(c.phi(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(c.mu(0, 0), -2.0);
  EXPECT_DOUBLE_EQ(c.r(0, 0), -9.0);
  const auto fac = equivalence_factors(PhysicalParams{3.0, 0.0, 1.0});
  EXPECT_EQ(fac[0], 1.0);
  EXPECT_EQ(fac[1], 1.0);
  EXPECT_EQ(fac[2], 9.0);
}

TEST(Theta, VanishesUnderSubstitution) {
  const Grid2D g = square(64);
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const FieldState s = random_state(g, seed, 0);
    const Costate c = self_adjoint_substitution(s, kParams);
    EXPECT_LE(theta(s, c).max_abs(), 1e-10 * theta_scale(s, c)) << "seed " << seed;
  }
}

TEST(Theta, NonzeroForIndependentCostate) {
  const Grid2D g = square(64);
  const FieldState s = random_state(g, 1, 0);
  const FieldState other = random_state(g, 2, 0);
  const Costate c{other.psi, other.v, other.rho};
  EXPECT_GE(theta(s, c).max_abs(), 1e-3 * theta_scale(s, c));
}

// The adjoint residuals under the substitution equal the original residuals
// scaled by (1, 1, g^2/N^2), whatever the time derivatives are.
TEST(Equivalence, ArbitraryTendencies) {
  const Grid2D g = square(64);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const FieldState s = random_state(g, seed, 1);
    const Tendencies rates = random_tendencies(g, seed, 5);
    const EquationResiduals orig = equation_residuals(s, rates, kParams);
    const AdjointResiduals adj =
        adjoint_residual(s, self_adjoint_substitution(s, kParams), substitute_rates(rates, kParams), kParams);
    const auto fac = equivalence_factors(kParams);
    EXPECT_LE(max_abs_diff(adj.phi_eq, orig.vorticity * fac[0]), 1e-10 * adj.scale[0]);
    EXPECT_LE(max_abs_diff(adj.mu_eq, orig.v * fac[1]), 1e-10 * adj.scale[1]);
    EXPECT_LE(max_abs_diff(adj.r_eq, orig.rho * fac[2]), 1e-10 * adj.scale[2]);
  }
}

TEST(Equivalence, ModelTendenciesSatisfyBothSystems) {
  const Grid2D g = square(64);
  const FieldState s = random_state(g, 3, 0);
  const Tendencies rates = rhs(s, kParams);
  const AdjointResiduals adj =
      adjoint_residual(s, self_adjoint_substitution(s, kParams), substitute_rates(rates, kParams), kParams);
  EXPECT_LE(adj.phi_eq.max_abs(), 1e-10 * adj.scale[0]);
  EXPECT_LE(adj.mu_eq.max_abs(), 1e-10 * adj.scale[1]);
  EXPECT_LE(adj.r_eq.max_abs(), 1e-10 * adj.scale[2]);
}

TEST(Equivalence, HoldsWithoutRotation) {
  const PhysicalParams p{9.81, 0.0, 1.0};
  const Grid2D g = square(32);
  const FieldState s = random_state(g, 6, 0);
  const Tendencies rates = random_tendencies(g, 6, 1);
  const EquationResiduals orig = equation_residuals(s, rates, p);
  const AdjointResiduals adj = adjoint_residual(s, self_adjoint_substitution(s, p), substitute_rates(rates, p), p);
  EXPECT_LE(max_abs_diff(adj.mu_eq, orig.v), 1e-10 * adj.scale[1]);
  EXPECT_LE(max_abs_diff(adj.r_eq, orig.rho * p.density_weight()), 1e-10 * adj.scale[2]);
}

TEST(Equivalence, PlaneWaveCostateSolvesAdjoint) {
  const Grid2D g = square(32);
  const AnalyticSolution sol = beam_solution(plane_wave_beam(WaveVector{1.0, 2.0}, 0.4), kParams);
  const FieldState s = sol.sample(g, 0.3);
  const AdjointResiduals adj = adjoint_residual(s, self_adjoint_substitution(s, kParams),
                                                substitute_rates(sol.sample_rates(g, 0.3), kParams), kParams);
  EXPECT_LE(adj.phi_eq.max_abs(), 1e-10 * adj.scale[0]);
  EXPECT_LE(adj.mu_eq.max_abs(), 1e-10 * adj.scale[1]);
  EXPECT_LE(adj.r_eq.max_abs(), 1e-10 * adj.scale[2]);
}

TEST(Theta, ZeroCostateGivesZero) {
  const Grid2D g = square(16);
  const FieldState s = random_state(g, 1, 0);
  EXPECT_EQ(theta(s, Costate{ScalarField(g), ScalarField(g), ScalarField(g)}).max_abs(), 0.0);
}

TEST(Substitution, IsLinear) {
  const Grid2D g = square(16);
  const FieldState s = random_state(g, 2, 0);
  const FieldState twice{0.0, s.v * 2.0, s.rho * 2.0, s.psi * 2.0};
  const Costate a = self_adjoint_substitution(s, kParams), b = self_adjoint_substitution(twice, kParams);
  EXPECT_LE(max_abs_diff(b.r, a.r * 2.0), 1e-15 * b.r.max_abs());
  EXPECT_LE(max_abs_diff(b.mu, a.mu * 2.0), 0.0);
}

// Rotation enters the adjoint system only through f mu_z and f phi_z.
TEST(AdjointResidual, RotationTermAblation) {
  const Grid2D g = square(32);
  const FieldState s = random_state(g, 3, 0);
  const FieldState other = random_state(g, 4, 0);
  const Costate c{other.psi, other.v, other.rho};
  const Tendencies t = random_tendencies(g, 5, 0);
  const CostateRates rates{t.dpsi_dt, t.dv_dt, t.drho_dt, t.dzeta_dt};
  const PhysicalParams no_rotation{kParams.g, 0.0, kParams.N};
  const AdjointResiduals with_f = adjoint_residual(s, c, rates, kParams);
  const AdjointResiduals without = adjoint_residual(s, c, rates, no_rotation);
  EXPECT_LE(max_abs_diff(with_f.phi_eq - without.phi_eq, diff(c.mu, Axis::z, 1) * kParams.f), 1e-12 * with_f.scale[0]);
  EXPECT_LE(max_abs_diff(with_f.mu_eq - without.mu_eq, diff(c.phi, Axis::z, 1) * kParams.f), 1e-12 * with_f.scale[1]);
  EXPECT_LE(max_abs_diff(with_f.r_eq, without.r_eq), 0.0);
}

TEST(AdjointResidual, ZeroInputsGiveZero) {
  const Grid2D g = square(16);
  const ScalarField z(g);
  const AdjointResiduals r = adjoint_residual(zero_state(g), Costate{z, z, z}, CostateRates{z, z, z, z}, kParams);
  EXPECT_EQ(r.phi_eq.max_abs() + r.mu_eq.max_abs() + r.r_eq.max_abs(), 0.0);
}
