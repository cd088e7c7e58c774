#pragma once

// Adjoint system in the costate (phi, mu, r) and the substitution
// phi = psi, mu = -v, r = -(g^2/N^2) rho that maps it back onto the
// original equations.

#include <array>

#include "stratwave/fields.hpp"
#include "stratwave/model.hpp"

namespace stratwave {

struct Costate {
  ScalarField phi;
  ScalarField mu;
  ScalarField r;
};

/// Time derivatives of the costate; lap_phi_t is supplied separately so
/// callers control its gauge.
struct CostateRates {
  ScalarField phi_t;
  ScalarField mu_t;
  ScalarField r_t;
  ScalarField lap_phi_t;
};

/// J(mu, v) + J(r, rho) + 2 [phi_xz psi_xx + phi_zz psi_xz - phi_xx psi_xz - phi_xz psi_zz].
ScalarField theta(const FieldState& state, const Costate& costate);
/// Largest magnitude among the individual products that make up theta.
double theta_scale(const FieldState& state, const Costate& costate);

struct AdjointResiduals {
  ScalarField phi_eq;
  ScalarField mu_eq;
  ScalarField r_eq;
  /// Largest term magnitude in each equation.
  std::array<double, 3> scale{};
};

/// Left-hand sides of the adjoint equations
///   Lap(phi_t) + (N^2/g) r_x + f mu_z - phi_x Lap(psi_z) + phi_z Lap(psi_x) - Theta
///   -mu_t - mu_x psi_z + f phi_z + mu_z psi_x
///   -r_t + g phi_x - r_x psi_z + r_z psi_x
AdjointResiduals adjoint_residual(const FieldState& state, const Costate& costate,
                                  const CostateRates& rates, const PhysicalParams& params);

Costate self_adjoint_substitution(const FieldState& state, const PhysicalParams& params);

/// The substitution applied to state time derivatives.
CostateRates substitute_rates(const Tendencies& rates, const PhysicalParams& params);

/// Per-equation factors relating the adjoint residuals under the substitution
/// to the original residuals: (1, 1, g^2/N^2).
std::array<double, 3> equivalence_factors(const PhysicalParams& params);

}  // namespace stratwave
