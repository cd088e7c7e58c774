#pragma once

// Weak (directional) variational derivatives of integrated densities. On a
// periodic grid with spectral differentiation, a density is a divergence
// exactly when every directional derivative of its integral vanishes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stratwave/fields.hpp"
#include "stratwave/symmetry.hpp"

namespace stratwave {

struct DensityFunctional {
  std::string name;
  std::function<ScalarField(const FieldState&)> eval;
};

enum class Slot { v, rho, psi };

std::string to_string(Slot slot);

struct Variation {
  /// d/d eps of the integral of F(fields + eps probe) at eps = 0.
  double value = 0.0;
  /// max(integral |F(u)|, integral |F(u + s p)|) * max|probe| / max|slot field|,
  /// with s = max|slot field| / max|probe|.
  double scale = 0.0;

  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// Central difference with eps = 1e-6 max|slot field| / max|probe| and one
/// Richardson step. Throws if F is non-finite.
Variation directional_variation(const DensityFunctional& F, const FieldState& fields, Slot slot,
                                const ScalarField& probe);

struct DivergenceVerdict {
  bool divergence = false;
  double max_relative = 0.0;
  int evaluations = 0;
};

/// Probes all three slots at n_trials random band-limited states with
/// random band-limited probes. Requires n_trials >= 8.
DivergenceVerdict is_divergence(const DensityFunctional& F, const Grid2D& grid, int n_trials,
                                std::uint64_t seed, double tol = 1e-7);

/// Probes all three slots at the supplied solution states, n_probes random
/// probes per state and slot.
DivergenceVerdict is_trivial_density(const DensityFunctional& C1, const std::vector<FieldState>& states,
                                     int n_probes, std::uint64_t seed, double tol = 1e-7);

/// States lying on solutions: a few plane-wave exact solutions at random
/// times, and snapshots of short dealiased simulations run on the half grid
/// and resampled to `grid` (so their spectra stay inside the test band).
/// `grid` must have Lx = Lz = 2 pi and dimensions divisible by 4.
std::vector<FieldState> on_solution_states(const PhysicalParams& params, const Grid2D& grid,
                                           std::uint64_t seed, int n_simulated = 2);

struct VariationalIdentity {
  std::string name;
  DensityFunctional functional;
  Slot slot;
};

/// The eight Jacobian identities: delta J(psi,v)/delta v, delta J(psi,v)/delta psi,
/// delta[v J(psi,v)]/delta v, delta[v J(psi,v)]/delta psi, delta[rho J(psi,rho)]/delta rho,
/// delta[rho J(psi,rho)]/delta psi, delta J(psi,Lap psi)/delta psi,
/// delta[psi J(psi,Lap psi)]/delta psi. All vanish.
std::vector<VariationalIdentity> jacobian_identities();

struct IdentityResult {
  std::string name;
  double max_relative = 0.0;
};

/// Max relative variation of one identity over n_trials random states and probes.
IdentityResult check_identity(const VariationalIdentity& id, const Grid2D& grid, int n_trials,
                              std::uint64_t seed);

/// Density of a generator's conservation law, -v W1 - ... with time
/// derivatives replaced by the model tendencies.
DensityFunctional generator_density(GeneratorId id, const PhysicalParams& params);
/// v^2 + (g^2/N^2) rho^2 + |grad psi|^2.
DensityFunctional energy_functional(const PhysicalParams& params);
/// v
DensityFunctional v_functional();
/// rho
DensityFunctional rho_functional();

}  // namespace stratwave
