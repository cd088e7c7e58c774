#pragma once

// Right-hand side and time integration of the rotating stratified
// internal-wave system in vorticity form:
//
//   zeta_t = J(psi, zeta) + g rho_x + f v_z,       zeta = Laplacian(psi)
//   v_t    = J(psi, v)    - f psi_z
//   rho_t  = J(psi, rho)  - (N^2/g) psi_x

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "stratwave/fields.hpp"

namespace stratwave {

/// Time derivatives of the dependent variables. dpsi_dt is the zero-mean
/// inverse Laplacian of dzeta_dt.
struct Tendencies {
  ScalarField dv_dt;
  ScalarField drho_dt;
  ScalarField dzeta_dt;
  ScalarField dpsi_dt;
};

/// Builds a Tendencies bundle from arbitrary v_t, rho_t and zeta_t, filling
/// psi_t by inversion of the Laplacian.
Tendencies make_tendencies(ScalarField dv_dt, ScalarField drho_dt, ScalarField dzeta_dt);

/// Band-limited random v_t, rho_t, zeta_t (test band of the grid), for
/// probing identities that must hold off solutions too.
Tendencies random_tendencies(const Grid2D& grid, std::uint64_t seed, std::uint64_t stream);

struct RhsOptions {
  /// Apply the 2/3 rule to derivatives and to the Jacobian products.
  bool dealias = false;
  /// Coefficient of a biharmonic damping term; zero means inviscid.
  double hyperviscosity = 0.0;
};

/// Throws BlowUpError (stamped with state.t) on non-finite input or output.
Tendencies rhs(const FieldState& state, const PhysicalParams& params, const RhsOptions& options = {});

/// Left-minus-right sides of the three equations for supplied time
/// derivatives. `scale` holds, per equation, the largest magnitude among the
/// individual terms, for relative comparisons.
struct EquationResiduals {
  ScalarField vorticity;
  ScalarField v;
  ScalarField rho;
  std::array<double, 3> scale{};
};

EquationResiduals equation_residuals(const FieldState& state, const Tendencies& rates,
                                     const PhysicalParams& params);

/// Classical RK4 on (v, rho, zeta) with psi rebuilt from zeta at every stage.
/// With dealiasing the state is first projected onto the 2/3-rule band. The
/// spatial mean of psi is carried through unchanged.
FieldState step_rk4(const FieldState& state, const PhysicalParams& params, double dt,
                    const RhsOptions& options = {.dealias = true});

/// 0.1 * min(dx, dz) / max(N, |f|, U), U the largest |grad psi|.
double default_dt(const FieldState& state, const PhysicalParams& params);

struct SimulationOptions {
  /// Non-positive selects default_dt; an automatic step is halved once on blow-up.
  double dt = 0.0;
  int n_steps = 0;
  int snapshot_every = 1;
  RhsOptions rhs{.dealias = true};
  /// When false, snapshots are only passed to the callback.
  bool keep_snapshots = true;
};

/// Domain integrals of the conserved densities v, rho and energy.
struct InvariantSample {
  double t = 0.0;
  double v_integral = 0.0;
  double rho_integral = 0.0;
  double energy_integral = 0.0;
};

InvariantSample sample_invariants(const FieldState& state, const PhysicalParams& params);

struct Trajectory {
  std::vector<FieldState> snapshots;
  std::vector<InvariantSample> invariants;
  double dt = 0.0;
};

using SnapshotCallback = std::function<void(const FieldState&, const InvariantSample&)>;

/// Advances n_steps and emits the initial state, every snapshot_every-th
/// state and the final state. The callback runs synchronously, so snapshots
/// delivered before an error are already persisted when it propagates.
Trajectory simulate(const FieldState& initial, const PhysicalParams& params,
                    const SimulationOptions& options, const SnapshotCallback& on_snapshot = {});

}  // namespace stratwave
