#include "stratwave/adjoint.hpp"

#include <algorithm>

namespace stratwave {

namespace {
void check_grids(const FieldState& state, const Costate& c) {
  state.check_shared_grid();
  require_same_grid(state.v, c.phi);
  require_same_grid(state.v, c.mu);
  require_same_grid(state.v, c.r);
}
}  // namespace

ScalarField theta(const FieldState& state, const Costate& costate) {
  check_grids(state, costate);
  const Spectrum sp(state.psi);
  const Spectrum sf(costate.phi);
  const ScalarField psi_xx = sp.derivative(2, 0);
  const ScalarField psi_xz = sp.derivative(1, 1);
  const ScalarField psi_zz = sp.derivative(0, 2);
  const ScalarField phi_xx = sf.derivative(2, 0);
  const ScalarField phi_xz = sf.derivative(1, 1);
  const ScalarField phi_zz = sf.derivative(0, 2);
  return jacobian(costate.mu, state.v) + jacobian(costate.r, state.rho) +
         (phi_xz * psi_xx + phi_zz * psi_xz - phi_xx * psi_xz - phi_xz * psi_zz) * 2.0;
}

double theta_scale(const FieldState& state, const Costate& costate) {
  check_grids(state, costate);
  const Spectrum sp(state.psi);
  const Spectrum sf(costate.phi);
  const ScalarField psi_xz = sp.derivative(1, 1);
  const ScalarField phi_xz = sf.derivative(1, 1);
  const Spectrum sm(costate.mu);
  const Spectrum sr(costate.r);
  const Spectrum sv(state.v);
  const Spectrum srho(state.rho);
  return std::max({(sm.derivative(1, 0) * sv.derivative(0, 1)).max_abs(),
                   (sm.derivative(0, 1) * sv.derivative(1, 0)).max_abs(),
                   (sr.derivative(1, 0) * srho.derivative(0, 1)).max_abs(),
                   (sr.derivative(0, 1) * srho.derivative(1, 0)).max_abs(),
                   2.0 * (phi_xz * sp.derivative(2, 0)).max_abs(),
                   2.0 * (sf.derivative(0, 2) * psi_xz).max_abs(),
                   2.0 * (sf.derivative(2, 0) * psi_xz).max_abs(),
                   2.0 * (phi_xz * sp.derivative(0, 2)).max_abs()});
}

AdjointResiduals adjoint_residual(const FieldState& state, const Costate& costate,
                                  const CostateRates& rates, const PhysicalParams& params) {
  params.validate();
  check_grids(state, costate);
  require_same_grid(state.v, rates.phi_t);
  require_same_grid(state.v, rates.mu_t);
  require_same_grid(state.v, rates.r_t);
  require_same_grid(state.v, rates.lap_phi_t);

  const Spectrum sp(state.psi);
  const Spectrum sf(costate.phi);
  const Spectrum sm(costate.mu);
  const Spectrum sr(costate.r);
  const ScalarField psi_x = sp.derivative(1, 0);
  const ScalarField psi_z = sp.derivative(0, 1);
  const ScalarField phi_x = sf.derivative(1, 0);
  const ScalarField phi_z = sf.derivative(0, 1);
  const ScalarField mu_x = sm.derivative(1, 0);
  const ScalarField mu_z = sm.derivative(0, 1);
  const ScalarField r_x = sr.derivative(1, 0);
  const ScalarField r_z = sr.derivative(0, 1);
  const ScalarField th = theta(state, costate);

  const ScalarField a_rx = r_x * params.stratification();
  const ScalarField a_fmu = mu_z * params.f;
  const ScalarField a_j1 = phi_x * sp.laplacian_derivative(0, 1);
  const ScalarField a_j2 = phi_z * sp.laplacian_derivative(1, 0);
  const ScalarField b_j1 = mu_x * psi_z;
  const ScalarField b_j2 = mu_z * psi_x;
  const ScalarField b_f = phi_z * params.f;
  const ScalarField c_g = phi_x * params.g;
  const ScalarField c_j1 = r_x * psi_z;
  const ScalarField c_j2 = r_z * psi_x;

  AdjointResiduals out{rates.lap_phi_t + a_rx + a_fmu - a_j1 + a_j2 - th,
                       -rates.mu_t - b_j1 + b_f + b_j2, -rates.r_t + c_g - c_j1 + c_j2, {}};
  out.scale[0] = std::max({rates.lap_phi_t.max_abs(), a_rx.max_abs(), a_fmu.max_abs(), a_j1.max_abs(),
                           a_j2.max_abs(), th.max_abs()});
  out.scale[1] = std::max({rates.mu_t.max_abs(), b_j1.max_abs(), b_f.max_abs(), b_j2.max_abs()});
  out.scale[2] = std::max({rates.r_t.max_abs(), c_g.max_abs(), c_j1.max_abs(), c_j2.max_abs()});
  return out;
}

Costate self_adjoint_substitution(const FieldState& state, const PhysicalParams& params) {
  params.validate();
  state.check_shared_grid();
  return Costate{state.psi, -state.v, state.rho * (-params.density_weight())};
}

CostateRates substitute_rates(const Tendencies& rates, const PhysicalParams& params) {
  params.validate();
  return CostateRates{rates.dpsi_dt, -rates.dv_dt, rates.drho_dt * (-params.density_weight()),
                      rates.dzeta_dt};
}

std::array<double, 3> equivalence_factors(const PhysicalParams& params) {
  return {1.0, 1.0, params.density_weight()};
}

}  // namespace stratwave
