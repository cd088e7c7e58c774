#include "stratwave/model.hpp"

#include <algorithm>
#include <cmath>

#include "stratwave/conservation.hpp"
#include "stratwave/error.hpp"
#include "stratwave/random.hpp"

namespace stratwave {

namespace {

bool finite(const FieldState& s) {
  return s.v.all_finite() && s.rho.all_finite() && s.psi.all_finite();
}

ScalarField biharmonic(const ScalarField& f) { return laplacian(laplacian(f)); }

struct Prognostic {
  ScalarField v;
  ScalarField rho;
  ScalarField zeta;
};

FieldState rebuild(const Prognostic& p, double psi_mean, double t) {
  if (!p.v.all_finite() || !p.rho.all_finite() || !p.zeta.all_finite()) throw BlowUpError(t);
  ScalarField psi = inv_laplacian(p.zeta);
  psi += psi_mean;
  return FieldState{t, p.v, p.rho, std::move(psi)};
}

Prognostic advance(const Prognostic& base, const Tendencies& k, double h) {
  return Prognostic{base.v + k.dv_dt * h, base.rho + k.drho_dt * h, base.zeta + k.dzeta_dt * h};
}

}  // namespace

Tendencies make_tendencies(ScalarField dv_dt, ScalarField drho_dt, ScalarField dzeta_dt) {
  require_same_grid(dv_dt, drho_dt);
  require_same_grid(dv_dt, dzeta_dt);
  ScalarField dpsi_dt = inv_laplacian(dzeta_dt);
  return Tendencies{std::move(dv_dt), std::move(drho_dt), std::move(dzeta_dt), std::move(dpsi_dt)};
}

Tendencies random_tendencies(const Grid2D& grid, std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  const int k = test_band_limit(std::min(grid.nx(), grid.nz()));
  ScalarField dv = random_band_limited(grid, rng, 1.0, k, k);
  ScalarField drho = random_band_limited(grid, rng, 1.0, k, k);
  ScalarField dzeta = random_band_limited(grid, rng, 1.0, k, k);
  return make_tendencies(std::move(dv), std::move(drho), std::move(dzeta));
}

Tendencies rhs(const FieldState& state, const PhysicalParams& params, const RhsOptions& options) {
  params.validate();
  state.check_shared_grid();
  if (!finite(state)) throw BlowUpError(state.t);

  const Grid2D& grid = state.grid();
  const int kx = options.dealias ? dealias_cutoff(grid.nx()) : grid.nx();
  const int kz = options.dealias ? dealias_cutoff(grid.nz()) : grid.nz();

  const Spectrum sp(state.psi);
  const Spectrum sv(state.v);
  const Spectrum sr(state.rho);
  const ScalarField psi_x = sp.derivative(1, 0, kx, kz);
  const ScalarField psi_z = sp.derivative(0, 1, kx, kz);
  const ScalarField lap_psi_x = sp.laplacian_derivative(1, 0, kx, kz);
  const ScalarField lap_psi_z = sp.laplacian_derivative(0, 1, kx, kz);
  const ScalarField v_x = sv.derivative(1, 0, kx, kz);
  const ScalarField v_z = sv.derivative(0, 1, kx, kz);
  const ScalarField rho_x = sr.derivative(1, 0, kx, kz);
  const ScalarField rho_z = sr.derivative(0, 1, kx, kz);

  ScalarField j_zeta = psi_x * lap_psi_z - psi_z * lap_psi_x;
  ScalarField j_v = psi_x * v_z - psi_z * v_x;
  ScalarField j_rho = psi_x * rho_z - psi_z * rho_x;
  if (!j_zeta.all_finite() || !j_v.all_finite() || !j_rho.all_finite()) throw BlowUpError(state.t);
  if (options.dealias) {
    j_zeta = dealias(j_zeta);
    j_v = dealias(j_v);
    j_rho = dealias(j_rho);
  }

  ScalarField dzeta = j_zeta + rho_x * params.g + v_z * params.f;
  ScalarField dv = j_v - psi_z * params.f;
  ScalarField drho = j_rho - psi_x * params.stratification();

  if (options.hyperviscosity != 0.0) {
    const double nu = options.hyperviscosity;
    dzeta -= biharmonic(sp.laplacian_derivative(0, 0)) * nu;
    dv -= biharmonic(state.v) * nu;
    drho -= biharmonic(state.rho) * nu;
  }

  if (!dzeta.all_finite() || !dv.all_finite() || !drho.all_finite()) {
    throw BlowUpError(state.t);
  }
  return make_tendencies(std::move(dv), std::move(drho), std::move(dzeta));
}

EquationResiduals equation_residuals(const FieldState& state, const Tendencies& rates,
                                     const PhysicalParams& params) {
  params.validate();
  state.check_shared_grid();
  require_same_grid(state.psi, rates.dv_dt);

  const Spectrum sp(state.psi);
  const ScalarField psi_x = sp.derivative(1, 0);
  const ScalarField psi_z = sp.derivative(0, 1);
  const ScalarField j_zeta = psi_x * sp.laplacian_derivative(0, 1) - psi_z * sp.laplacian_derivative(1, 0);
  const ScalarField j_v = jacobian(state.psi, state.v);
  const ScalarField j_rho = jacobian(state.psi, state.rho);
  const ScalarField g_rho_x = diff(state.rho, Axis::x, 1) * params.g;
  const ScalarField f_v_z = diff(state.v, Axis::z, 1) * params.f;
  const ScalarField f_psi_z = psi_z * params.f;
  const ScalarField s_psi_x = psi_x * params.stratification();

  EquationResiduals out{rates.dzeta_dt - g_rho_x - f_v_z - j_zeta, rates.dv_dt + f_psi_z - j_v,
                        rates.drho_dt + s_psi_x - j_rho, {}};
  out.scale[0] = std::max({rates.dzeta_dt.max_abs(), g_rho_x.max_abs(), f_v_z.max_abs(), j_zeta.max_abs()});
  out.scale[1] = std::max({rates.dv_dt.max_abs(), f_psi_z.max_abs(), j_v.max_abs()});
  out.scale[2] = std::max({rates.drho_dt.max_abs(), s_psi_x.max_abs(), j_rho.max_abs()});
  return out;
}

FieldState step_rk4(const FieldState& state, const PhysicalParams& params, double dt,
                    const RhsOptions& options) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("dt must be positive");
  state.check_shared_grid();
  if (!finite(state)) throw BlowUpError(state.t);

  const double psi_mean = state.psi.mean();
  Prognostic y0{state.v, state.rho, state.zeta()};
  if (options.dealias) {
    y0 = Prognostic{dealias(y0.v), dealias(y0.rho), dealias(y0.zeta)};
  }

  const double t = state.t;
  const Tendencies k1 = rhs(rebuild(y0, psi_mean, t), params, options);
  const Tendencies k2 = rhs(rebuild(advance(y0, k1, 0.5 * dt), psi_mean, t + 0.5 * dt), params, options);
  const Tendencies k3 = rhs(rebuild(advance(y0, k2, 0.5 * dt), psi_mean, t + 0.5 * dt), params, options);
  const Tendencies k4 = rhs(rebuild(advance(y0, k3, dt), psi_mean, t + dt), params, options);

  const double w1 = dt / 6.0;
  const double w2 = dt / 3.0;
  Prognostic y1{y0.v + k1.dv_dt * w1 + k2.dv_dt * w2 + k3.dv_dt * w2 + k4.dv_dt * w1,
                y0.rho + k1.drho_dt * w1 + k2.drho_dt * w2 + k3.drho_dt * w2 + k4.drho_dt * w1,
                y0.zeta + k1.dzeta_dt * w1 + k2.dzeta_dt * w2 + k3.dzeta_dt * w2 + k4.dzeta_dt * w1};
  FieldState out = rebuild(y1, psi_mean, t + dt);
  if (!finite(out)) throw BlowUpError(t + dt);
  return out;
}

double default_dt(const FieldState& state, const PhysicalParams& params) {
  const Spectrum sp(state.psi);
  const ScalarField u = sp.derivative(0, 1);
  const ScalarField w = sp.derivative(1, 0);
  double speed = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) speed = std::max(speed, std::hypot(u[i], w[i]));
  const double rate = std::max({params.N, std::abs(params.f), speed});
  const Grid2D& g = state.grid();
  return 0.1 * std::min(g.dx(), g.dz()) / rate;
}

InvariantSample sample_invariants(const FieldState& state, const PhysicalParams& params) {
  return InvariantSample{state.t,
                         integrate(density(ConservedVectorId::v_translation, state, params)),
                         integrate(density(ConservedVectorId::rho_translation, state, params)),
                         integrate(density(ConservedVectorId::energy, state, params))};
}

Trajectory simulate(const FieldState& initial, const PhysicalParams& params,
                    const SimulationOptions& options, const SnapshotCallback& on_snapshot) {
  params.validate();
  if (options.n_steps < 0) throw Error("n_steps must be non-negative");
  if (options.snapshot_every < 1) throw Error("snapshot_every must be >= 1");
  const bool auto_dt = !(options.dt > 0.0);
  double dt = auto_dt ? default_dt(initial, params) : options.dt;
  int substeps = 1;
  bool halved = false;

  Trajectory traj;
  traj.dt = dt;
  auto emit = [&](const FieldState& s) {
    const InvariantSample inv = sample_invariants(s, params);
    if (options.keep_snapshots) traj.snapshots.push_back(s);
    traj.invariants.push_back(inv);
    if (on_snapshot) on_snapshot(s, inv);
  };

  FieldState state = initial;
  emit(state);
  for (int n = 1; n <= options.n_steps; ++n) {
    const double t_target = initial.t + n * dt;
    FieldState next = state;
    try {
      for (int s = 0; s < substeps; ++s) next = step_rk4(next, params, dt / substeps, options.rhs);
    } catch (const BlowUpError&) {
      if (!auto_dt || halved) throw;
      halved = true;
      substeps = 2;
      next = state;
      for (int s = 0; s < substeps; ++s) next = step_rk4(next, params, dt / substeps, options.rhs);
    }
    next.t = t_target;
    state = std::move(next);
    if (n % options.snapshot_every == 0 || n == options.n_steps) emit(state);
  }
  return traj;
}

}  // namespace stratwave
