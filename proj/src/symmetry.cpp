#include "stratwave/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "stratwave/error.hpp"

namespace stratwave {

std::string to_string(GeneratorId id) {
  return "X" + std::to_string(static_cast<int>(id) + 1);
}

const std::vector<GeneratorId>& all_generators() {
  static const std::vector<GeneratorId> ids{GeneratorId::X1, GeneratorId::X2, GeneratorId::X3,
                                            GeneratorId::X4, GeneratorId::X5, GeneratorId::X6,
                                            GeneratorId::X7};
  return ids;
}

Characteristics characteristics(GeneratorId id, const FieldState& state, const PhysicalParams& params) {
  state.check_shared_grid();
  const Grid2D& g = state.grid();
  const ScalarField zero(g);
  const ScalarField one(g, 1.0);
  switch (id) {
    case GeneratorId::X1: return {one, zero, zero, {}, {}};
    case GeneratorId::X2: return {zero, one, zero, {}, {}};
    case GeneratorId::X3: return {zero, zero, one, {}, {}};
    case GeneratorId::X4: {
      const Tendencies r = rhs(state, params);
      return {-r.dv_dt, -r.drho_dt, -r.dpsi_dt, {}, {}};
    }
    case GeneratorId::X5:
      return {-diff(state.v, Axis::x, 1), -diff(state.rho, Axis::x, 1), -diff(state.psi, Axis::x, 1),
              {}, {}};
    case GeneratorId::X6:
      return {-diff(state.v, Axis::z, 1), -diff(state.rho, Axis::z, 1), -diff(state.psi, Axis::z, 1),
              {}, {}};
    case GeneratorId::X7: {
      const ScalarField x = coordinate_x(g);
      const ScalarField z = coordinate_z(g);
      const Spectrum sp(state.psi);
      const ScalarField px = sp.derivative(1, 0);
      const ScalarField pz = sp.derivative(0, 1);
      const ScalarField pxx = sp.derivative(2, 0);
      const ScalarField pxz = sp.derivative(1, 1);
      const ScalarField pzz = sp.derivative(0, 2);
      Characteristics w{state.v - x * diff(state.v, Axis::x, 1) - z * diff(state.v, Axis::z, 1),
                        state.rho - x * diff(state.rho, Axis::x, 1) - z * diff(state.rho, Axis::z, 1),
                        state.psi * 2.0 - x * px - z * pz, {}, {}};
      w.w3_x = px - x * pxx - z * pxz;
      w.w3_z = pz - x * pxz - z * pzz;
      return w;
    }
  }
  throw Error("unknown generator");
}

AnalyticSolution apply_dilation(const AnalyticSolution& sol, double a) {
  if (!std::isfinite(a)) throw Error("dilation parameter must be finite");
  const double e = std::exp(a);
  const double ei = std::exp(-a);
  return AnalyticSolution([sol, e, ei](double t, double x, double z) {
    const PointJet j = sol(t, ei * x, ei * z);
    // A spatial derivative of order n scales v, rho by e^(1-n) and psi by e^(2-n).
    PointJet o;
    o.psi = e * e * j.psi;
    o.psi_t = e * e * j.psi_t;
    o.psi_x = e * j.psi_x;
    o.psi_z = e * j.psi_z;
    o.psi_xx = j.psi_xx;
    o.psi_xz = j.psi_xz;
    o.psi_zz = j.psi_zz;
    o.psi_xt = e * j.psi_xt;
    o.psi_zt = e * j.psi_zt;
    o.lap_psi_t = j.lap_psi_t;
    o.lap_psi_x = ei * j.lap_psi_x;
    o.lap_psi_z = ei * j.lap_psi_z;
    o.v = e * j.v;
    o.v_t = e * j.v_t;
    o.v_x = j.v_x;
    o.v_z = j.v_z;
    o.rho = e * j.rho;
    o.rho_t = e * j.rho_t;
    o.rho_x = j.rho_x;
    o.rho_z = j.rho_z;
    return o;
  });
}

namespace {
Tendencies random_rates(const Grid2D& grid, std::uint64_t seed) {
  return random_tendencies(grid, seed, 0x7A7E5);
}

ScalarField on_grid(const Grid2D& grid, const ScalarField& f) {
  return ScalarField(grid, std::vector<double>(f.values().begin(), f.values().end()));
}
}  // namespace

ScalingReport scaling_exponent_check(const PhysicalParams& params, double a, const Grid2D& grid,
                                     std::uint64_t seed) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error("scaling parameter must be positive");
  const FieldState s = random_state(grid, seed, 0);
  const Tendencies r = random_rates(grid, seed);
  const EquationResiduals base = equation_residuals(s, r, params);

  const Grid2D big(grid.nx(), grid.nz(), a * grid.Lx(), a * grid.Lz());
  const FieldState sb{s.t, on_grid(big, s.v * a), on_grid(big, s.rho * a), on_grid(big, s.psi * (a * a))};
  const Tendencies rb{on_grid(big, r.dv_dt * a), on_grid(big, r.drho_dt * a), on_grid(big, r.dzeta_dt),
                      on_grid(big, r.dpsi_dt * (a * a))};
  const EquationResiduals scaled = equation_residuals(sb, rb, params);

  ScalingReport rep;
  rep.a = a;
  const std::array<const ScalarField*, 3> b0{&base.vorticity, &base.v, &base.rho};
  const std::array<const ScalarField*, 3> b1{&scaled.vorticity, &scaled.v, &scaled.rho};
  for (int i = 0; i < 3; ++i) {
    const double m0 = b0[i]->max_abs();
    const double m1 = b1[i]->max_abs();
    rep.measured_power[i] = (a == 1.0 || m0 == 0.0) ? 0.0 : std::log(m1 / m0) / std::log(a);
    const double factor = std::pow(a, rep.expected_power[i]);
    double worst = 0.0;
    for (std::size_t n = 0; n < b0[i]->size(); ++n) {
      worst = std::max(worst, std::abs((*b1[i])[n] - factor * (*b0[i])[n]));
    }
    rep.pointwise_mismatch[i] = m0 > 0.0 ? worst / (factor * m0) : worst;
  }
  return rep;
}

double translation_equivariance_error(const PhysicalParams& params, const Grid2D& grid,
                                      std::uint64_t seed, int shift_x, int shift_z) {
  const FieldState s = random_state(grid, seed, 0);
  const Tendencies r = random_rates(grid, seed);
  const EquationResiduals base = equation_residuals(s, r, params);

  auto sh = [&](const ScalarField& f) { return shifted(f, shift_x, shift_z); };
  const FieldState ss{s.t, sh(s.v), sh(s.rho), sh(s.psi)};
  const Tendencies rs{sh(r.dv_dt), sh(r.drho_dt), sh(r.dzeta_dt), sh(r.dpsi_dt)};
  const EquationResiduals moved = equation_residuals(ss, rs, params);
  return std::max({max_abs_diff(moved.vorticity, sh(base.vorticity)), max_abs_diff(moved.v, sh(base.v)),
                   max_abs_diff(moved.rho, sh(base.rho))});
}

}  // namespace stratwave
