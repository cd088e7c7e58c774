#include "stratwave/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "stratwave/error.hpp"

namespace stratwave {

std::string to_string(ConservedVectorId id) {
  switch (id) {
    case ConservedVectorId::v_translation: return "v";
    case ConservedVectorId::rho_translation: return "rho";
    case ConservedVectorId::energy: return "energy";
  }
  return "unknown";
}

ConservedVectorId conserved_vector_from_string(const std::string& name) {
  if (name == "v" || name == "v_translation") return ConservedVectorId::v_translation;
  if (name == "rho" || name == "rho_translation") return ConservedVectorId::rho_translation;
  if (name == "energy" || name == "E") return ConservedVectorId::energy;
  throw Error("unknown conserved vector: " + name);
}

const std::vector<ConservedVectorId>& all_conserved_vectors() {
  static const std::vector<ConservedVectorId> ids{
      ConservedVectorId::v_translation, ConservedVectorId::rho_translation, ConservedVectorId::energy};
  return ids;
}

ScalarField density_from_characteristics(const Characteristics& w, const FieldState& state,
                                         const PhysicalParams& params) {
  params.validate();
  state.check_shared_grid();
  require_same_grid(state.v, w.w1);
  require_same_grid(state.v, w.w2);
  require_same_grid(state.v, w.w3);
  const ScalarField w3_x = w.w3_x ? *w.w3_x : diff(w.w3, Axis::x, 1);
  const ScalarField w3_z = w.w3_z ? *w.w3_z : diff(w.w3, Axis::z, 1);
  const Spectrum sp(state.psi);
  return -(state.v * w.w1) - state.rho * w.w2 * params.density_weight() -
         sp.derivative(1, 0) * w3_x - sp.derivative(0, 1) * w3_z;
}

ScalarField density(ConservedVectorId id, const FieldState& state, const PhysicalParams& params) {
  params.validate();
  state.check_shared_grid();
  switch (id) {
    case ConservedVectorId::v_translation: return state.v;
    case ConservedVectorId::rho_translation: return state.rho;
    case ConservedVectorId::energy: {
      const Spectrum sp(state.psi);
      const ScalarField px = sp.derivative(1, 0);
      const ScalarField pz = sp.derivative(0, 1);
      return state.v * state.v + state.rho * state.rho * params.density_weight() + px * px + pz * pz;
    }
  }
  throw Error("unknown conserved vector");
}

ConservedEval evaluate(ConservedVectorId id, const FieldState& state, const PhysicalParams& params) {
  if (id == ConservedVectorId::energy) return evaluate(id, state, params, rhs(state, params));
  // The translation vectors need no time derivatives.
  const Grid2D& g = state.grid();
  return evaluate(id, state, params,
                  Tendencies{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)});
}

ConservedEval evaluate(ConservedVectorId id, const FieldState& state, const PhysicalParams& params,
                       const Tendencies& rates) {
  params.validate();
  state.check_shared_grid();
  require_same_grid(state.psi, rates.dpsi_dt);
  const Spectrum sp(state.psi);
  const ScalarField psi_x = sp.derivative(1, 0);
  const ScalarField psi_z = sp.derivative(0, 1);

  switch (id) {
    case ConservedVectorId::v_translation:
      // C = (v, v psi_z, f psi - v psi_x)
      return ConservedEval{state.v, state.v * psi_z, state.psi * params.f - state.v * psi_x};
    case ConservedVectorId::rho_translation:
      // C = (rho, (N^2/g) psi + rho psi_z, -rho psi_x)
      return ConservedEval{state.rho, state.psi * params.stratification() + state.rho * psi_z,
                           -(state.rho * psi_x)};
    case ConservedVectorId::energy: {
      const double w = params.density_weight();
      const Spectrum st(rates.dpsi_dt);
      const ScalarField psi_xt = st.derivative(1, 0);
      const ScalarField psi_zt = st.derivative(0, 1);
      const ScalarField v2 = state.v * state.v;
      const ScalarField r2 = state.rho * state.rho * w;
      const ScalarField psi2 = state.psi * state.psi;
      ScalarField c1 = v2 + r2 + psi_x * psi_x + psi_z * psi_z;
      ScalarField c2 = state.rho * state.psi * (2.0 * params.g) + (v2 + r2) * psi_z -
                       state.psi * psi_xt * 2.0 + psi2 * sp.laplacian_derivative(0, 1);
      ScalarField c3 = state.v * state.psi * (2.0 * params.f) - (v2 + r2) * psi_x -
                       state.psi * psi_zt * 2.0 - psi2 * sp.laplacian_derivative(1, 0);
      return ConservedEval{std::move(c1), std::move(c2), std::move(c3)};
    }
  }
  throw Error("unknown conserved vector");
}

DivergenceCheck divergence_check(ConservedVectorId id, const FieldState& state,
                                 const PhysicalParams& params, const Tendencies& rates) {
  const ConservedEval c = evaluate(id, state, params, rates);
  ScalarField dt_c1(state.grid());
  switch (id) {
    case ConservedVectorId::v_translation: dt_c1 = rates.dv_dt; break;
    case ConservedVectorId::rho_translation: dt_c1 = rates.drho_dt; break;
    case ConservedVectorId::energy: {
      const Spectrum sp(state.psi);
      const Spectrum st(rates.dpsi_dt);
      dt_c1 = (state.v * rates.dv_dt + state.rho * rates.drho_dt * params.density_weight() +
               sp.derivative(1, 0) * st.derivative(1, 0) + sp.derivative(0, 1) * st.derivative(0, 1)) *
              2.0;
      break;
    }
  }
  const ScalarField dx_c2 = diff(c.c2, Axis::x, 1);
  const ScalarField dz_c3 = diff(c.c3, Axis::z, 1);
  DivergenceCheck out{dt_c1 + dx_c2 + dz_c3, 0.0};
  out.scale = std::max({dt_c1.max_abs(), dx_c2.max_abs(), dz_c3.max_abs()});
  return out;
}

DivergenceCheck divergence_check(ConservedVectorId id, const FieldState& state,
                                 const PhysicalParams& params) {
  return divergence_check(id, state, params, rhs(state, params));
}

ScalarField divergence_residual(ConservedVectorId id, const FieldState& state,
                                const PhysicalParams& params) {
  return divergence_check(id, state, params).residual;
}

DriftReport global_drift(ConservedVectorId id, const std::vector<FieldState>& snapshots,
                         const PhysicalParams& params) {
  if (snapshots.empty()) throw Error("global drift needs at least one snapshot");
  DriftReport out;
  const Grid2D& grid = snapshots.front().grid();
  double reference = 0.0;
  for (const FieldState& s : snapshots) {
    if (!(s.grid() == grid)) throw Error("grid mismatch");
    const ScalarField c1 = density(id, s, params);
    if (out.t.empty()) {
      double abs_sum = 0.0;
      for (double x : c1.values()) abs_sum += std::abs(x);
      reference = abs_sum * grid.dx() * grid.dz();
    }
    out.t.push_back(s.t);
    out.integral.push_back(integrate(c1));
  }
  reference = std::max(reference, std::abs(out.integral.front()));
  for (double v : out.integral) {
    const double d = std::abs(v - out.integral.front());
    out.max_relative_drift = std::max(out.max_relative_drift, reference > 0.0 ? d / reference : d);
  }
  return out;
}

ScalarField normalize_dilation_density(const ScalarField& dilation_density, const FieldState& state,
                                       const PhysicalParams& params) {
  require_same_grid(dilation_density, state.v);
  const ScalarField q = density(ConservedVectorId::energy, state, params);
  const ScalarField x = coordinate_x(state.grid());
  const ScalarField z = coordinate_z(state.grid());
  // D_x(x Q) = Q + x Q_x keeps the non-periodic factor out of the spectral derivative.
  const ScalarField div = (q * 2.0 + x * diff(q, Axis::x, 1) + z * diff(q, Axis::z, 1)) * 0.5;
  return (dilation_density - div) * (-0.5);
}

}  // namespace stratwave
