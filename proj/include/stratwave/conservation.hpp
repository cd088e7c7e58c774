#pragma once

// Conserved vectors (density C1, fluxes C2, C3) of the internal-wave system
// and the pointwise check D_t C1 + D_x C2 + D_z C3 = 0 with time derivatives
// replaced by the model tendencies.

#include <optional>
#include <string>
#include <vector>

#include "stratwave/fields.hpp"
#include "stratwave/model.hpp"

namespace stratwave {

enum class ConservedVectorId { v_translation, rho_translation, energy };

std::string to_string(ConservedVectorId id);
/// Accepts "v", "rho", "energy" and the enumerator names.
ConservedVectorId conserved_vector_from_string(const std::string& name);
const std::vector<ConservedVectorId>& all_conserved_vectors();

struct ConservedEval {
  ScalarField c1;
  ScalarField c2;
  ScalarField c3;
};

/// Characteristics W1 (v), W2 (rho), W3 (psi) of a symmetry generator. When
/// W3 is not periodic (the dilation carries the coordinates x, z) its
/// gradient must be supplied analytically in w3_x, w3_z; otherwise it is
/// differentiated spectrally.
struct Characteristics {
  ScalarField w1;
  ScalarField w2;
  ScalarField w3;
  std::optional<ScalarField> w3_x;
  std::optional<ScalarField> w3_z;
};

/// C1 = -v W1 - (g^2/N^2) rho W2 - psi_x D_x(W3) - psi_z D_z(W3).
ScalarField density_from_characteristics(const Characteristics& w, const FieldState& state,
                                         const PhysicalParams& params);

/// C1 alone; for energy it needs no time derivatives.
ScalarField density(ConservedVectorId id, const FieldState& state, const PhysicalParams& params);

/// Density and fluxes. The energy flux needs psi_t, taken from `rates`
/// (or from the undealiased model tendencies in the overload without them).
ConservedEval evaluate(ConservedVectorId id, const FieldState& state, const PhysicalParams& params);
ConservedEval evaluate(ConservedVectorId id, const FieldState& state, const PhysicalParams& params,
                       const Tendencies& rates);

struct DivergenceCheck {
  ScalarField residual;
  /// Largest of max|D_t C1|, max|D_x C2|, max|D_z C3|.
  double scale = 0.0;
};

/// D_t C1 by the chain rule with the supplied tendencies, plus spectral
/// D_x C2 + D_z C3.
DivergenceCheck divergence_check(ConservedVectorId id, const FieldState& state,
                                 const PhysicalParams& params, const Tendencies& rates);
/// As above with tendencies from rhs(state, params) (no dealiasing).
DivergenceCheck divergence_check(ConservedVectorId id, const FieldState& state,
                                 const PhysicalParams& params);
ScalarField divergence_residual(ConservedVectorId id, const FieldState& state,
                                const PhysicalParams& params);

struct DriftReport {
  std::vector<double> t;
  std::vector<double> integral;
  /// max_n |I(t_n) - I(t_0)| / max(|I(t_0)|, integral of |C1(t_0)|). The
  /// second reference keeps the ratio meaningful when I(t_0) is zero.
  double max_relative_drift = 0.0;
};

/// Quadrature of the density at every snapshot. Throws on an empty list or
/// snapshots on different grids.
DriftReport global_drift(ConservedVectorId id, const std::vector<FieldState>& snapshots,
                         const PhysicalParams& params);

/// Fixed normalization for the dilation density: subtracts the divergence
/// D_x(x Q / 2) + D_z(z Q / 2), Q = v^2 + (g^2/N^2) rho^2 + |grad psi|^2, and
/// divides by -2. Applied to the dilation density this yields the energy
/// density.
ScalarField normalize_dilation_density(const ScalarField& dilation_density, const FieldState& state,
                                       const PhysicalParams& params);

}  // namespace stratwave
