#pragma once

// The seven point symmetries: translations in v, rho, psi, t, x, z and the
// non-uniform dilation (x, z, v, rho, psi) -> (e^a x, e^a z, e^a v, e^a rho, e^2a psi).

#include <array>
#include <string>
#include <vector>

#include "stratwave/conservation.hpp"
#include "stratwave/exact.hpp"

namespace stratwave {

enum class GeneratorId { X1, X2, X3, X4, X5, X6, X7 };

std::string to_string(GeneratorId id);
const std::vector<GeneratorId>& all_generators();

/// W = eta - xi^j u_j for the generator. X4 uses the undealiased model
/// tendencies for the time derivatives; X7 uses the grid coordinates in
/// [0, L) and fills w3_x, w3_z analytically.
Characteristics characteristics(GeneratorId id, const FieldState& state, const PhysicalParams& params);

/// v(t,x,z) -> e^a v(t, e^-a x, e^-a z), likewise rho; psi picks up e^2a.
AnalyticSolution apply_dilation(const AnalyticSolution& sol, double a);

struct ScalingReport {
  double a = 1.0;
  /// log(max|R_bar_i| / max|R_i|) / log(a) per equation.
  std::array<double, 3> measured_power{};
  /// Powers implied by alpha = 1, b = a, c = a^2, beta = 1/a.
  std::array<int, 3> expected_power{0, 1, 1};
  /// max |R_bar_i - a^p_i R_i| / (a^p_i max|R_i|) with the expected powers.
  std::array<double, 3> pointwise_mismatch{};
};

/// Scales a random state (with random, non-solution time derivatives) on a
/// grid of size L by x -> a x, (v, rho, psi) -> (a v, a rho, a^2 psi),
/// (v_t, rho_t, zeta_t) -> (a v_t, a rho_t, zeta_t), and compares the
/// equation residuals before and after. Requires a > 0, a != 1 for the
/// measured powers (a = 1 reports zeros).
ScalingReport scaling_exponent_check(const PhysicalParams& params, double a, const Grid2D& grid,
                                     std::uint64_t seed);

/// Max difference between the residuals of a grid-shifted random state and
/// the shifted residuals of the original, over the three equations.
double translation_equivariance_error(const PhysicalParams& params, const Grid2D& grid,
                                      std::uint64_t seed, int shift_x, int shift_z);

}  // namespace stratwave
