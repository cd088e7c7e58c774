#pragma once

// Closed-form solution families: the translation-dilation invariant solution,
// the generalized separated-variable beams, and their energy densities. All
// derivatives are analytic so the families can serve as residual oracles.

#include <array>
#include <functional>
#include <vector>

#include "stratwave/fields.hpp"
#include "stratwave/model.hpp"

namespace stratwave {

struct WaveVector {
  double k = 1.0;
  double m = 0.0;

  double norm2() const { return k * k + m * m; }
  double phase(double x, double z) const { return k * x + m * z; }
  void validate() const;
};

/// Positive root of omega^2 = (k^2 N^2 + m^2 f^2) / (k^2 + m^2).
double omega(const WaveVector& wave, const PhysicalParams& params);

/// Values and derivatives of (psi, v, rho) at one point (t, x, z).
struct PointJet {
  double psi = 0, psi_t = 0, psi_x = 0, psi_z = 0;
  double psi_xx = 0, psi_xz = 0, psi_zz = 0, psi_xt = 0, psi_zt = 0;
  double lap_psi_t = 0, lap_psi_x = 0, lap_psi_z = 0;
  double v = 0, v_t = 0, v_x = 0, v_z = 0;
  double rho = 0, rho_t = 0, rho_x = 0, rho_z = 0;
};

class AnalyticSolution {
 public:
  using Evaluator = std::function<PointJet(double t, double x, double z)>;

  explicit AnalyticSolution(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}

  PointJet operator()(double t, double x, double z) const { return evaluator_(t, x, z); }

  /// Point samples of (v, rho, psi) on the grid at time t.
  FieldState sample(const Grid2D& grid, double t) const;
  /// Analytic time derivatives on the grid; dpsi_dt is psi_t itself, not an
  /// inverted Laplacian.
  Tendencies sample_rates(const Grid2D& grid, double t) const;

 private:
  Evaluator evaluator_;
};

/// Pointwise left-minus-right sides of the three equations, with the largest
/// term magnitude of each equation as its scale.
struct PointResidual {
  std::array<double, 3> residual{};
  std::array<double, 3> scale{};

  /// max_i |residual_i| / max(scale_i, floor).
  double max_relative(double floor = 1e-300) const;
};

PointResidual pde_residual(const PointJet& jet, const PhysicalParams& params);

/// v^2 + (g^2/N^2) rho^2 + |grad psi|^2 at a point.
double energy_density(const PointJet& jet, const PhysicalParams& params);

/// A function of lambda = kx + mz with its first three derivatives.
class Envelope {
 public:
  using Jet = std::array<double, 4>;

  explicit Envelope(std::function<Jet(double)> fn) : fn_(std::move(fn)) {}

  Jet operator()(double lambda) const { return fn_(lambda); }

  static Envelope zero();
  static Envelope cosine(double amplitude = 1.0);
  static Envelope sine(double amplitude = 1.0);
  /// a / (1 + lambda^2)
  static Envelope lorentzian_even(double a);
  /// a lambda / (1 + lambda^2)
  static Envelope lorentzian_odd(double a);
  /// a exp(-(lambda/width)^2)
  static Envelope gaussian(double a, double width);
  /// c0 + c1 lambda + c2 lambda^2
  static Envelope polynomial(double c0, double c1, double c2);

  Envelope scaled(double s) const;

 private:
  std::function<Jet(double)> fn_;
};

struct InvariantSolutionParams {
  WaveVector wave;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
};

/// psi = phi(t) lambda^2, v = V(t) lambda, rho = R(t) lambda with the
/// harmonic amplitudes below. Requires k != 0 whenever C3 != 0.
AnalyticSolution invariant_solution(const InvariantSolutionParams& p, const PhysicalParams& params);

struct ReducedAmplitudes {
  double phi = 0.0;
  double V = 0.0;
  double R = 0.0;
};

/// Closed form: phi = C1 cos wt + C2 sin wt, V = (2fm/w)[C2 cos - C1 sin] + C3,
/// R = (2kN^2/(g w))[C2 cos - C1 sin] - (fm/(gk)) C3.
ReducedAmplitudes invariant_amplitudes(const InvariantSolutionParams& p,
                                       const PhysicalParams& params, double t);

/// Right-hand side of the reduced ODE system
///   phi' = (g k R + f m V) / (2 (k^2 + m^2)),  V' = -2 f m phi,  R' = -(2k/g) N^2 phi.
ReducedAmplitudes reduced_ode_rhs(const WaveVector& wave, const PhysicalParams& params,
                                  const ReducedAmplitudes& y);

struct OdeTrajectory {
  std::vector<double> t;
  std::vector<ReducedAmplitudes> y;
  double dt = 0.0;
};

/// RK4 integration of the reduced system from the closed-form initial data,
/// with the largest uniform step <= 1e-3/omega that lands on t_end.
OdeTrajectory ode_reduction_oracle(const InvariantSolutionParams& p, const PhysicalParams& params,
                                   double t_end);

/// Generalized invariant solution
///   psi = A cos wt + B sin wt,
///   v   = (fm/w)      [B' cos wt - A' sin wt] + F,
///   rho = (kN^2/(g w))[B' cos wt - A' sin wt] + H,
/// valid when g k H' + f m F' = 0.
struct BeamSpec {
  WaveVector wave;
  Envelope A = Envelope::zero();
  Envelope B = Envelope::zero();
  Envelope F = Envelope::zero();
  Envelope H = Envelope::zero();
};

/// g k H'(lambda) + f m F'(lambda).
double beam_constraint_residual(const BeamSpec& spec, const PhysicalParams& params, double lambda);

/// Throws unless the constraint holds to 1e-10 (relative to its terms) on a
/// fixed set of probe points in [-20, 20].
void check_beam_constraint(const BeamSpec& spec, const PhysicalParams& params);

AnalyticSolution beam_solution(const BeamSpec& spec, const PhysicalParams& params);
/// Same evaluator without the constraint check, for negative controls.
AnalyticSolution beam_solution_unchecked(const BeamSpec& spec, const PhysicalParams& params);

/// A = amplitude cos, B = amplitude sin: psi = amplitude cos(lambda - wt).
BeamSpec plane_wave_beam(const WaveVector& wave, double amplitude = 1.0);
/// A = a/(1+lambda^2), B = a lambda/(1+lambda^2), F = H = 0. Requires a > 0.
BeamSpec lorentzian_beam(double a, const WaveVector& wave, const PhysicalParams& params);
/// A = a exp(-(lambda/width)^2), B = 0, F = H = 0.
BeamSpec gaussian_beam(double a, double width, const WaveVector& wave);
/// A = B = 0 with mean profile F and the balancing H = -(fm/(gk)) F. Requires k != 0.
BeamSpec steady_beam(const Envelope& F, const WaveVector& wave, const PhysicalParams& params);

/// Beam energy A'(lambda)^2 + B'(lambda)^2.
double beam_energy_density(const BeamSpec& spec, double lambda);

}  // namespace stratwave
