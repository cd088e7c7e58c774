#include "stratwave/exact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "stratwave/error.hpp"

namespace stratwave {

void WaveVector::validate() const {
  if (!std::isfinite(k) || !std::isfinite(m)) throw Error("wave vector must be finite");
  if (k == 0.0 && m == 0.0) throw Error("wave vector (k, m) must be nonzero");
}

double omega(const WaveVector& wave, const PhysicalParams& params) {
  wave.validate();
  const double k2 = wave.k * wave.k;
  const double m2 = wave.m * wave.m;
  return std::sqrt((k2 * params.N * params.N + m2 * params.f * params.f) / (k2 + m2));
}

// ---------------------------------------------------------------------------

FieldState AnalyticSolution::sample(const Grid2D& grid, double t) const {
  FieldState s = zero_state(grid, t);
  for (int ix = 0; ix < grid.nx(); ++ix) {
    for (int iz = 0; iz < grid.nz(); ++iz) {
      const PointJet j = evaluator_(t, grid.x(ix), grid.z(iz));
      s.v(ix, iz) = j.v;
      s.rho(ix, iz) = j.rho;
      s.psi(ix, iz) = j.psi;
    }
  }
  return s;
}

Tendencies AnalyticSolution::sample_rates(const Grid2D& grid, double t) const {
  Tendencies r{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)};
  for (int ix = 0; ix < grid.nx(); ++ix) {
    for (int iz = 0; iz < grid.nz(); ++iz) {
      const PointJet j = evaluator_(t, grid.x(ix), grid.z(iz));
      r.dv_dt(ix, iz) = j.v_t;
      r.drho_dt(ix, iz) = j.rho_t;
      r.dzeta_dt(ix, iz) = j.lap_psi_t;
      r.dpsi_dt(ix, iz) = j.psi_t;
    }
  }
  return r;
}

double PointResidual::max_relative(double floor) const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(residual[i]) / std::max(scale[i], floor));
  return worst;
}

PointResidual pde_residual(const PointJet& j, const PhysicalParams& params) {
  const double s = params.stratification();
  const double jz1 = j.psi_x * j.lap_psi_z;
  const double jz2 = j.psi_z * j.lap_psi_x;
  const double jv1 = j.psi_x * j.v_z;
  const double jv2 = j.psi_z * j.v_x;
  const double jr1 = j.psi_x * j.rho_z;
  const double jr2 = j.psi_z * j.rho_x;

  PointResidual r;
  r.residual[0] = j.lap_psi_t - params.g * j.rho_x - params.f * j.v_z - (jz1 - jz2);
  r.residual[1] = j.v_t + params.f * j.psi_z - (jv1 - jv2);
  r.residual[2] = j.rho_t + s * j.psi_x - (jr1 - jr2);
  r.scale[0] = std::max({std::abs(j.lap_psi_t), std::abs(params.g * j.rho_x),
                         std::abs(params.f * j.v_z), std::abs(jz1), std::abs(jz2)});
  r.scale[1] = std::max({std::abs(j.v_t), std::abs(params.f * j.psi_z), std::abs(jv1), std::abs(jv2)});
  r.scale[2] = std::max({std::abs(j.rho_t), std::abs(s * j.psi_x), std::abs(jr1), std::abs(jr2)});
  return r;
}

double energy_density(const PointJet& j, const PhysicalParams& params) {
  return j.v * j.v + params.density_weight() * j.rho * j.rho + j.psi_x * j.psi_x + j.psi_z * j.psi_z;
}

// ---------------------------------------------------------------------------
// Envelopes

Envelope Envelope::zero() {
  return Envelope([](double) { return Jet{0.0, 0.0, 0.0, 0.0}; });
}

Envelope Envelope::cosine(double amplitude) {
  return Envelope([amplitude](double l) {
    const double c = std::cos(l), s = std::sin(l);
    return Jet{amplitude * c, -amplitude * s, -amplitude * c, amplitude * s};
  });
}

Envelope Envelope::sine(double amplitude) {
  return Envelope([amplitude](double l) {
    const double c = std::cos(l), s = std::sin(l);
    return Jet{amplitude * s, amplitude * c, -amplitude * s, -amplitude * c};
  });
}

namespace {
// A + iB = a / (1 - i lambda); its n-th derivative is a n! i^n / (1 - i lambda)^(n+1).
std::array<std::complex<double>, 4> lorentzian_jet(double a, double l) {
  const std::complex<double> w = 1.0 / std::complex<double>(1.0, -l);
  const std::complex<double> i{0.0, 1.0};
  std::array<std::complex<double>, 4> out;
  std::complex<double> term = a * w;
  double fact = 1.0;
  std::complex<double> ipow{1.0, 0.0};
  std::complex<double> wpow = w;
  for (int n = 0; n < 4; ++n) {
    if (n > 0) {
      fact *= n;
      ipow *= i;
      wpow *= w;
    }
    term = a * fact * ipow * wpow;
    out[n] = term;
  }
  return out;
}
}  // namespace

Envelope Envelope::lorentzian_even(double a) {
  return Envelope([a](double l) {
    const auto c = lorentzian_jet(a, l);
    return Jet{c[0].real(), c[1].real(), c[2].real(), c[3].real()};
  });
}

Envelope Envelope::lorentzian_odd(double a) {
  return Envelope([a](double l) {
    const auto c = lorentzian_jet(a, l);
    return Jet{c[0].imag(), c[1].imag(), c[2].imag(), c[3].imag()};
  });
}

Envelope Envelope::gaussian(double a, double width) {
  if (!(width > 0.0)) throw Error("gaussian width must be positive");
  return Envelope([a, width](double l) {
    const double s = l / width;
    const double g = a * std::exp(-s * s);
    return Jet{g, -2.0 * s * g / width, (4.0 * s * s - 2.0) * g / (width * width),
               (-8.0 * s * s * s + 12.0 * s) * g / (width * width * width)};
  });
}

Envelope Envelope::polynomial(double c0, double c1, double c2) {
  return Envelope([=](double l) {
    return Jet{c0 + c1 * l + c2 * l * l, c1 + 2.0 * c2 * l, 2.0 * c2, 0.0};
  });
}

Envelope Envelope::scaled(double s) const {
  return Envelope([fn = fn_, s](double l) {
    Jet j = fn(l);
    for (double& x : j) x *= s;
    return j;
  });
}

// ---------------------------------------------------------------------------
// Invariant solution

namespace {
double c3_density_coefficient(const InvariantSolutionParams& p, const PhysicalParams& params) {
  if (p.C3 == 0.0) return 0.0;
  if (p.wave.k == 0.0) throw Error("invariant solution with C3 != 0 requires k != 0");
  return -params.f * p.wave.m / (params.g * p.wave.k) * p.C3;
}

double require_positive_omega(const WaveVector& wave, const PhysicalParams& params) {
  const double w = omega(wave, params);
  if (!(w > 0.0)) throw Error("omega vanishes for this wave vector (k = 0 and f = 0)");
  return w;
}
}  // namespace

ReducedAmplitudes invariant_amplitudes(const InvariantSolutionParams& p,
                                       const PhysicalParams& params, double t) {
  params.validate();
  const double w = require_positive_omega(p.wave, params);
  const double c = std::cos(w * t), s = std::sin(w * t);
  const double bracket = p.C2 * c - p.C1 * s;
  return ReducedAmplitudes{
      p.C1 * c + p.C2 * s, 2.0 * params.f * p.wave.m / w * bracket + p.C3,
      2.0 * p.wave.k / (params.g * w) * params.N * params.N * bracket +
          c3_density_coefficient(p, params)};
}

AnalyticSolution invariant_solution(const InvariantSolutionParams& p, const PhysicalParams& params) {
  params.validate();
  const double w = require_positive_omega(p.wave, params);
  const double r_mean = c3_density_coefficient(p, params);
  const double v_coef = 2.0 * params.f * p.wave.m / w;
  const double r_coef = 2.0 * p.wave.k * params.N * params.N / (params.g * w);
  const double k = p.wave.k, m = p.wave.m, K = p.wave.norm2();
  return AnalyticSolution([=](double t, double x, double z) {
    const double c = std::cos(w * t), s = std::sin(w * t);
    const double lam = k * x + m * z;
    const double phi = p.C1 * c + p.C2 * s;
    const double bracket = p.C2 * c - p.C1 * s;
    const double phi_t = w * bracket;
    const double bracket_t = -w * phi;
    const double V = v_coef * bracket + p.C3;
    const double R = r_coef * bracket + r_mean;

    PointJet j;
    j.psi = phi * lam * lam;
    j.psi_t = phi_t * lam * lam;
    j.psi_x = 2.0 * k * lam * phi;
    j.psi_z = 2.0 * m * lam * phi;
    j.psi_xx = 2.0 * k * k * phi;
    j.psi_xz = 2.0 * k * m * phi;
    j.psi_zz = 2.0 * m * m * phi;
    j.psi_xt = 2.0 * k * lam * phi_t;
    j.psi_zt = 2.0 * m * lam * phi_t;
    j.lap_psi_t = 2.0 * K * phi_t;
    j.lap_psi_x = 0.0;
    j.lap_psi_z = 0.0;
    j.v = V * lam;
    j.v_t = v_coef * bracket_t * lam;
    j.v_x = k * V;
    j.v_z = m * V;
    j.rho = R * lam;
    j.rho_t = r_coef * bracket_t * lam;
    j.rho_x = k * R;
    j.rho_z = m * R;
    return j;
  });
}

ReducedAmplitudes reduced_ode_rhs(const WaveVector& wave, const PhysicalParams& params,
                                  const ReducedAmplitudes& y) {
  return ReducedAmplitudes{
      (params.g * wave.k * y.R + params.f * wave.m * y.V) / (2.0 * wave.norm2()),
      -2.0 * params.f * wave.m * y.phi,
      -2.0 * wave.k / params.g * params.N * params.N * y.phi};
}

OdeTrajectory ode_reduction_oracle(const InvariantSolutionParams& p, const PhysicalParams& params,
                                   double t_end) {
  const double w = require_positive_omega(p.wave, params);
  if (!(t_end >= 0.0)) throw Error("t_end must be non-negative");
  const auto n_steps = static_cast<long>(std::ceil(t_end * w / 1e-3));
  OdeTrajectory out;
  out.dt = n_steps > 0 ? t_end / static_cast<double>(n_steps) : 0.0;
  out.t.reserve(n_steps + 1);
  out.y.reserve(n_steps + 1);

  auto axpy = [](const ReducedAmplitudes& a, const ReducedAmplitudes& k, double h) {
    return ReducedAmplitudes{a.phi + h * k.phi, a.V + h * k.V, a.R + h * k.R};
  };
  ReducedAmplitudes y = invariant_amplitudes(p, params, 0.0);
  out.t.push_back(0.0);
  out.y.push_back(y);
  const double h = out.dt;
  for (long n = 1; n <= n_steps; ++n) {
    const ReducedAmplitudes k1 = reduced_ode_rhs(p.wave, params, y);
    const ReducedAmplitudes k2 = reduced_ode_rhs(p.wave, params, axpy(y, k1, 0.5 * h));
    const ReducedAmplitudes k3 = reduced_ode_rhs(p.wave, params, axpy(y, k2, 0.5 * h));
    const ReducedAmplitudes k4 = reduced_ode_rhs(p.wave, params, axpy(y, k3, h));
    y.phi += h / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    y.V += h / 6.0 * (k1.V + 2.0 * k2.V + 2.0 * k3.V + k4.V);
    y.R += h / 6.0 * (k1.R + 2.0 * k2.R + 2.0 * k3.R + k4.R);
    out.t.push_back(static_cast<double>(n) * h);
    out.y.push_back(y);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Beams

double beam_constraint_residual(const BeamSpec& spec, const PhysicalParams& params, double lambda) {
  return params.g * spec.wave.k * spec.H(lambda)[1] + params.f * spec.wave.m * spec.F(lambda)[1];
}

void check_beam_constraint(const BeamSpec& spec, const PhysicalParams& params) {
  for (int i = 0; i <= 80; ++i) {
    const double lam = -20.0 + 0.5 * i;
    const double a = params.g * spec.wave.k * spec.H(lam)[1];
    const double b = params.f * spec.wave.m * spec.F(lam)[1];
    if (std::abs(a + b) > 1e-10 * std::max(1.0, std::abs(a) + std::abs(b))) {
      throw Error("beam mean profiles violate g*k*H'(lambda) + f*m*F'(lambda) = 0 at lambda=" +
                  std::to_string(lam));
    }
  }
}

AnalyticSolution beam_solution_unchecked(const BeamSpec& spec, const PhysicalParams& params) {
  params.validate();
  const double w = require_positive_omega(spec.wave, params);
  const double k = spec.wave.k, m = spec.wave.m, K = spec.wave.norm2();
  const double cv = params.f * m / w;
  const double cr = k * params.N * params.N / (params.g * w);
  return AnalyticSolution([=](double t, double x, double z) {
    const double lam = k * x + m * z;
    const double c = std::cos(w * t), s = std::sin(w * t);
    const Envelope::Jet A = spec.A(lam), B = spec.B(lam), F = spec.F(lam), H = spec.H(lam);

    // psi and its lambda / t derivatives
    const double p0 = A[0] * c + B[0] * s;
    const double p1 = A[1] * c + B[1] * s;
    const double p2 = A[2] * c + B[2] * s;
    const double p3 = A[3] * c + B[3] * s;
    const double p0t = w * (B[0] * c - A[0] * s);
    const double p1t = w * (B[1] * c - A[1] * s);
    const double p2t = w * (B[2] * c - A[2] * s);
    // S = B' cos - A' sin drives v and rho
    const double S = B[1] * c - A[1] * s;
    const double S_l = B[2] * c - A[2] * s;
    const double S_t = -w * (B[1] * s + A[1] * c);

    PointJet j;
    j.psi = p0;
    j.psi_t = p0t;
    j.psi_x = k * p1;
    j.psi_z = m * p1;
    j.psi_xx = k * k * p2;
    j.psi_xz = k * m * p2;
    j.psi_zz = m * m * p2;
    j.psi_xt = k * p1t;
    j.psi_zt = m * p1t;
    j.lap_psi_t = K * p2t;
    j.lap_psi_x = K * k * p3;
    j.lap_psi_z = K * m * p3;
    j.v = cv * S + F[0];
    j.v_t = cv * S_t;
    j.v_x = k * (cv * S_l + F[1]);
    j.v_z = m * (cv * S_l + F[1]);
    j.rho = cr * S + H[0];
    j.rho_t = cr * S_t;
    j.rho_x = k * (cr * S_l + H[1]);
    j.rho_z = m * (cr * S_l + H[1]);
    return j;
  });
}

AnalyticSolution beam_solution(const BeamSpec& spec, const PhysicalParams& params) {
  check_beam_constraint(spec, params);
  return beam_solution_unchecked(spec, params);
}

BeamSpec plane_wave_beam(const WaveVector& wave, double amplitude) {
  wave.validate();
  return BeamSpec{wave, Envelope::cosine(amplitude), Envelope::sine(amplitude), Envelope::zero(),
                  Envelope::zero()};
}

BeamSpec lorentzian_beam(double a, const WaveVector& wave, const PhysicalParams& params) {
  params.validate();
  wave.validate();
  if (!(a > 0.0)) throw Error("lorentzian amplitude a must be positive");
  return BeamSpec{wave, Envelope::lorentzian_even(a), Envelope::lorentzian_odd(a), Envelope::zero(),
                  Envelope::zero()};
}

BeamSpec gaussian_beam(double a, double width, const WaveVector& wave) {
  wave.validate();
  return BeamSpec{wave, Envelope::gaussian(a, width), Envelope::zero(), Envelope::zero(),
                  Envelope::zero()};
}

BeamSpec steady_beam(const Envelope& F, const WaveVector& wave, const PhysicalParams& params) {
  params.validate();
  wave.validate();
  if (wave.k == 0.0) throw Error("balanced mean profile requires k != 0");
  const double ratio = -params.f * wave.m / (params.g * wave.k);
  return BeamSpec{wave, Envelope::zero(), Envelope::zero(), F, F.scaled(ratio)};
}

double beam_energy_density(const BeamSpec& spec, double lambda) {
  const double a1 = spec.A(lambda)[1];
  const double b1 = spec.B(lambda)[1];
  return a1 * a1 + b1 * b1;
}

}  // namespace stratwave
