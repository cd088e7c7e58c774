#include "stratwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "stratwave/adjoint.hpp"
#include "stratwave/conservation.hpp"
#include "stratwave/error.hpp"
#include "stratwave/exact.hpp"
#include "stratwave/random.hpp"
#include "stratwave/symmetry.hpp"
#include "stratwave/variational.hpp"

namespace stratwave {

bool CheckResult::passed() const {
  if (!std::isfinite(measured)) return false;
  return lower_bound ? measured >= tol : measured <= tol;
}

std::string format_check(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %s %s %.6e %.1e", r.passed() ? "PASS" : "FAIL", r.suite.c_str(),
                r.check.c_str(), r.measured, r.tol);
  return buf;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"adjoint", "conservation", "variational", "symmetry", "exact"};
  return names;
}

namespace {

// Parameters shared by every suite: rotation and stratification both active,
// and g^2/N^2 far from 1 so the third equivalence factor is visible.
const PhysicalParams kParams{9.81, 0.7, 1.3};
constexpr int kTrials = 16;

Grid2D periodic_grid(int n) { return Grid2D(n, n, 2.0 * M_PI, 2.0 * M_PI); }

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : num; }

class Suite {
 public:
  explicit Suite(std::string name, std::vector<CheckResult>& out) : name_(std::move(name)), out_(out) {}
  void at_most(const std::string& check, double measured, double tol) {
    out_.push_back(CheckResult{name_, check, measured, tol, false});
  }
  void at_least(const std::string& check, double measured, double tol) {
    out_.push_back(CheckResult{name_, check, measured, tol, true});
  }

 private:
  std::string name_;
  std::vector<CheckResult>& out_;
};

double equivalence_mismatch(const FieldState& s, const Tendencies& rates) {
  const EquationResiduals orig = equation_residuals(s, rates, kParams);
  const Costate c = self_adjoint_substitution(s, kParams);
  const AdjointResiduals adj = adjoint_residual(s, c, substitute_rates(rates, kParams), kParams);
  const auto factor = equivalence_factors(kParams);
  const std::array<const ScalarField*, 3> a{&adj.phi_eq, &adj.mu_eq, &adj.r_eq};
  const std::array<const ScalarField*, 3> o{&orig.vorticity, &orig.v, &orig.rho};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double scale = std::max(adj.scale[i], factor[i] * orig.scale[i]);
    worst = std::max(worst, safe_ratio(max_abs_diff(*a[i], (*o[i]) * factor[i]), scale));
  }
  return worst;
}

void adjoint_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  Suite s("adjoint", out);
  const Grid2D grid = periodic_grid(64);
  double theta_sub = 0.0, theta_indep = std::numeric_limits<double>::infinity();
  double eq_solution = 0.0, eq_random = 0.0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const FieldState st = random_state(grid, seed, trial);
    const Costate sub = self_adjoint_substitution(st, kParams);
    theta_sub = std::max(theta_sub, safe_ratio(theta(st, sub).max_abs(), theta_scale(st, sub)));

    const FieldState other = random_state(grid, seed, 1000 + trial);
    theta_indep = std::min(theta_indep, theta(st, Costate{other.psi, other.v, other.rho}).max_abs());

    eq_solution = std::max(eq_solution, equivalence_mismatch(st, rhs(st, kParams)));
    eq_random = std::max(eq_random, equivalence_mismatch(st, random_tendencies(grid, seed, 2000 + trial)));
  }
  s.at_most("theta_under_substitution", theta_sub, 1e-11);
  s.at_least("theta_independent_costate_min", theta_indep, 1e-3);
  s.at_most("equivalence_model_tendencies", eq_solution, 1e-10);
  s.at_most("equivalence_arbitrary_tendencies", eq_random, 1e-10);
}

void conservation_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  Suite s("conservation", out);
  const Grid2D grid = periodic_grid(64);
  double div_v = 0.0, div_rho = 0.0, div_e = 0.0, v_vs_eq = 0.0, rho_vs_eq = 0.0, dilation = 0.0, gauge = 0.0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const FieldState st = random_state(grid, seed, trial);
    auto rel = [&](ConservedVectorId id) {
      const DivergenceCheck d = divergence_check(id, st, kParams);
      return safe_ratio(d.residual.max_abs(), d.scale);
    };
    div_v = std::max(div_v, rel(ConservedVectorId::v_translation));
    div_rho = std::max(div_rho, rel(ConservedVectorId::rho_translation));
    div_e = std::max(div_e, rel(ConservedVectorId::energy));

    // With arbitrary time derivatives the divergences reproduce the v and rho equations.
    const Tendencies rr = random_tendencies(grid, seed, 3000 + trial);
    const EquationResiduals eq = equation_residuals(st, rr, kParams);
    const DivergenceCheck dv = divergence_check(ConservedVectorId::v_translation, st, kParams, rr);
    const DivergenceCheck dr = divergence_check(ConservedVectorId::rho_translation, st, kParams, rr);
    v_vs_eq = std::max(v_vs_eq, safe_ratio(max_abs_diff(dv.residual, eq.v), std::max(dv.scale, eq.scale[1])));
    rho_vs_eq =
        std::max(rho_vs_eq, safe_ratio(max_abs_diff(dr.residual, eq.rho), std::max(dr.scale, eq.scale[2])));

    const ScalarField e = density(ConservedVectorId::energy, st, kParams);
    const ScalarField c7 = density_from_characteristics(characteristics(GeneratorId::X7, st, kParams), st, kParams);
    dilation = std::max(dilation, safe_ratio(max_abs_diff(normalize_dilation_density(c7, st, kParams), e), e.max_abs()));

    FieldState shifted_psi = st;
    shifted_psi.psi += 3.7;
    gauge = std::max(gauge, safe_ratio(max_abs_diff(density(ConservedVectorId::energy, shifted_psi, kParams), e),
                                       e.max_abs()));
  }
  s.at_most("divergence_v_translation", div_v, 1e-11);
  s.at_most("divergence_rho_translation", div_rho, 1e-11);
  s.at_most("divergence_energy", div_e, 1e-9);
  s.at_most("v_divergence_equals_v_equation", v_vs_eq, 1e-11);
  s.at_most("rho_divergence_equals_rho_equation", rho_vs_eq, 1e-11);
  s.at_most("dilation_density_normalizes_to_energy", dilation, 1e-10);
  s.at_most("energy_density_psi_gauge", gauge, 1e-12);

  // Beam energy at t = 0 equals (k^2 + m^2)(A'^2 + B'^2) for F = H = 0.
  const WaveVector wave{1.0, 2.0};
  const BeamSpec beam{wave, Envelope::cosine(1.0), Envelope::sine(0.4), Envelope::zero(), Envelope::zero()};
  const FieldState b0 = beam_solution(beam, kParams).sample(grid, 0.0);
  const ScalarField e_beam = density(ConservedVectorId::energy, b0, kParams);
  ScalarField e_expected(grid);
  for (int ix = 0; ix < grid.nx(); ++ix) {
    for (int iz = 0; iz < grid.nz(); ++iz) {
      e_expected(ix, iz) = wave.norm2() * beam_energy_density(beam, wave.phase(grid.x(ix), grid.z(iz)));
    }
  }
  s.at_most("beam_energy_pointwise", safe_ratio(max_abs_diff(e_beam, e_expected), e_expected.max_abs()), 1e-10);
  s.at_most("beam_energy_integral",
            safe_ratio(std::abs(integrate(e_beam) - integrate(e_expected)), std::abs(integrate(e_expected))), 1e-9);

  // Drift of the three integrals over one period of a simulated plane wave.
  const BeamSpec pw = plane_wave_beam(WaveVector{1.0, 1.0}, 1.0);
  const double period = 2.0 * M_PI / omega(pw.wave, kParams);
  SimulationOptions opt;
  opt.dt = period / 200.0;
  opt.n_steps = 200;
  opt.snapshot_every = 20;
  const Trajectory traj = simulate(beam_solution(pw, kParams).sample(grid, 0.0), kParams, opt);
  s.at_most("plane_wave_energy_drift",
            global_drift(ConservedVectorId::energy, traj.snapshots, kParams).max_relative_drift, 1e-8);
  s.at_most("plane_wave_v_drift",
            global_drift(ConservedVectorId::v_translation, traj.snapshots, kParams).max_relative_drift, 1e-9);
  s.at_most("plane_wave_rho_drift",
            global_drift(ConservedVectorId::rho_translation, traj.snapshots, kParams).max_relative_drift, 1e-9);
}

void variational_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  Suite s("variational", out);
  const Grid2D grid = periodic_grid(64);
  for (const VariationalIdentity& id : jacobian_identities()) {
    s.at_most(id.name, check_identity(id, grid, kTrials, seed).max_relative, 1e-7);
  }

  const DensityFunctional dx_v2{"D_x(v^2)", [](const FieldState& st) { return diff(st.v * st.v, Axis::x, 1); }};
  const DensityFunctional psi_j{"psi*J(psi,lap_psi)",
                                [](const FieldState& st) { return st.psi * jacobian(st.psi, laplacian(st.psi)); }};
  s.at_most("divergence_D_x(v^2)", is_divergence(dx_v2, grid, 8, seed).max_relative, 1e-7);
  s.at_most("divergence_psi*J(psi,lap_psi)", is_divergence(psi_j, grid, 8, seed).max_relative, 1e-7);
  s.at_least("non_divergence_energy", is_divergence(energy_functional(kParams), grid, 8, seed).max_relative, 1e-2);

  const std::vector<FieldState> states = on_solution_states(kParams, grid, seed);
  for (GeneratorId g : {GeneratorId::X3, GeneratorId::X4, GeneratorId::X5, GeneratorId::X6}) {
    s.at_most("trivial_" + to_string(g) + "_density",
              is_trivial_density(generator_density(g, kParams), states, 2, seed).max_relative, 1e-7);
  }
  s.at_least("nontrivial_v_density", is_trivial_density(v_functional(), states, 2, seed).max_relative, 1e-3);
  s.at_least("nontrivial_rho_density", is_trivial_density(rho_functional(), states, 2, seed).max_relative, 1e-3);
  s.at_least("nontrivial_energy_density",
             is_trivial_density(energy_functional(kParams), states, 2, seed).max_relative, 1e-3);

  // Linearity in the probe.
  const FieldState st = random_state(grid, seed, 0);
  CounterRng rng(seed, 0x11AE);
  const int k = test_band_limit(grid.nx());
  const ScalarField p1 = random_band_limited(grid, rng, 1.0, k, k);
  const ScalarField p2 = random_band_limited(grid, rng, 1.0, k, k);
  const DensityFunctional energy = energy_functional(kParams);
  double lin = 0.0;
  for (Slot slot : {Slot::v, Slot::rho, Slot::psi}) {
    const Variation a = directional_variation(energy, st, slot, p1);
    const Variation b = directional_variation(energy, st, slot, p2);
    const Variation ab = directional_variation(energy, st, slot, p1 + p2);
    lin = std::max(lin, safe_ratio(std::abs(ab.value - a.value - b.value), a.scale + b.scale));
  }
  s.at_most("linearity_in_probe", lin, 1e-7);

  const Variation mean = directional_variation(v_functional(), st, Slot::v, ScalarField(grid, 1.0));
  s.at_most("mean_mode_witness", std::abs(mean.value - grid.area()) / grid.area(), 1e-8);
}

void symmetry_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  Suite s("symmetry", out);
  const Grid2D grid = periodic_grid(64);
  const double w = kParams.density_weight();
  double d1 = 0, d2 = 0, d3 = 0, d5 = 0, d6 = 0, d7 = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const FieldState st = random_state(grid, seed, trial);
    auto c1 = [&](GeneratorId g) { return density_from_characteristics(characteristics(g, st, kParams), st, kParams); };
    auto rel = [](const ScalarField& a, const ScalarField& b) {
      return safe_ratio(max_abs_diff(a, b), std::max(a.max_abs(), b.max_abs()));
    };
    const ScalarField q = density(ConservedVectorId::energy, st, kParams);
    const ScalarField x = coordinate_x(grid);
    const ScalarField z = coordinate_z(grid);
    d1 = std::max(d1, rel(c1(GeneratorId::X1), -st.v));
    d2 = std::max(d2, rel(c1(GeneratorId::X2), st.rho * (-w)));
    d3 = std::max(d3, safe_ratio(c1(GeneratorId::X3).max_abs(), q.max_abs()));
    d5 = std::max(d5, rel(c1(GeneratorId::X5), diff(q * 0.5, Axis::x, 1)));
    d6 = std::max(d6, rel(c1(GeneratorId::X6), diff(q * 0.5, Axis::z, 1)));
    d7 = std::max(d7, rel(c1(GeneratorId::X7), -q + (x * diff(q, Axis::x, 1) + z * diff(q, Axis::z, 1)) * 0.5));
  }
  s.at_most("X1_density_is_minus_v", d1, 1e-11);
  s.at_most("X2_density_is_minus_weighted_rho", d2, 1e-11);
  s.at_most("X3_density_vanishes", d3, 1e-11);
  s.at_most("X5_density_is_x_divergence", d5, 1e-11);
  s.at_most("X6_density_is_z_divergence", d6, 1e-11);
  s.at_most("X7_density_expression", d7, 1e-11);

  // Dilation of analytic solutions.
  CounterRng rng(seed, 0x5C41E);
  const AnalyticSolution pw = beam_solution(plane_wave_beam(WaveVector{1.0, 2.0}, 0.8), kParams);
  const AnalyticSolution inv = invariant_solution(
      InvariantSolutionParams{WaveVector{1.5, -0.5}, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
      kParams);
  const AnalyticSolution pw0 = apply_dilation(pw, 0.0);
  const AnalyticSolution pw_ab = apply_dilation(apply_dilation(pw, 0.3), -0.1);
  const AnalyticSolution pw_sum = apply_dilation(pw, 0.2);
  const AnalyticSolution pw_d = apply_dilation(pw, 0.4);
  const AnalyticSolution inv_d = apply_dilation(inv, -0.3);
  double ident = 0.0, group = 0.0, resid = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(0.0, 10.0), x = rng.uniform(-5.0, 5.0), z = rng.uniform(-5.0, 5.0);
    const PointJet a = pw(t, x, z), b = pw0(t, x, z);
    ident = std::max({ident, std::abs(a.psi - b.psi), std::abs(a.v - b.v), std::abs(a.rho - b.rho)});
    const PointJet c = pw_ab(t, x, z), d = pw_sum(t, x, z);
    group = std::max({group, std::abs(c.psi - d.psi), std::abs(c.v - d.v), std::abs(c.rho - d.rho),
                      std::abs(c.lap_psi_x - d.lap_psi_x), std::abs(c.rho_t - d.rho_t)});
    resid = std::max({resid, pde_residual(pw_d(t, x, z), kParams).max_relative(),
                      pde_residual(inv_d(t, x, z), kParams).max_relative()});
  }
  s.at_most("dilation_identity", ident, 1e-15);
  s.at_most("dilation_group_law", group, 1e-12);
  s.at_most("dilated_solution_residual", resid, 1e-10);

  const ScalingReport rep = scaling_exponent_check(kParams, 2.0, grid, seed);
  double power = 0.0, mismatch = 0.0;
  for (int i = 0; i < 3; ++i) {
    power = std::max(power, std::abs(rep.measured_power[i] - rep.expected_power[i]));
    mismatch = std::max(mismatch, rep.pointwise_mismatch[i]);
  }
  s.at_most("scaling_power", power, 1e-10);
  s.at_most("scaling_pointwise", mismatch, 1e-10);

  const EquationResiduals ref = equation_residuals(random_state(grid, seed, 0),
                                                   random_tendencies(grid, seed, 0x7A7E5), kParams);
  const double ref_scale = std::max({ref.scale[0], ref.scale[1], ref.scale[2]});
  s.at_most("translation_equivariance",
            safe_ratio(translation_equivariance_error(kParams, grid, seed, 5, 11), ref_scale), 1e-12);
}

void exact_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
  Suite s("exact", out);
  const PhysicalParams p2{9.81, 1.0, 2.0};
  s.at_most("omega_k3_m4", std::abs(omega(WaveVector{3.0, 4.0}, p2) - std::sqrt(52.0 / 25.0)), 1e-15);
  s.at_most("omega_m0_is_N", std::abs(omega(WaveVector{1.0, 0.0}, kParams) - kParams.N), 1e-15);
  s.at_most("omega_k0_is_f", std::abs(omega(WaveVector{0.0, 1.0}, kParams) - kParams.f), 1e-15);

  CounterRng rng(seed, 0xE4AC7);
  const InvariantSolutionParams ip{WaveVector{rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0)}, rng.uniform(-1, 1),
                                   rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const WaveVector wave{1.0, 2.0};
  const AnalyticSolution inv = invariant_solution(ip, kParams);
  const AnalyticSolution lor = beam_solution(lorentzian_beam(1.0, wave, kParams), kParams);
  BeamSpec generic = steady_beam(Envelope::polynomial(0.1, 0.3, -0.2), wave, kParams);
  generic.A = Envelope::gaussian(0.8, 2.0);
  generic.B = Envelope::lorentzian_odd(0.5);
  const AnalyticSolution gen = beam_solution(generic, kParams);
  BeamSpec broken = generic;
  broken.H = generic.H.scaled(1.01);
  const AnalyticSolution bad = beam_solution_unchecked(broken, kParams);

  double r_inv = 0, r_lor = 0, r_gen = 0, r_bad = 0;
  for (int i = 0; i < 100; ++i) {
    const double t = rng.uniform(0.0, 10.0), x = rng.uniform(-5.0, 5.0), z = rng.uniform(-5.0, 5.0);
    r_inv = std::max(r_inv, pde_residual(inv(t, x, z), kParams).max_relative());
    r_lor = std::max(r_lor, pde_residual(lor(t, x, z), kParams).max_relative());
    r_gen = std::max(r_gen, pde_residual(gen(t, x, z), kParams).max_relative());
    r_bad = std::max(r_bad, pde_residual(bad(t, x, z), kParams).max_relative());
  }
  s.at_most("invariant_solution_residual", r_inv, 1e-11);
  s.at_most("lorentzian_beam_residual", r_lor, 1e-11);
  s.at_most("generic_beam_residual", r_gen, 1e-11);
  s.at_least("constraint_violation_residual", r_bad, 1e-4);

  // Reduced ODE against the closed form over 10 periods.
  const double period = 2.0 * M_PI / omega(ip.wave, kParams);
  const OdeTrajectory ode = ode_reduction_oracle(ip, kParams, 10.0 * period);
  double ode_err = 0.0, resub = 0.0, amp = 0.0;
  const double w = omega(ip.wave, kParams);
  for (std::size_t n = 0; n < ode.t.size(); ++n) {
    const ReducedAmplitudes e = invariant_amplitudes(ip, kParams, ode.t[n]);
    const ReducedAmplitudes& y = ode.y[n];
    amp = std::max({amp, std::abs(e.phi), std::abs(e.V), std::abs(e.R)});
    ode_err = std::max({ode_err, std::abs(y.phi - e.phi), std::abs(y.V - e.V), std::abs(y.R - e.R)});
    const double c = std::cos(w * ode.t[n]), sn = std::sin(w * ode.t[n]);
    const double phi_t = w * (ip.C2 * c - ip.C1 * sn);
    const double lhs = kParams.g * ip.wave.k * y.R + kParams.f * ip.wave.m * y.V;
    const double rhs_term = 2.0 * ip.wave.norm2() * phi_t;
    resub = std::max(resub, std::abs(lhs - rhs_term) / std::max({std::abs(lhs), std::abs(rhs_term), 1.0}));
  }
  s.at_most("ode_reduction_vs_closed_form", ode_err / std::max(amp, 1.0), 1e-8);
  s.at_most("ode_resubstitution", resub, 1e-9);

  // Energy is constant along beam lines k x + m z = const.
  const BeamSpec lspec = lorentzian_beam(1.0, wave, kParams);
  double line = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x0 = rng.uniform(-5.0, 5.0), z0 = rng.uniform(-5.0, 5.0), sh = rng.uniform(-3.0, 3.0);
    const double x1 = x0 + wave.m * sh, z1 = z0 - wave.k * sh;
    const double e0 = beam_energy_density(lspec, wave.phase(x0, z0));
    const double e1 = beam_energy_density(lspec, wave.phase(x1, z1));
    line = std::max(line, std::abs(e0 - e1) / std::max(e0, e1));
  }
  s.at_most("beam_line_energy", line, 1e-12);

  // Grid checks: model tendencies against analytic time derivatives, and
  // one simulated period of the plane wave.
  const Grid2D grid = periodic_grid(64);
  const AnalyticSolution pw = beam_solution(plane_wave_beam(WaveVector{1.0, 1.0}, 1.0), kParams);
  const double t0 = rng.uniform(0.0, 5.0);
  const Tendencies num = rhs(pw.sample(grid, t0), kParams);
  const Tendencies ana = pw.sample_rates(grid, t0);
  const double tend = std::max({safe_ratio(max_abs_diff(num.dv_dt, ana.dv_dt), ana.dv_dt.max_abs()),
                                safe_ratio(max_abs_diff(num.drho_dt, ana.drho_dt), ana.drho_dt.max_abs()),
                                safe_ratio(max_abs_diff(num.dzeta_dt, ana.dzeta_dt), ana.dzeta_dt.max_abs())});
  s.at_most("plane_wave_tendencies", tend, 1e-9);

  const double pw_period = 2.0 * M_PI / omega(WaveVector{1.0, 1.0}, kParams);
  FieldState st = pw.sample(grid, 0.0);
  for (int n = 0; n < 200; ++n) st = step_rk4(st, kParams, pw_period / 200.0);
  const FieldState ex = pw.sample(grid, st.t);
  s.at_most("plane_wave_one_period_linf",
            std::max({max_abs_diff(st.v, ex.v), max_abs_diff(st.rho, ex.rho), max_abs_diff(st.psi, ex.psi)}), 1e-6);
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  using Runner = std::function<void(std::uint64_t, std::vector<CheckResult>&)>;
  const std::vector<std::pair<std::string, Runner>> runners{{"adjoint", adjoint_suite},
                                                           {"conservation", conservation_suite},
                                                           {"variational", variational_suite},
                                                           {"symmetry", symmetry_suite},
                                                           {"exact", exact_suite}};
  std::vector<CheckResult> out;
  bool found = false;
  for (const auto& [name, run] : runners) {
    if (suite == "all" || suite == name) {
      run(seed, out);
      found = true;
    }
  }
  if (!found) throw Error("unknown verification suite: " + suite);
  return out;
}

}  // namespace stratwave
