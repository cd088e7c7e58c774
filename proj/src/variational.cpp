#include "stratwave/variational.hpp"

#include <algorithm>
#include <cmath>

#include "stratwave/error.hpp"
#include "stratwave/exact.hpp"
#include "stratwave/random.hpp"

namespace stratwave {

std::string to_string(Slot slot) {
  switch (slot) {
    case Slot::v: return "v";
    case Slot::rho: return "rho";
    case Slot::psi: return "psi";
  }
  return "unknown";
}

namespace {

const ScalarField& slot_field(const FieldState& s, Slot slot) {
  switch (slot) {
    case Slot::v: return s.v;
    case Slot::rho: return s.rho;
    case Slot::psi: return s.psi;
  }
  throw Error("unknown slot");
}

double integral_at(const DensityFunctional& F, const FieldState& base, Slot slot,
                   const ScalarField& probe, double eps) {
  FieldState s = base;
  switch (slot) {
    case Slot::v: s.v += probe * eps; break;
    case Slot::rho: s.rho += probe * eps; break;
    case Slot::psi: s.psi += probe * eps; break;
  }
  const ScalarField f = F.eval(s);
  if (!f.all_finite()) throw Error("non-finite functional value in " + F.name);
  return integrate(f);
}

constexpr std::uint64_t kProbeStream = 0x9B0BE;

ScalarField random_probe(const Grid2D& grid, CounterRng& rng) {
  const int k = test_band_limit(std::min(grid.nx(), grid.nz()));
  return random_band_limited(grid, rng, 1.0, k, k);
}

const Slot kSlots[] = {Slot::v, Slot::rho, Slot::psi};

}  // namespace

Variation directional_variation(const DensityFunctional& F, const FieldState& fields, Slot slot,
                                const ScalarField& probe) {
  fields.check_shared_grid();
  require_same_grid(fields.v, probe);
  const double ps = probe.max_abs();
  const ScalarField f0 = F.eval(fields);
  if (!f0.all_finite()) throw Error("non-finite functional value in " + F.name);
  if (ps == 0.0) return Variation{};

  double fs = slot_field(fields, slot).max_abs();
  if (fs == 0.0) fs = 1.0;
  const double h = 1e-6 * fs / ps;
  auto central = [&](double e) {
    return (integral_at(F, fields, slot, probe, e) - integral_at(F, fields, slot, probe, -e)) / (2.0 * e);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);

  // F may vanish identically at the base point (a plane wave has uniform
  // energy), so the magnitude is also sampled one field-sized step along the probe.
  FieldState far = fields;
  const ScalarField step = probe * (fs / ps);
  switch (slot) {
    case Slot::v: far.v += step; break;
    case Slot::rho: far.rho += step; break;
    case Slot::psi: far.psi += step; break;
  }
  auto abs_integral = [&](const ScalarField& f) {
    double sum = 0.0;
    for (double x : f.values()) sum += std::abs(x);
    return sum * fields.grid().dx() * fields.grid().dz();
  };
  const double magnitude = std::max(abs_integral(f0), abs_integral(F.eval(far)));
  return Variation{(4.0 * fine - coarse) / 3.0, magnitude * ps / fs};
}

DivergenceVerdict is_divergence(const DensityFunctional& F, const Grid2D& grid, int n_trials,
                                std::uint64_t seed, double tol) {
  if (n_trials < 8) throw Error("is_divergence needs n_trials >= 8");
  DivergenceVerdict out;
  for (int trial = 0; trial < n_trials; ++trial) {
    const FieldState s = random_state(grid, seed, static_cast<std::uint64_t>(trial));
    CounterRng rng(seed, kProbeStream + static_cast<std::uint64_t>(trial));
    for (Slot slot : kSlots) {
      const Variation var = directional_variation(F, s, slot, random_probe(grid, rng));
      out.max_relative = std::max(out.max_relative, var.relative());
      ++out.evaluations;
    }
  }
  out.divergence = out.max_relative <= tol;
  return out;
}

DivergenceVerdict is_trivial_density(const DensityFunctional& C1, const std::vector<FieldState>& states,
                                     int n_probes, std::uint64_t seed, double tol) {
  if (states.empty()) throw Error("triviality test needs at least one state");
  if (n_probes < 1) throw Error("n_probes must be >= 1");
  DivergenceVerdict out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    CounterRng rng(seed, kProbeStream + 0x1000 + i);
    for (int p = 0; p < n_probes; ++p) {
      for (Slot slot : kSlots) {
        const Variation var = directional_variation(C1, states[i], slot, random_probe(states[i].grid(), rng));
        out.max_relative = std::max(out.max_relative, var.relative());
        ++out.evaluations;
      }
    }
  }
  out.divergence = out.max_relative <= tol;
  return out;
}

std::vector<FieldState> on_solution_states(const PhysicalParams& params, const Grid2D& grid,
                                           std::uint64_t seed, int n_simulated) {
  const double two_pi = 2.0 * M_PI;
  if (std::abs(grid.Lx() - two_pi) > 1e-12 || std::abs(grid.Lz() - two_pi) > 1e-12) {
    throw Error("solution states need a 2*pi periodic grid");
  }
  if (grid.nx() % 4 != 0 || grid.nz() % 4 != 0) throw Error("solution states need dimensions divisible by 4");

  CounterRng rng(seed, 0x501);
  std::vector<FieldState> out;
  for (const WaveVector w : {WaveVector{1.0, 1.0}, WaveVector{2.0, -1.0}}) {
    const AnalyticSolution sol = beam_solution(plane_wave_beam(w, 0.5), params);
    out.push_back(sol.sample(grid, rng.uniform(0.0, 10.0)));
  }

  const Grid2D half(grid.nx() / 2, grid.nz() / 2, grid.Lx(), grid.Lz());
  const int k = dealias_cutoff(std::min(half.nx(), half.nz()));
  for (int i = 0; i < n_simulated; ++i) {
    FieldState s = random_state(half, seed, 0x600 + static_cast<std::uint64_t>(i), 0.5, k);
    SimulationOptions opt;
    opt.n_steps = 10;
    opt.snapshot_every = opt.n_steps;
    opt.keep_snapshots = true;
    const Trajectory traj = simulate(s, params, opt);
    const FieldState& last = traj.snapshots.back();
    out.push_back(FieldState{last.t, Spectrum(last.v).resampled(grid), Spectrum(last.rho).resampled(grid),
                             Spectrum(last.psi).resampled(grid)});
  }
  return out;
}

std::vector<VariationalIdentity> jacobian_identities() {
  const DensityFunctional j_psi_v{"J(psi,v)", [](const FieldState& s) { return jacobian(s.psi, s.v); }};
  const DensityFunctional v_j{"v*J(psi,v)", [](const FieldState& s) { return s.v * jacobian(s.psi, s.v); }};
  const DensityFunctional rho_j{"rho*J(psi,rho)",
                                [](const FieldState& s) { return s.rho * jacobian(s.psi, s.rho); }};
  const DensityFunctional j_lap{"J(psi,lap_psi)",
                                [](const FieldState& s) { return jacobian(s.psi, laplacian(s.psi)); }};
  const DensityFunctional psi_j_lap{
      "psi*J(psi,lap_psi)", [](const FieldState& s) { return s.psi * jacobian(s.psi, laplacian(s.psi)); }};
  return {
      {"dJ(psi,v)/dv", j_psi_v, Slot::v},
      {"dJ(psi,v)/dpsi", j_psi_v, Slot::psi},
      {"d[vJ(psi,v)]/dv", v_j, Slot::v},
      {"d[vJ(psi,v)]/dpsi", v_j, Slot::psi},
      {"d[rhoJ(psi,rho)]/drho", rho_j, Slot::rho},
      {"d[rhoJ(psi,rho)]/dpsi", rho_j, Slot::psi},
      {"dJ(psi,lap_psi)/dpsi", j_lap, Slot::psi},
      {"d[psiJ(psi,lap_psi)]/dpsi", psi_j_lap, Slot::psi},
  };
}

IdentityResult check_identity(const VariationalIdentity& id, const Grid2D& grid, int n_trials,
                              std::uint64_t seed) {
  IdentityResult out{id.name, 0.0};
  for (int trial = 0; trial < n_trials; ++trial) {
    const FieldState s = random_state(grid, seed, static_cast<std::uint64_t>(trial));
    CounterRng rng(seed, kProbeStream + 0x2000 + static_cast<std::uint64_t>(trial));
    const Variation var = directional_variation(id.functional, s, id.slot, random_probe(grid, rng));
    out.max_relative = std::max(out.max_relative, var.relative());
  }
  return out;
}

DensityFunctional generator_density(GeneratorId id, const PhysicalParams& params) {
  return DensityFunctional{to_string(id) + " density", [id, params](const FieldState& s) {
                             return density_from_characteristics(characteristics(id, s, params), s, params);
                           }};
}

DensityFunctional energy_functional(const PhysicalParams& params) {
  return DensityFunctional{"energy", [params](const FieldState& s) {
                             return density(ConservedVectorId::energy, s, params);
                           }};
}

DensityFunctional v_functional() {
  return DensityFunctional{"v", [](const FieldState& s) { return s.v; }};
}

DensityFunctional rho_functional() {
  return DensityFunctional{"rho", [](const FieldState& s) { return s.rho; }};
}

}  // namespace stratwave
