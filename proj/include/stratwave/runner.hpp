#pragma once

// File-producing workflows behind the command line: simulation runs,
// trajectory diagnostics, analytic samples and beam-energy tables.
// Column layouts are listed in OUTPUTS.md.

#include <string>
#include <vector>

#include "stratwave/config.hpp"
#include "stratwave/exact.hpp"

namespace stratwave {

FieldState initial_state(const RunConfig& config);

struct RunSummary {
  int snapshots_written = 0;
  double final_t = 0.0;
  double dt = 0.0;
};

/// Writes config.cfg, snap_NNNNNN.bin (numbered by emission order) and
/// invariants.csv into config.output_dir. Snapshots emitted before an error
/// stay on disk.
RunSummary run_simulation(const RunConfig& config);

/// Reads snap_*.bin from `dir` in name order and writes diag_<vector>.csv
/// (t, c1_integral, max_divergence_residual) into `out_dir`. The residual is
/// evaluated on the grid doubled by zero padding. Returns the number of rows
/// per file.
std::size_t diagnose_directory(const std::string& dir, const PhysicalParams& params, const std::string& out_dir);

/// Parameters of the named analytic families.
struct FamilyParams {
  double a = 1.0;
  double width = 1.0;
  double amplitude = 1.0;
  double k = 1.0;
  double m = 1.0;
  double C1 = 1.0;
  double C2 = 0.0;
  double C3 = 0.0;
};

/// plane_wave | lorentzian | gaussian
BeamSpec make_beam(const std::string& family, const FamilyParams& fp, const PhysicalParams& params);
/// The beam families plus invariant.
AnalyticSolution make_family(const std::string& family, const FamilyParams& fp, const PhysicalParams& params);

/// beam_energy_lambda.csv (lambda,E) on n_lambda uniform points and
/// beam_energy_grid.csv (x,z,E) on the grid shifted to [-L/2, L/2), with
/// E = A'^2 + B'^2 at lambda = kx + mz.
void write_beam_energy(const BeamSpec& spec, double lambda_min, double lambda_max, int n_lambda,
                       const Grid2D& grid, const std::string& out_dir);

}  // namespace stratwave
