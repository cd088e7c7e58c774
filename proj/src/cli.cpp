#include "stratwave/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "stratwave/config.hpp"
#include "stratwave/error.hpp"
#include "stratwave/runner.hpp"
#include "stratwave/snapshot.hpp"
#include "stratwave/verify.hpp"

namespace stratwave {

namespace {

struct GridFlags {
  int nx = 64;
  int nz = 64;
  double Lx = 2.0 * M_PI;
  double Lz = 2.0 * M_PI;
};

void add_param_flags(CLI::App* app, PhysicalParams& p) {
  app->add_option("--g", p.g, "gravitational acceleration");
  app->add_option("--f", p.f, "Coriolis parameter");
  app->add_option("--N", p.N, "buoyancy frequency");
}

void add_grid_flags(CLI::App* app, GridFlags& g) {
  app->add_option("--nx", g.nx);
  app->add_option("--nz", g.nz);
  app->add_option("--Lx", g.Lx);
  app->add_option("--Lz", g.Lz);
}

void add_family_flags(CLI::App* app, FamilyParams& fp) {
  app->add_option("--a", fp.a, "Lorentzian / Gaussian amplitude");
  app->add_option("--width", fp.width, "Gaussian width");
  app->add_option("--amplitude", fp.amplitude, "plane-wave amplitude");
  app->add_option("--k", fp.k);
  app->add_option("--m", fp.m);
  app->add_option("--C1", fp.C1);
  app->add_option("--C2", fp.C2);
  app->add_option("--C3", fp.C3);
}

std::uint64_t env_seed_or(std::uint64_t fallback) {
  RunConfig c;
  c.seed = fallback;
  apply_env_overrides(c);
  return c.seed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotating stratified internal-wave solver and identity checks", "stratwave"};
  app.require_subcommand(1);

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "run a simulation described by a config file");
  sim->add_option("config", config_path, "key=value config file")->required();

  std::string family;
  double t = 0.0;
  std::string sample_out = "sample.bin";
  PhysicalParams sample_params;
  GridFlags sample_grid;
  FamilyParams sample_fp;
  auto* sample = app.add_subcommand("exact-sample", "write a snapshot of an analytic solution");
  sample->add_option("family", family, "plane_wave | lorentzian | gaussian | invariant")->required();
  sample->add_option("--t", t, "time");
  sample->add_option("--out", sample_out, "output snapshot path");
  add_param_flags(sample, sample_params);
  add_grid_flags(sample, sample_grid);
  add_family_flags(sample, sample_fp);

  std::string diag_dir;
  std::string diag_out;
  PhysicalParams diag_params;
  auto* diag = app.add_subcommand("diagnose", "conserved-vector diagnostics for a trajectory directory");
  diag->add_option("dir", diag_dir, "directory with snap_*.bin")->required();
  diag->add_option("--out-dir", diag_out, "where to write diag_*.csv (default: the trajectory directory)");
  add_param_flags(diag, diag_params);

  std::string suite;
  std::optional<std::uint64_t> seed;
  std::string report_path;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "adjoint | conservation | variational | symmetry | exact | all")->required();
  ver->add_option("--seed", seed, "64-bit seed (default: STRATWAVE_SEED or 1)");
  ver->add_option("--report", report_path, "also write the report to this file");

  std::string beam_family;
  PhysicalParams beam_params;
  GridFlags beam_grid;
  FamilyParams beam_fp;
  double lambda_min = -10.0, lambda_max = 10.0;
  int n_lambda = 201;
  std::string beam_out = ".";
  auto* beam = app.add_subcommand("beam-energy", "tabulate beam energy density A'^2 + B'^2");
  beam->add_option("family", beam_family, "plane_wave | lorentzian | gaussian")->required();
  beam->add_option("--lambda-min", lambda_min);
  beam->add_option("--lambda-max", lambda_max);
  beam->add_option("--n-lambda", n_lambda);
  beam->add_option("--out-dir", beam_out);
  add_param_flags(beam, beam_params);
  add_grid_flags(beam, beam_grid);
  add_family_flags(beam, beam_fp);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (sim->parsed()) {
      RunConfig cfg = load_config(config_path);
      apply_env_overrides(cfg);
      const RunSummary s = run_simulation(cfg);
      out << "wrote " << s.snapshots_written << " snapshots to " << cfg.output_dir << " (t=" << s.final_t
          << ", dt=" << s.dt << ")\n";
      return 0;
    }
    if (sample->parsed()) {
      sample_params.validate();
      const Grid2D grid(sample_grid.nx, sample_grid.nz, sample_grid.Lx, sample_grid.Lz);
      write_snapshot(sample_out, make_family(family, sample_fp, sample_params).sample(grid, t));
      out << "wrote " << sample_out << "\n";
      return 0;
    }
    if (diag->parsed()) {
      PhysicalParams params = diag_params;
      const std::filesystem::path cfg_path = std::filesystem::path(diag_dir) / "config.cfg";
      if (std::filesystem::exists(cfg_path)) {
        PhysicalParams from_file = load_config(cfg_path.string()).params;
        // Explicit flags win over the stored configuration.
        if (diag->count("--g") == 0) params.g = from_file.g;
        if (diag->count("--f") == 0) params.f = from_file.f;
        if (diag->count("--N") == 0) params.N = from_file.N;
      }
      const std::string target = diag_out.empty() ? diag_dir : diag_out;
      const std::size_t rows = diagnose_directory(diag_dir, params, target);
      out << "wrote diag_v.csv, diag_rho.csv, diag_energy.csv (" << rows << " rows) to " << target << "\n";
      return 0;
    }
    if (ver->parsed()) {
      const std::uint64_t s = seed ? *seed : env_seed_or(1);
      const std::vector<CheckResult> results = run_suite(suite, s);
      std::string report;
      bool ok = true;
      for (const CheckResult& r : results) {
        report += format_check(r) + "\n";
        ok = ok && r.passed();
      }
      out << report;
      if (!report_path.empty()) {
        std::ofstream f(report_path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + report_path);
        f << report;
      }
      return ok ? 0 : 1;
    }
    if (beam->parsed()) {
      beam_params.validate();
      const Grid2D grid(beam_grid.nx, beam_grid.nz, beam_grid.Lx, beam_grid.Lz);
      write_beam_energy(make_beam(beam_family, beam_fp, beam_params), lambda_min, lambda_max, n_lambda, grid,
                        beam_out);
      out << "wrote beam_energy_lambda.csv, beam_energy_grid.csv to " << beam_out << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace stratwave
