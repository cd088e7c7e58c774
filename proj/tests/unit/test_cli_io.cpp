#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stratwave/cli.hpp"
#include "stratwave/config.hpp"
#include "stratwave/runner.hpp"
#include "stratwave/snapshot.hpp"

using namespace stratwave;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("stratwave_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string key_of_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsAndRoundTrip) {
  const RunConfig def = parse_config("");
  EXPECT_EQ(def.nx, 64);
  EXPECT_EQ(def.initial, "random");
  RunConfig cfg = parse_config("g = 3.5\nf=0.25 # comment\nN=0.75\nnx=32\nnz=16\ndt=0.001\ninitial=plane_wave\nk=2\n");
  EXPECT_EQ(cfg.params.g, 3.5);
  EXPECT_EQ(cfg.nz, 16);
  const RunConfig again = parse_config(serialize_config(cfg));
  EXPECT_EQ(serialize_config(again), serialize_config(cfg));
  EXPECT_EQ(again.params.f, 0.25);
  EXPECT_EQ(again.k, 2.0);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(key_of_error("bogus=1"), "bogus");
  EXPECT_EQ(key_of_error("nx=abc"), "nx");
  EXPECT_EQ(key_of_error("nx=33"), "nx");
  EXPECT_EQ(key_of_error("N=0"), "N");
  EXPECT_EQ(key_of_error("g=-1"), "g");
  EXPECT_EQ(key_of_error("seed=1\nseed=2"), "seed");
  EXPECT_EQ(key_of_error("initial=vortex"), "initial");
  EXPECT_EQ(key_of_error("initial=snapshot"), "snapshot_path");
  EXPECT_EQ(key_of_error("n_steps=-3"), "n_steps");
  EXPECT_EQ(key_of_error("initial=plane_wave\nk=0.5"), "k");
}

TEST(Config, EnvironmentSeedOverride) {
  RunConfig cfg = parse_config("seed=5");
  ::setenv("STRATWAVE_SEED", "77", 1);
  apply_env_overrides(cfg);
  ::unsetenv("STRATWAVE_SEED");
  EXPECT_EQ(cfg.seed, 77u);
  apply_env_overrides(cfg);
  EXPECT_EQ(cfg.seed, 77u);
}

TEST(Snapshot, RoundTripIsBitExact) {
  const FieldState s = random_state(Grid2D(16, 8, 3.0, 2.0), 4, 0);
  FieldState timed = s;
  timed.t = 0.1 + 0.2;
  const std::string bytes = encode_snapshot(timed);
  EXPECT_EQ(bytes.rfind("STRATWAVE1 16 8 ", 0), 0u);
  const FieldState back = decode_snapshot(bytes);
  EXPECT_EQ(back.t, timed.t);
  EXPECT_EQ(back.grid(), timed.grid());
  EXPECT_EQ(max_abs_diff(back.v, s.v), 0.0);
  EXPECT_EQ(max_abs_diff(back.rho, s.rho), 0.0);
  EXPECT_EQ(max_abs_diff(back.psi, s.psi), 0.0);
  EXPECT_EQ(bytes.size() - bytes.find('\n') - 1, 3u * 16u * 8u * 8u);
}

TEST(Snapshot, RejectsCorruptData) {
  const std::string bytes = encode_snapshot(zero_state(Grid2D(8, 8, 1.0, 1.0)));
  EXPECT_THROW(decode_snapshot(bytes.substr(0, bytes.size() - 1)), Error);
  EXPECT_THROW(decode_snapshot("NOTSNAP 8 8 1 1 0\n"), Error);
  EXPECT_THROW(read_snapshot("/nonexistent/dir/snap.bin"), Error);
}

TEST(Runner, SimulationWritesSnapshotsAndInvariants) {
  TempDir dir;
  RunConfig cfg = parse_config("nx=16\nnz=16\nn_steps=5\nsnapshot_every=2\ndt=0.01\n");
  cfg.output_dir = dir / "run";
  const RunSummary s = run_simulation(cfg);
  EXPECT_EQ(s.snapshots_written, 4);  // steps 0, 2, 4, 5
  EXPECT_TRUE(fs::exists(dir / "run/snap_000003.bin"));
  const std::string inv = slurp(dir / "run/invariants.csv");
  EXPECT_EQ(inv.substr(0, inv.find('\n')), "t,v_integral,rho_integral,energy_integral");
  EXPECT_EQ(parse_config(slurp(dir / "run/config.cfg")).n_steps, 5);
  EXPECT_NEAR(read_snapshot(dir / "run/snap_000003.bin").t, 0.05, 1e-15);
}

TEST(Runner, RerunIsByteIdentical) {
  TempDir dir;
  RunConfig cfg = parse_config("nx=16\nnz=16\nn_steps=4\nsnapshot_every=2\n");
  cfg.output_dir = dir / "a";
  run_simulation(cfg);
  cfg.output_dir = dir / "b";
  run_simulation(cfg);
  for (const char* name : {"snap_000000.bin", "snap_000002.bin", "invariants.csv"}) {
    EXPECT_EQ(slurp(dir / (std::string("a/") + name)), slurp(dir / (std::string("b/") + name))) << name;
  }
}

TEST(Runner, SnapshotInitialCondition) {
  TempDir dir;
  const FieldState s = random_state(Grid2D(16, 16, 2.0 * M_PI, 2.0 * M_PI), 2, 0);
  write_snapshot(dir / "init.bin", s);
  RunConfig cfg = parse_config("nx=16\nnz=16\ninitial=snapshot\nsnapshot_path=" + (dir / "init.bin"));
  EXPECT_EQ(max_abs_diff(initial_state(cfg).v, s.v), 0.0);
  cfg.nx = 32;
  EXPECT_THROW(initial_state(cfg), Error);
}

TEST(Runner, DiagnoseSingleSnapshot) {
  TempDir dir;
  write_snapshot(dir / "snap_000000.bin", random_state(Grid2D(16, 16, 2.0 * M_PI, 2.0 * M_PI), 1, 0));
  EXPECT_EQ(diagnose_directory(dir.path().string(), PhysicalParams{}, dir / "out"), 1u);
  const std::string csv = slurp(dir / "out/diag_energy.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,c1_integral,max_divergence_residual");
  EXPECT_THROW(diagnose_directory(dir / "missing", PhysicalParams{}, dir / "out"), Error);
}

TEST(Runner, BeamEnergyTables) {
  TempDir dir;
  const PhysicalParams p{};
  write_beam_energy(make_beam("lorentzian", FamilyParams{}, p), -10, 10, 201, Grid2D(8, 8, 2.0 * M_PI, 2.0 * M_PI),
                    dir.path().string());
  const std::string lam = slurp(dir / "beam_energy_lambda.csv");
  EXPECT_EQ(std::count(lam.begin(), lam.end(), '\n'), 202);
  EXPECT_EQ(lam.substr(0, lam.find('\n')), "lambda,E");
  EXPECT_THROW(make_beam("sawtooth", FamilyParams{}, p), Error);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  TempDir dir;
  write_text(dir / "bad.cfg", "nx=banana\n");
  const CliResult bad = cli({"simulate", dir / "bad.cfg"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("nx"), std::string::npos);
  EXPECT_EQ(cli({"simulate", dir / "missing.cfg"}).code, 1);
  EXPECT_EQ(cli({"verify", "nonsense"}).code, 1);
}

TEST(Cli, ExactSampleWritesHeader) {
  TempDir dir;
  const CliResult r =
      cli({"exact-sample", "lorentzian", "--t", "0.5", "--nx", "16", "--nz", "16", "--out", dir / "s.bin"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string bytes = slurp(dir / "s.bin");
  EXPECT_EQ(bytes.rfind("STRATWAVE1 16 16 ", 0), 0u);
  EXPECT_DOUBLE_EQ(decode_snapshot(bytes).t, 0.5);
}

TEST(Cli, VerifyReportIsReproducible) {
  TempDir dir;
  const CliResult a = cli({"verify", "adjoint", "--seed", "3", "--report", dir / "r.txt"});
  const CliResult b = cli({"verify", "adjoint", "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(dir / "r.txt"), a.out);
  EXPECT_EQ(a.out.rfind("PASS adjoint ", 0), 0u);
}

TEST(Cli, SimulateThenDiagnose) {
  TempDir dir;
  write_text(dir / "run.cfg", "nx=16\nnz=16\nn_steps=20\nsnapshot_every=20\nf=0.5\noutput_dir=" + (dir / "out") + "\n");
  ASSERT_EQ(cli({"simulate", dir / "run.cfg"}).code, 0);
  const CliResult d = cli({"diagnose", dir / "out"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(fs::exists(dir / "out/diag_v.csv"));
  // Simulated states fill the dealiased band; the residual must still be at round-off.
  std::istringstream csv(slurp(dir / "out/diag_energy.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    EXPECT_LE(std::stod(line.substr(line.rfind(',') + 1)), 1e-10) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 2);
}
