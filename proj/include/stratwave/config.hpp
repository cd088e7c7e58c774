#pragma once

// Run configuration: flat key=value text, '#' starts a comment.
//
//   g, f, N                      physical constants
//   nx, nz, Lx, Lz               grid
//   dt                           time step; 0 selects the automatic step
//   n_steps, snapshot_every
//   initial                      random | plane_wave | snapshot
//   amplitude, k, m              random / plane_wave parameters
//   snapshot_path                initial condition for initial=snapshot
//   output_dir, seed, hyperviscosity

#include <cstdint>
#include <string>
#include <string_view>

#include "stratwave/error.hpp"
#include "stratwave/fields.hpp"

namespace stratwave {

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  PhysicalParams params{};
  int nx = 64;
  int nz = 64;
  double Lx = 2.0 * M_PI;
  double Lz = 2.0 * M_PI;
  double dt = 0.0;
  int n_steps = 100;
  int snapshot_every = 10;
  std::string initial = "random";
  double amplitude = 0.1;
  double k = 1.0;
  double m = 1.0;
  std::string snapshot_path;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  double hyperviscosity = 0.0;

  /// Throws ConfigError naming the first invalid key.
  void validate() const;
  Grid2D grid() const { return Grid2D(nx, nz, Lx, Lz); }
};

/// Parses and validates. Unknown keys, duplicate keys and unparsable values
/// raise ConfigError naming the key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Every key in a fixed order, doubles at full precision.
std::string serialize_config(const RunConfig& config);

/// STRATWAVE_SEED, when set, replaces the seed.
void apply_env_overrides(RunConfig& config);

}  // namespace stratwave
