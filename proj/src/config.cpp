#include "stratwave/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace stratwave {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "cannot parse '" + std::string(text) + "'");
  return value;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Field {
  std::function<void(RunConfig&, const std::string&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(T RunConfig::*member) {
  return Field{[member](RunConfig& c, const std::string& key, std::string_view v) {
                 c.*member = parse_number<T>(key, v);
               },
               [member](const RunConfig& c) {
                 if constexpr (std::is_floating_point_v<T>) {
                   return format_double(c.*member);
                 } else {
                   return std::to_string(c.*member);
                 }
               }};
}

Field param_field(double PhysicalParams::*member) {
  return Field{[member](RunConfig& c, const std::string& key, std::string_view v) {
                 c.params.*member = parse_number<double>(key, v);
               },
               [member](const RunConfig& c) { return format_double(c.params.*member); }};
}

Field string_field(std::string RunConfig::*member) {
  return Field{[member](RunConfig& c, const std::string&, std::string_view v) { c.*member = std::string(v); },
               [member](const RunConfig& c) { return c.*member; }};
}

// Serialization order.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table{
      {"g", param_field(&PhysicalParams::g)},
      {"f", param_field(&PhysicalParams::f)},
      {"N", param_field(&PhysicalParams::N)},
      {"nx", number_field(&RunConfig::nx)},
      {"nz", number_field(&RunConfig::nz)},
      {"Lx", number_field(&RunConfig::Lx)},
      {"Lz", number_field(&RunConfig::Lz)},
      {"dt", number_field(&RunConfig::dt)},
      {"n_steps", number_field(&RunConfig::n_steps)},
      {"snapshot_every", number_field(&RunConfig::snapshot_every)},
      {"initial", string_field(&RunConfig::initial)},
      {"amplitude", number_field(&RunConfig::amplitude)},
      {"k", number_field(&RunConfig::k)},
      {"m", number_field(&RunConfig::m)},
      {"snapshot_path", string_field(&RunConfig::snapshot_path)},
      {"output_dir", string_field(&RunConfig::output_dir)},
      {"seed", number_field(&RunConfig::seed)},
      {"hyperviscosity", number_field(&RunConfig::hyperviscosity)},
  };
  return table;
}

bool is_integer_multiple(double x) { return std::abs(x - std::round(x)) < 1e-12 * std::max(1.0, std::abs(x)); }

}  // namespace

void RunConfig::validate() const {
  auto require = [](bool ok, const char* key, const char* message) {
    if (!ok) throw ConfigError(key, message);
  };
  require(params.g > 0.0 && std::isfinite(params.g), "g", "must be positive");
  require(std::isfinite(params.f), "f", "must be finite");
  require(params.N > 0.0 && std::isfinite(params.N), "N", "must be positive");
  require(nx >= 8 && nx % 2 == 0, "nx", "must be even and >= 8");
  require(nz >= 8 && nz % 2 == 0, "nz", "must be even and >= 8");
  require(Lx > 0.0 && std::isfinite(Lx), "Lx", "must be positive");
  require(Lz > 0.0 && std::isfinite(Lz), "Lz", "must be positive");
  require(dt >= 0.0 && std::isfinite(dt), "dt", "must be >= 0 (0 selects the automatic step)");
  require(n_steps >= 0, "n_steps", "must be >= 0");
  require(snapshot_every >= 1, "snapshot_every", "must be >= 1");
  require(initial == "random" || initial == "plane_wave" || initial == "snapshot", "initial",
          "must be random, plane_wave or snapshot");
  require(std::isfinite(amplitude) && amplitude >= 0.0, "amplitude", "must be finite and >= 0");
  if (initial == "plane_wave") {
    require(std::isfinite(k) && is_integer_multiple(k * Lx / (2.0 * M_PI)), "k",
            "must make the plane wave periodic in x");
    require(std::isfinite(m) && is_integer_multiple(m * Lz / (2.0 * M_PI)), "m",
            "must make the plane wave periodic in z");
    require(k != 0.0 || m != 0.0, "k", "wave vector must be nonzero");
    require(k != 0.0 || params.f != 0.0, "k", "k = 0 needs f != 0 for a nonzero frequency");
  }
  require(initial != "snapshot" || !snapshot_path.empty(), "snapshot_path",
          "required when initial=snapshot");
  require(!output_dir.empty(), "output_dir", "must not be empty");
  require(hyperviscosity >= 0.0 && std::isfinite(hyperviscosity), "hyperviscosity", "must be >= 0");
}

RunConfig parse_config(std::string_view text) {
  std::map<std::string, const Field*> lookup;
  for (const auto& [name, field] : fields()) lookup[name] = &field;

  RunConfig cfg;
  std::set<std::string> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = lookup.find(key);
    if (it == lookup.end()) throw ConfigError(key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    it->second->set(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& [name, field] : fields()) out += name + " = " + field.get(config) + "\n";
  return out;
}

void apply_env_overrides(RunConfig& config) {
  if (const char* s = std::getenv("STRATWAVE_SEED"); s != nullptr && *s != '\0') {
    config.seed = parse_number<std::uint64_t>("STRATWAVE_SEED", s);
  }
}

}  // namespace stratwave
