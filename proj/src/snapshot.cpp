#include "stratwave/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "stratwave/error.hpp"

namespace stratwave {

namespace {

constexpr std::string_view kMagic = "STRATWAVE1";

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void append_le(std::string& out, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
}

double read_le(const char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string encode_snapshot(const FieldState& state) {
  state.check_shared_grid();
  const Grid2D& g = state.grid();
  std::string out = std::string(kMagic) + " " + std::to_string(g.nx()) + " " + std::to_string(g.nz()) + " " +
                    format_double(g.Lx()) + " " + format_double(g.Lz()) + " " + format_double(state.t) + "\n";
  out.reserve(out.size() + 3 * 8 * g.size());
  for (const ScalarField* f : {&state.v, &state.rho, &state.psi}) {
    for (double x : f->values()) append_le(out, x);
  }
  return out;
}

FieldState decode_snapshot(std::string_view bytes) {
  const auto eol = bytes.find('\n');
  if (eol == std::string_view::npos) throw Error("snapshot: missing header line");
  std::istringstream header{std::string(bytes.substr(0, eol))};
  std::string magic;
  int nx = 0, nz = 0;
  double lx = 0, lz = 0, t = 0;
  if (!(header >> magic >> nx >> nz >> lx >> lz >> t) || magic != kMagic) {
    throw Error("snapshot: malformed header");
  }
  const Grid2D grid(nx, nz, lx, lz);
  const std::size_t n = grid.size();
  const std::string_view body = bytes.substr(eol + 1);
  if (body.size() != 3 * 8 * n) throw Error("snapshot: payload size does not match header");

  FieldState s = zero_state(grid, t);
  const char* p = body.data();
  for (ScalarField* f : {&s.v, &s.rho, &s.psi}) {
    for (std::size_t i = 0; i < n; ++i, p += 8) (*f)[i] = read_le(p);
  }
  return s;
}

void write_snapshot(const std::string& path, const FieldState& state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  const std::string bytes = encode_snapshot(state);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path);
}

FieldState read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_snapshot(buf.str());
}

}  // namespace stratwave
