#pragma once

// Binary snapshot: ASCII header "STRATWAVE1 nx nz Lx Lz t\n" followed by the
// row-major v, rho and psi arrays as little-endian 64-bit IEEE doubles.

#include <string>
#include <string_view>

#include "stratwave/fields.hpp"

namespace stratwave {

std::string encode_snapshot(const FieldState& state);
FieldState decode_snapshot(std::string_view bytes);

void write_snapshot(const std::string& path, const FieldState& state);
FieldState read_snapshot(const std::string& path);

}  // namespace stratwave
