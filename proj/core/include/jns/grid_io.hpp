#pragma once

#include <iosfwd>
#include <string>

#include "jns/grid_function.hpp"

namespace jns {

/// Grid file format, bit-exact:
///   jngrid v1 n=<n> m=<m> K=<K> order=<s_max>[ bin]
/// followed by 2^(nK) whitespace-separated decimal values in row-major order
/// (last axis fastest), or little-endian IEEE-754 doubles when flagged bin.
/// Readers prepare moment tables to the header order.

void write_grid(const GridFunction& f, std::ostream& os, bool binary = false);
void write_grid_file(const GridFunction& f, const std::string& path, bool binary = false);

[[nodiscard]] GridFunction read_grid(std::istream& is);
[[nodiscard]] GridFunction read_grid_file(const std::string& path);

}  // namespace jns
