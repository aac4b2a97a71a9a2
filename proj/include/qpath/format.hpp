// format.hpp
// Text certificates for path decompositions ("QPATH v1"):
//   QPATH v1 n=<n> k=<k> count=<c>
//   <k+1 space-separated n-character binary vertices>   (one path per line)
// Body lines are written in lexicographic order; every line ends in '\n'.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qpath/cube.hpp"

namespace qpath::format {

/// Writes the header and the paths in sorted line order.
void write_decomposition(std::ostream& os, const Decomposition& d);
[[nodiscard]] std::string serialize(const Decomposition& d);

/// Strict parse: exact header, exactly `count` lines of k+1 tokens of length n,
/// single spaces, trailing newline, nothing after the last line. Line order is
/// not checked. Throws ParseError.
[[nodiscard]] Decomposition parse(std::string_view text);
[[nodiscard]] Decomposition read_file(const std::filesystem::path& path);

/// Paths reordered so that serialization order equals storage order.
[[nodiscard]] Decomposition sorted(const Decomposition& d);

}  // namespace qpath::format
