#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace nodenet {

/// Formats a double with enough digits to round-trip exactly ("%.17g").
std::string format_double(double v);

/// FNV-1a 64-bit hash of a byte range, as a fixed-width hex string.
std::string fnv1a_hex(std::string_view bytes);

/// Reads a whole file into a string. Throws InputError if unreadable.
std::string read_file_bytes(const std::filesystem::path& path);

/// Opens `path` for writing, throwing InputError on failure.
std::ofstream open_output(const std::filesystem::path& path,
                          std::ios::openmode mode = std::ios::out);

/// Opens `path` for reading, throwing InputError on failure.
std::ifstream open_input(const std::filesystem::path& path,
                         std::ios::openmode mode = std::ios::in);

/// One-line format-version header carried by stage artifacts, e.g.
/// "# corpus v1". Loaders accept headerless files (external inputs) but
/// reject a header whose kind or version does not match.
std::string format_header(std::string_view kind, int version);

/// Checks `line` against the expected artifact kind. Returns true when the
/// line is a version header (and thus should be skipped by the parser).
/// Throws InputError on a kind or version mismatch.
bool consume_format_header(std::string_view line, std::string_view kind,
                           int version);

/// Splits one delimited line into cells. No quoting; trailing '\r' stripped.
std::vector<std::string> split_line(std::string_view line, char delimiter);

/// Parses a full cell as a finite double. Returns false on any trailing
/// garbage or non-finite value.
bool parse_finite_double(std::string_view cell, double& out);

}  // namespace nodenet
