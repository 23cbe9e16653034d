#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace irtbench {

// Plain comma split; ids and numbers never need quoting in our formats.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a whole file; Error(kIo) if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest text that parses back to the same double.
std::string format_exact(double value);

double parse_double(std::string_view text, std::string_view what);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace irtbench
