#ifndef FINPHASE_IO_HPP
#define FINPHASE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace finphase::io {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

std::vector<std::string> split(std::string_view line, char sep = ',');
std::string_view trim(std::string_view s);

// Parsers report failures as ParseError tagged with `line_no`.
double parse_double(std::string_view field, std::size_t line_no);
std::int64_t parse_int(std::string_view field, std::size_t line_no);
std::uint64_t parse_uint(std::string_view field, std::size_t line_no);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

} // namespace finphase::io

#endif // FINPHASE_IO_HPP
