#include "finphase/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "finphase/error.hpp"

namespace finphase::io {

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), end);
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line_no)
{
    field = trim(field);
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last)
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
    return v;
}

namespace {

template <typename Int>
Int parse_integer(std::string_view field, std::size_t line_no)
{
    field = trim(field);
    Int v = 0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (!field.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last)
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": not an integer: '" + std::string(field) + "'");
    return v;
}

} // namespace

std::int64_t parse_int(std::string_view field, std::size_t line_no)
{
    return parse_integer<std::int64_t>(field, line_no);
}

std::uint64_t parse_uint(std::string_view field, std::size_t line_no)
{
    return parse_integer<std::uint64_t>(field, line_no);
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::FileNotFound, "cannot write " + path.string());
    out << contents;
}

} // namespace finphase::io
