#include "finphase/sector_balances.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "finphase/io.hpp"

namespace finphase {

const Money* SectorTable::find(std::string_view sector) const
{
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.first == sector; });
    return it == entries.end() ? nullptr : &it->second;
}

SectorTable parse_sectors(std::istream& is)
{
    SectorTable t;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    auto fail = [&](const std::string& why) {
        return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (io::trim(line).empty())
            continue;
        const auto f = io::split(line);
        if (line[0] == '#') {
            if (f.size() != 2)
                throw fail("malformed metadata line");
            if (f[0] == "#period")
                t.period = f[1];
            else if (f[0] == "#scale")
                t.scale = f[1];
            else
                throw fail("unknown metadata key " + f[0]);
            continue;
        }
        if (!header) {
            if (f.size() != 2 || f[0] != "sector" || f[1] != "balance")
                throw fail("expected header sector,balance");
            header = true;
            continue;
        }
        if (f.size() != 2 || f[0].empty())
            throw fail("expected sector,balance");
        if (t.find(f[0]))
            throw Error(ErrorCode::DuplicateSector, "line " + std::to_string(line_no) + ": " + f[0]);
        t.entries.emplace_back(f[0], Money(io::parse_int(f[1], line_no)));
    }
    if (!header)
        throw fail("missing header sector,balance");
    if (t.entries.size() < 2)
        throw fail("need at least 2 sectors");
    return t;
}

SectorTable load_sectors(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path.string());
    return parse_sectors(in);
}

void write_sectors(std::ostream& os, const SectorTable& table)
{
    if (!table.period.empty())
        os << "#period," << table.period << '\n';
    if (!table.scale.empty())
        os << "#scale," << table.scale << '\n';
    os << "sector,balance\n";
    for (const auto& [name, value] : table.entries)
        os << name << ',' << value << '\n';
}

BalanceReport check_zero_sum(const SectorTable& table, Money tolerance)
{
    if (tolerance < Money{})
        throw Error(ErrorCode::InvalidConfig, "tolerance must be non-negative");
    BalanceReport r;
    const std::pair<std::string, Money>* hi = nullptr;
    const std::pair<std::string, Money>* lo = nullptr;
    for (const auto& e : table.entries) {
        r.residual += e.second;
        if (!hi || e.second > hi->second)
            hi = &e;
        if (!lo || e.second < lo->second)
            lo = &e;
    }
    const Money magnitude = r.residual < Money{} ? -r.residual : r.residual;
    r.is_balanced = magnitude <= tolerance;
    if (hi)
        r.largest_surplus = hi->first;
    if (lo)
        r.largest_deficit = lo->first;
    return r;
}

Counterfactual counterfactual(const SectorTable& table, std::string_view sector, Money new_value)
{
    Counterfactual out{table, Money{}};
    auto it = std::find_if(out.table.entries.begin(), out.table.entries.end(),
                           [&](const auto& e) { return e.first == sector; });
    if (it == out.table.entries.end())
        throw Error(ErrorCode::UnknownSector, std::string(sector));
    it->second = new_value;
    out.required_offset = -check_zero_sum(out.table, Money{}).residual;
    return out;
}

} // namespace finphase
