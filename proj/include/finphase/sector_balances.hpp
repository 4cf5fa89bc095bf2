#ifndef FINPHASE_SECTOR_BALANCES_HPP
#define FINPHASE_SECTOR_BALANCES_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finphase/money.hpp"

namespace finphase {

/// Net lending (+) / borrowing (-) per sector for one period, in file order.
/// Balances are integers in units of `scale` (e.g. "billion EUR").
struct SectorTable {
    std::string period;
    std::string scale;
    std::vector<std::pair<std::string, Money>> entries;

    const Money* find(std::string_view sector) const;
};

struct BalanceReport {
    Money residual;
    bool is_balanced = false;
    std::string largest_surplus;
    std::string largest_deficit;
};

struct Counterfactual {
    SectorTable table;
    /// Aggregate change the other sectors must absorb for zero-sum to hold.
    Money required_offset;
};

/// Schema: optional `#period,<label>` and `#scale,<unit>` lines, the header
/// `sector,balance`, then one row per sector. Errors carry line numbers.
SectorTable parse_sectors(std::istream& is);
SectorTable load_sectors(const std::filesystem::path& path);
void write_sectors(std::ostream& os, const SectorTable& table);

BalanceReport check_zero_sum(const SectorTable& table, Money tolerance);

Counterfactual counterfactual(const SectorTable& table, std::string_view sector, Money new_value);

} // namespace finphase

#endif // FINPHASE_SECTOR_BALANCES_HPP
