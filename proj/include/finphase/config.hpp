#ifndef FINPHASE_CONFIG_HPP
#define FINPHASE_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "finphase/firm_economy.hpp"

namespace finphase {

/// `key = value` text, one pair per line. Blank lines and lines starting
/// with `#` are ignored; a repeated key is an error.
struct KeyValues {
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };
    std::map<std::string, Entry> entries;
};

KeyValues parse_key_values(std::istream& is);
KeyValues load_key_values(const std::filesystem::path& path);

/// Applies every pair to `config`; unknown keys and malformed values throw
/// InvalidConfig. The result is validated.
void apply(EconomyConfig& config, const KeyValues& kv);

/// The key names `apply` accepts, in documentation order.
const std::vector<std::string>& economy_config_keys();

/// Every field of the config as `key = value` lines, loadable by `apply`.
std::string to_key_values(const EconomyConfig& config);

} // namespace finphase

#endif // FINPHASE_CONFIG_HPP
