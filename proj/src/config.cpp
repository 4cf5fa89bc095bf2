#include "finphase/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "finphase/io.hpp"

namespace finphase {

KeyValues parse_key_values(std::istream& is)
{
    KeyValues kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto body = io::trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
        std::string key(io::trim(body.substr(0, eq)));
        std::string value(io::trim(body.substr(eq + 1)));
        if (key.empty())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty key");
        if (kv.entries.contains(key))
            throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line_no) + ": duplicate key " + key);
        kv.entries.emplace(std::move(key), KeyValues::Entry{std::move(value), line_no});
    }
    return kv;
}

KeyValues load_key_values(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::FileNotFound, path.string());
    return parse_key_values(in);
}

namespace {

using Setter = std::function<void(EconomyConfig&, const std::string&, std::size_t)>;

std::uint64_t parse_count(const std::string& v, std::size_t line)
{
    if (!io::trim(v).empty() && io::trim(v).front() == '-')
        throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(line) + ": must be non-negative");
    return io::parse_uint(v, line);
}

struct Field {
    std::string key;
    Setter set;
    std::function<std::string(const EconomyConfig&)> get;
};

const std::vector<Field>& fields()
{
    auto money = [](Money EconomyConfig::*m) {
        return Field{"", [m](EconomyConfig& c, const std::string& v, std::size_t l) { c.*m = Money(io::parse_int(v, l)); },
                     [m](const EconomyConfig& c) { return to_string(c.*m); }};
    };
    auto real = [](double EconomyConfig::*m) {
        return Field{"", [m](EconomyConfig& c, const std::string& v, std::size_t l) { c.*m = io::parse_double(v, l); },
                     [m](const EconomyConfig& c) { return io::format_double(c.*m); }};
    };
    auto count = [](std::size_t EconomyConfig::*m) {
        return Field{"", [m](EconomyConfig& c, const std::string& v, std::size_t l) { c.*m = parse_count(v, l); },
                     [m](const EconomyConfig& c) { return std::to_string(c.*m); }};
    };
    auto named = [](std::string key, Field f) {
        f.key = std::move(key);
        return f;
    };
    static const std::vector<Field> all = {
        named("n_firms", count(&EconomyConfig::n_firms)),
        named("n_workers", count(&EconomyConfig::n_workers)),
        named("base_money", money(&EconomyConfig::base_money)),
        named("wage", money(&EconomyConfig::wage)),
        named("markup", real(&EconomyConfig::markup)),
        named("interest_rate", real(&EconomyConfig::interest_rate)),
        named("deposit_rate", real(&EconomyConfig::deposit_rate)),
        named("investment_margin", real(&EconomyConfig::investment_margin)),
        named("depreciation", real(&EconomyConfig::depreciation)),
        named("capitalist_consumption_fraction", real(&EconomyConfig::capitalist_consumption_fraction)),
        named("n_steps", count(&EconomyConfig::n_steps)),
        Field{"seed", [](EconomyConfig& c, const std::string& v, std::size_t l) { c.seed = parse_count(v, l); },
              [](const EconomyConfig& c) { return std::to_string(c.seed); }},
        named("initial_capital", money(&EconomyConfig::initial_capital)),
        named("initial_deposit", money(&EconomyConfig::initial_deposit)),
        Field{"steps_per_year",
              [](EconomyConfig& c, const std::string& v, std::size_t l) {
                  c.steps_per_year = static_cast<int>(io::parse_int(v, l));
              },
              [](const EconomyConfig& c) { return std::to_string(c.steps_per_year); }},
    };
    return all;
}

} // namespace

const std::vector<std::string>& economy_config_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields())
            k.push_back(f.key);
        return k;
    }();
    return keys;
}

void apply(EconomyConfig& config, const KeyValues& kv)
{
    EconomyConfig out = config;
    for (const auto& [key, entry] : kv.entries) {
        const auto& all = fields();
        const auto it = std::find_if(all.begin(), all.end(), [&](const Field& f) { return f.key == key; });
        if (it == all.end())
            throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(entry.line) + ": unknown key '" + key + "'");
        try {
            it->set(out, entry.value, entry.line);
        } catch (const Error& e) {
            throw Error(ErrorCode::InvalidConfig, std::string("key '") + key + "': " + e.what());
        }
    }
    validate(out);
    config = out;
}

std::string to_key_values(const EconomyConfig& config)
{
    std::ostringstream os;
    for (const auto& f : fields())
        os << f.key << " = " << f.get(config) << '\n';
    return os.str();
}

} // namespace finphase
