#include <doctest.h>

#include <sstream>

#include "finphase/config.hpp"

using namespace finphase;

namespace {

KeyValues kv(const std::string& text)
{
    std::istringstream is(text);
    return parse_key_values(is);
}

} // namespace

TEST_CASE("key-value parsing")
{
    const KeyValues k = kv("# economy\n\n n_firms = 20 \nwage=7\n  # indented comment\nseed = 3\n");
    REQUIRE(k.entries.size() == 3);
    CHECK(k.entries.at("n_firms").value == "20");
    CHECK(k.entries.at("n_firms").line == 3);
    CHECK(k.entries.at("wage").value == "7");

    CHECK_THROWS_AS(kv("n_firms 20\n"), Error);
    CHECK_THROWS_AS(kv(" = 20\n"), Error);
    CHECK_THROWS_AS(kv("seed = 1\nseed = 2\n"), Error);
    CHECK_THROWS_AS(load_key_values("/nonexistent/economy.cfg"), Error);
}

TEST_CASE("applying keys to an economy config")
{
    EconomyConfig c;
    apply(c, kv("n_firms = 20\nn_workers = 200\nwage = 7\ninterest_rate = 0.01\nseed = 99\n"));
    CHECK(c.n_firms == 20);
    CHECK(c.n_workers == 200);
    CHECK(c.wage == Money(7));
    CHECK(c.interest_rate == 0.01);
    CHECK(c.seed == 99);
    CHECK(c.depreciation == EconomyConfig{}.depreciation);

    auto rejects = [](const std::string& text) {
        EconomyConfig c;
        try {
            apply(c, kv(text));
        } catch (const Error& e) {
            return e.code() == ErrorCode::InvalidConfig;
        }
        return false;
    };
    CHECK(rejects("n_frims = 20\n"));
    CHECK(rejects("n_firms = twenty\n"));
    CHECK(rejects("n_firms = -3\n"));
    CHECK(rejects("wage = 1.5\n"));
    CHECK(rejects("depreciation = 1.0\n"));
    CHECK(rejects("n_firms = 0\n"));
}

TEST_CASE("every field survives a round trip")
{
    EconomyConfig c;
    c.n_firms = 17;
    c.n_workers = 171;
    c.base_money = Money(123'456'789);
    c.wage = Money(33);
    c.markup = 1.25;
    c.interest_rate = 0.1 / 3.0;
    c.deposit_rate = 0.002;
    c.investment_margin = 0.07;
    c.depreciation = 0.015;
    c.capitalist_consumption_fraction = 0.3;
    c.n_steps = 44;
    c.seed = 18'446'744'073'709'551'615ull;
    c.initial_capital = Money(777);
    c.initial_deposit = Money(55);
    c.steps_per_year = 12;

    const std::string text = to_key_values(c);
    EconomyConfig back;
    apply(back, kv(text));
    CHECK(to_key_values(back) == text);
    CHECK(back.interest_rate == c.interest_rate);
    CHECK(back.seed == c.seed);

    const KeyValues parsed = kv(text);
    CHECK(parsed.entries.size() == economy_config_keys().size());
    for (const auto& key : economy_config_keys())
        CHECK(parsed.entries.count(key) == 1);
}
