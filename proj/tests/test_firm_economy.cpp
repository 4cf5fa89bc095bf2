#include <doctest.h>

#include <algorithm>

#include "finphase/firm_economy.hpp"
#include "oracles.hpp"

using namespace finphase;

namespace {

EconomyConfig small(std::uint64_t seed = 0)
{
    EconomyConfig c;
    c.n_firms = 100;
    c.n_workers = 1000;
    c.base_money = Money(100'000'000);
    c.n_steps = 30;
    c.seed = seed;
    return c;
}

// High rates and thin capital so that firms go under regularly.
EconomyConfig stress(std::uint64_t seed = 0)
{
    EconomyConfig c = small(seed);
    c.interest_rate = 0.05;
    c.depreciation = 0.2;
    c.initial_capital = Money(500);
    c.n_steps = 60;
    return c;
}

} // namespace

TEST_CASE("config validation")
{
    CHECK_NOTHROW(validate(EconomyConfig{}));
    auto broken = [](auto mutate) {
        EconomyConfig c;
        mutate(c);
        CHECK_THROWS_AS(validate(c), Error);
        CHECK_THROWS_AS(init_economy(c), Error);
    };
    broken([](EconomyConfig& c) { c.n_firms = 0; });
    broken([](EconomyConfig& c) { c.n_workers = 0; });
    broken([](EconomyConfig& c) { c.depreciation = 1.0; });
    broken([](EconomyConfig& c) { c.markup = 0.0; });
    broken([](EconomyConfig& c) { c.capitalist_consumption_fraction = 1.5; });
    broken([](EconomyConfig& c) { c.interest_rate = -0.1; });
    broken([](EconomyConfig& c) { c.initial_capital = Money{}; });
    broken([](EconomyConfig& c) { c.initial_deposit = Money(2'000'000); });
}

TEST_CASE("initial state")
{
    EconomyConfig c = small();
    c.initial_deposit = Money(400'000);
    c.n_workers = 1050;
    const EconomyState e = init_economy(c);
    CHECK(e.ledger().conservation_residual() == Money{});
    CHECK(e.ledger().bank_equity() == Money(100'000'000 - 100 * 400'000));
    std::size_t employed = 0;
    for (std::size_t i = 0; i < c.n_firms; ++i) {
        const auto& f = e.firms()[i];
        CHECK(e.ledger().account(f.id).deposit == Money(400'000));
        CHECK(e.ledger().account(f.id).debt == Money{});
        CHECK(f.capital_stock == c.initial_capital);
        CHECK(f.employees == (i < 50 ? 11u : 10u));
        employed += f.employees;
    }
    CHECK(employed == 1050);
    for (std::size_t w = 0; w < c.n_workers; ++w)
        CHECK(e.ledger().account(e.worker_agent(w)) == Account{});

    const StepRecord s = e.snapshot();
    CHECK(s.t == 0);
    CHECK(std::all_of(s.points.begin(), s.points.end(), [](PhasePoint p) { return p.x < 0.0 && p.y == 0.0; }));
    c.initial_deposit = Money{};
    const StepRecord z = init_economy(c).snapshot();
    CHECK(std::all_of(z.points.begin(), z.points.end(), [](PhasePoint p) { return p.x == 0.0 && p.y == 0.0; }));
}

TEST_CASE("classification")
{
    FirmState f;
    f.capital_stock = Money(1000);
    f.last_profit = Money(50);
    CHECK(classify(f, 0.3, 0.1, 0.05) == FirmClass::B_VoluntaryBorrower);
    CHECK(classify(f, 0.05, 0.1, 0.0) == FirmClass::C_VoluntaryLender);
    CHECK(classify(f, 0.15, 0.1, 0.05) == FirmClass::C_VoluntaryLender);
    CHECK(classify(f, 0.3, 0.1, 0.05, Money(51)) == FirmClass::A_InvoluntaryBorrower);
    f.last_profit = Money(-10);
    CHECK(classify(f, -0.5, 0.1, 0.05) == FirmClass::A_InvoluntaryBorrower);
    CHECK(to_string(FirmClass::B_VoluntaryBorrower) == "B");
}

TEST_CASE("null dynamics move no money")
{
    EconomyConfig c = small();
    c.wage = Money{};
    c.capitalist_consumption_fraction = 0.0;
    c.interest_rate = 0.0;
    c.deposit_rate = 0.0;
    c.initial_deposit = Money(1000);
    c.n_steps = 5;
    const EconomyState start = init_economy(c);
    EconomyState e = start;
    for (int s = 0; s < 5; ++s) {
        const StepRecord r = e.step();
        CHECK(std::all_of(r.points.begin(), r.points.end(), [](PhasePoint p) { return p.y == 0.0; }));
        CHECK(r.bankruptcies == 0);
    }
    CHECK(e.ledger() == start.ledger());
}

TEST_CASE("every step conserves money and balances its flows")
{
    for (const EconomyConfig& c : {small(1), small(2), stress(3), stress(4)}) {
        const auto recs = run(c);
        REQUIRE(recs.size() == c.n_steps + 1);
        for (const auto& r : recs) {
            CHECK(r.conservation_residual == Money{});
            CHECK(r.flow_residual == Money{});
            CHECK(r.points.size() == c.n_firms);
            CHECK(r.class_counts[0] + r.class_counts[1] + r.class_counts[2] == c.n_firms);
        }
    }
}

TEST_CASE("the ledger summation oracle agrees after every step")
{
    EconomyState e = init_economy(stress(8));
    for (int s = 0; s < 40; ++s) {
        e.step();
        REQUIRE(oracle::ledger_residual(e.ledger()) == 0);
    }
}

TEST_CASE("no live firm is past the bankruptcy wall, and the wall is used")
{
    std::size_t bankruptcies = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        EconomyState e = init_economy(stress(seed));
        for (int s = 0; s < 60; ++s) {
            const StepRecord r = e.step();
            bankruptcies += r.bankruptcies;
            for (const auto& p : r.points)
                REQUIRE(p.x <= 1.0);
            for (const auto& f : e.firms())
                REQUIRE(f.capital_stock > Money{});
        }
    }
    CHECK(bankruptcies > 0);
}

TEST_CASE("runs are deterministic in the seed")
{
    const auto a = run(small(5));
    const auto b = run(small(5));
    const auto c = run(small(6));
    bool differs = false;
    for (std::size_t t = 0; t < a.size(); ++t) {
        REQUIRE(a[t].points.size() == b[t].points.size());
        for (std::size_t i = 0; i < a[t].points.size(); ++i) {
            CHECK(a[t].points[i].x == b[t].points[i].x);
            CHECK(a[t].points[i].y == b[t].points[i].y);
            differs = differs || a[t].points[i].x != c[t].points[i].x;
        }
        CHECK(a[t].class_counts == b[t].class_counts);
        CHECK(a[t].bank_equity == b[t].bank_equity);
    }
    CHECK(differs);

    EconomyConfig zero = small();
    zero.n_steps = 0;
    CHECK(run(zero).size() == 1);
}

TEST_CASE("the default economy polarises over time")
{
    // medians over ten seeds at t = 2, 5 and 20
    const std::vector<std::size_t> ts{2, 5, 20};
    std::vector<std::vector<double>> H(3), spread(3), rentier(3), skew(3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EconomyConfig c;
        c.seed = seed;
        const auto recs = run(c);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const auto& pts = recs[ts[k]].points;
            H[k].push_back(entropy(bin_phase(pts, GridSpec{})));
            const TailMetrics m = tail_metrics(pts);
            spread[k].push_back(m.std_x);
            rentier[k].push_back(m.rentier_fraction);
            skew[k].push_back(m.skew_x);
        }
    }
    CHECK(oracle::median(H[2]) > oracle::median(H[1]));
    CHECK(oracle::median(H[1]) > oracle::median(H[0]));
    CHECK(oracle::median(spread[2]) > oracle::median(spread[0]));
    CHECK(oracle::median(rentier[2]) > oracle::median(rentier[0]));
    CHECK(oracle::median(skew[2]) < 0.0);
}
