#include <doctest.h>

#include <cmath>
#include <numbers>

#include "finphase/bank_interest.hpp"
#include "oracles.hpp"

using namespace finphase;

namespace {

ReserveRiskModel reference_bank()
{
    return {Money(5'000'000), Money(3'000'000), Money(1'000'000), Money{}};
}

} // namespace

TEST_CASE("normal CDF reference values")
{
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(-2.0) == doctest::Approx(0.022750131948179).epsilon(1e-13));
    CHECK(normal_cdf(-3.0) == doctest::Approx(0.0013498980316301).epsilon(1e-13));
    CHECK(normal_cdf(1.0) + normal_cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(normal_cdf(-40.0) >= 0.0);
}

TEST_CASE("worked example: a 1M loan against 3M reserves")
{
    const double p = excursion_exceedance(reference_bank(), Money(1'000'000));
    CHECK(std::abs(p - 0.021400233916549) < 1e-12);

    const InterestQuote q = min_interest_rate(reference_bank(), Money(1'000'000));
    CHECK(q.p_e == p);
    CHECK(q.expected_cost >= 106'900);
    CHECK(q.expected_cost <= 107'100);
    CHECK(q.min_rate >= 0.1069);
    CHECK(q.min_rate <= 0.1071);
}

TEST_CASE("edge cases and errors")
{
    CHECK(excursion_exceedance(reference_bank(), Money{}) == 0.0);
    ReserveRiskModel m = reference_bank();
    CHECK_THROWS_AS(excursion_exceedance(m, Money(3'000'001)), Error);
    CHECK_THROWS_AS(excursion_exceedance(m, Money(-1)), Error);
    CHECK_THROWS_AS(min_interest_rate(m, Money{}), Error);
    m.sigma = Money{};
    CHECK_THROWS_AS(excursion_exceedance(m, Money(1)), Error);
    try {
        min_interest_rate(reference_bank(), Money(4'000'000));
        FAIL("expected LoanExceedsReserves");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LoanExceedsReserves);
    }
}

TEST_CASE("monotonicity and linearity")
{
    const ReserveRiskModel m = reference_bank();
    double prev = 0.0;
    for (int k = 1; k <= 30; ++k) {
        const double p = excursion_exceedance(m, Money(100'000 * k));
        CHECK(p > prev);
        CHECK(p <= 1.0);
        prev = p;
    }

    double prev_rate = INFINITY;
    for (int r = 2; r <= 12; ++r) {
        ReserveRiskModel richer = m;
        richer.reserves = Money(500'000 * r);
        const double rate = min_interest_rate(richer, Money(1'000'000)).min_rate;
        CHECK(rate < prev_rate);
        prev_rate = rate;
    }
    ReserveRiskModel huge = m;
    huge.reserves = Money(60'000'000);
    CHECK(excursion_exceedance(huge, Money(1'000'000)) < 1e-300);

    ReserveRiskModel doubled = m;
    doubled.banker_capital = Money(10'000'000);
    CHECK(min_interest_rate(doubled, Money(1'000'000)).min_rate ==
          doctest::Approx(2.0 * min_interest_rate(m, Money(1'000'000)).min_rate).epsilon(1e-15));

    // a vanishing loan opens a vanishing band, but the rate tends to the
    // density at the reserve edge: capital * phi(reserves / sigma) / sigma
    CHECK(excursion_exceedance(m, Money(1)) < 1e-8);
    const double phi3 = std::exp(-4.5) / std::sqrt(2.0 * std::numbers::pi);
    CHECK(min_interest_rate(m, Money(1)).min_rate == doctest::Approx(5.0 * phi3).epsilon(1e-5));
}

TEST_CASE("agrees with a Monte-Carlo estimate across parameters")
{
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        ReserveRiskModel m;
        m.banker_capital = Money(1'000'000);
        m.sigma = Money(200'000 + static_cast<Money::rep>(rng.uniform_index(1'000'000)));
        m.reserves = Money(static_cast<Money::rep>(rng.uniform_index(3'000'000)));
        m.mean_excursion = Money(static_cast<Money::rep>(rng.uniform_index(400'000)) - 200'000);
        const Money loan(static_cast<Money::rep>(rng.uniform_index(static_cast<std::uint64_t>(m.reserves.units()) + 1)));
        const double p = excursion_exceedance(m, loan);
        const auto [mc, se] = oracle::gaussian_band_mc(-m.reserves.to_double(), -(m.reserves - loan).to_double(),
                                                      m.mean_excursion.to_double(), m.sigma.to_double(),
                                                      200'000, 1000 + i);
        CHECK(std::abs(p - mc) <= 4.0 * se + 1e-12);
    }
}

TEST_CASE("reserve path")
{
    const auto flat = reserve_path({Money(100), Money(30), Money(30), Money{}}, 0.5, 8);
    REQUIRE(flat.size() == 9);
    for (const auto& pt : flat)
        CHECK(pt.B == 100.0);
    CHECK(flat.back().t == 4.0);

    const auto line = reserve_path({Money(7), Money(15), Money(5), Money{}}, 1.0, 5);
    for (std::size_t k = 0; k < line.size(); ++k)
        CHECK(line[k].B == 7.0 + 10.0 * static_cast<double>(k));

    const auto sales = reserve_path({Money(1000), Money(50), Money(20), Money(40)}, 0.25, 20);
    for (std::size_t k = 1; k < sales.size(); ++k)
        CHECK(sales[k].B < sales[k - 1].B);

    CHECK_THROWS_AS(reserve_path({}, 0.0, 3), Error);
    CHECK(reserve_path({Money(3), {}, {}, {}}, 1.0, 0).size() == 1);
}
