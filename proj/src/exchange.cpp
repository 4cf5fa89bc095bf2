#include "finphase/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "finphase/error.hpp"
#include "finphase/rng.hpp"

namespace finphase {

std::string_view to_string(ExchangeRule::Kind kind) noexcept
{
    switch (kind) {
    case ExchangeRule::Kind::RandomReshuffle: return "reshuffle";
    case ExchangeRule::Kind::UniformFractionOfPayer: return "fraction";
    case ExchangeRule::Kind::FixedAmount: return "fixed";
    }
    return "unknown";
}

ExchangeRule::Kind parse_exchange_rule(std::string_view name)
{
    if (name == "reshuffle")
        return ExchangeRule::Kind::RandomReshuffle;
    if (name == "fraction")
        return ExchangeRule::Kind::UniformFractionOfPayer;
    if (name == "fixed")
        return ExchangeRule::Kind::FixedAmount;
    throw Error(ErrorCode::InvalidConfig, "unknown exchange rule '" + std::string(name) + "'");
}

void validate(const ExchangeConfig& config)
{
    if (config.n_agents < 2)
        throw Error(ErrorCode::InvalidConfig, "n_agents must be at least 2");
    if (config.initial_money < Money{})
        throw Error(ErrorCode::InvalidConfig, "initial_money must be non-negative");
    if (config.rule.kind == ExchangeRule::Kind::FixedAmount && config.rule.amount < Money{})
        throw Error(ErrorCode::InvalidConfig, "fixed exchange amount must be non-negative");
    // the conserved total must itself be representable
    (void)(config.initial_money * static_cast<Money::rep>(config.n_agents));
}

Money WealthVector::total() const
{
    return std::accumulate(money.begin(), money.end(), Money{});
}

void continue_exchange(WealthVector& wealth, const ExchangeRule& rule, std::uint64_t n_events, Rng& rng)
{
    auto& m = wealth.money;
    const std::uint64_t n = m.size();
    if (n < 2)
        throw Error(ErrorCode::InvalidConfig, "exchange needs at least 2 agents");

    for (std::uint64_t e = 0; e < n_events; ++e) {
        const std::uint64_t payer = rng.uniform_index(n);
        std::uint64_t payee = rng.uniform_index(n - 1);
        if (payee >= payer)
            ++payee;

        Money& from = m[payer];
        Money& to = m[payee];
        switch (rule.kind) {
        case ExchangeRule::Kind::RandomReshuffle: {
            const Money pool = from + to;
            const auto share = static_cast<Money::rep>(
                rng.uniform_index(static_cast<std::uint64_t>(pool.units()) + 1));
            to = Money(share);
            from = pool - to;
            break;
        }
        case ExchangeRule::Kind::UniformFractionOfPayer: {
            if (from.units() == 0)
                break;
            const Money amount = fraction_floor(from, rng.uniform01());
            from -= amount;
            to += amount;
            break;
        }
        case ExchangeRule::Kind::FixedAmount: {
            const Money amount = std::min(rule.amount, from);
            from -= amount;
            to += amount;
            break;
        }
        }
    }
}

WealthVector run_exchange(const ExchangeConfig& config)
{
    validate(config);
    WealthVector wealth{std::vector<Money>(config.n_agents, config.initial_money)};
    Rng rng(config.seed);
    continue_exchange(wealth, config.rule, config.n_events, rng);
    return wealth;
}

double ks_exponential(std::span<const double> sample, double mean)
{
    if (sample.empty())
        throw Error(ErrorCode::TooFewPoints, "empty sample");
    if (!(mean > 0.0))
        throw Error(ErrorCode::DegenerateSample, "exponential mean must be positive");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());

    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const double cdf = sorted[i] > 0.0 ? -std::expm1(-sorted[i] / mean) : 0.0;
        // ECDF jumps from i/n to j/n at this value
        d = std::max({d, std::abs(static_cast<double>(i) / n - cdf), std::abs(static_cast<double>(j) / n - cdf)});
        i = j;
    }
    return d;
}

ExponentialFit fit_exponential(const WealthVector& wealth)
{
    if (wealth.size() < 2)
        throw Error(ErrorCode::TooFewPoints, "need at least 2 agents");
    const Money total = wealth.total();
    if (total <= Money{})
        throw Error(ErrorCode::DegenerateSample, "total wealth must be positive");

    std::vector<double> sample(wealth.size());
    std::transform(wealth.money.begin(), wealth.money.end(), sample.begin(),
                   [](Money m) { return m.to_double(); });
    ExponentialFit fit;
    fit.temperature = total.to_double() / static_cast<double>(wealth.size());
    fit.ks_statistic = ks_exponential(sample, fit.temperature);
    return fit;
}

} // namespace finphase
