#ifndef FINPHASE_EXCHANGE_HPP
#define FINPHASE_EXCHANGE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "finphase/money.hpp"
#include "finphase/rng.hpp"

namespace finphase {

/// How much changes hands when an ordered (payer, payee) pair meets.
struct ExchangeRule {
    enum class Kind {
        /// The pair pools its money and splits it uniformly at random:
        /// payee ends with U{0..m_payer+m_payee}, payer with the rest.
        RandomReshuffle,
        /// Payer hands over floor(u * m_payer), u ~ U[0,1).
        UniformFractionOfPayer,
        /// Payer hands over min(amount, m_payer).
        FixedAmount,
    };

    Kind kind = Kind::RandomReshuffle;
    Money amount{}; // FixedAmount only

    static ExchangeRule reshuffle() { return {Kind::RandomReshuffle, Money{}}; }
    static ExchangeRule uniform_fraction() { return {Kind::UniformFractionOfPayer, Money{}}; }
    static ExchangeRule fixed(Money amount) { return {Kind::FixedAmount, amount}; }
};

std::string_view to_string(ExchangeRule::Kind kind) noexcept;
ExchangeRule::Kind parse_exchange_rule(std::string_view name);

struct ExchangeConfig {
    std::size_t n_agents = 10000;
    Money initial_money{1000};
    std::uint64_t n_events = 10'000'000;
    ExchangeRule rule{};
    std::uint64_t seed = 0;
};

void validate(const ExchangeConfig& config);

/// One money balance per agent; the sum is conserved exactly by every event.
struct WealthVector {
    std::vector<Money> money;

    Money total() const;
    std::size_t size() const noexcept { return money.size(); }
};

/// Runs `config.n_events` pairwise exchanges from equal endowments.
/// Events whose payer holds nothing are no-ops but still count.
WealthVector run_exchange(const ExchangeConfig& config);

/// Continues an existing wealth vector for `n_events` more events. Used to
/// snapshot one run at several lengths without restarting it.
void continue_exchange(WealthVector& wealth, const ExchangeRule& rule, std::uint64_t n_events,
                       Rng& rng);

struct ExponentialFit {
    double temperature = 0.0; // sample mean, money units
    double ks_statistic = 0.0;
};

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of `sample`
/// and the Exponential(mean) CDF. Ties are handled exactly.
double ks_exponential(std::span<const double> sample, double mean);

/// Exponential (Gibbs-Boltzmann) fit: temperature = mean money.
ExponentialFit fit_exponential(const WealthVector& wealth);

} // namespace finphase

#endif // FINPHASE_EXCHANGE_HPP
