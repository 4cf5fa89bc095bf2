#ifndef FINPHASE_FIRM_ECONOMY_HPP
#define FINPHASE_FIRM_ECONOMY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "finphase/ledger.hpp"
#include "finphase/phase_analytics.hpp"
#include "finphase/rng.hpp"

namespace finphase {

enum class FirmClass : std::uint8_t {
    A_InvoluntaryBorrower,
    B_VoluntaryBorrower,
    C_VoluntaryLender,
};

std::string_view to_string(FirmClass c) noexcept;

struct FirmState {
    AgentId id;
    Money capital_stock;    // book value of equipment
    std::uint32_t employees = 0;
    Money last_profit;      // per step
    FirmClass cls = FirmClass::C_VoluntaryLender;
};

/// Parameters of the workers / firms / single-bank economy. Rates are per
/// step unless marked otherwise; one step is a week.
struct EconomyConfig {
    std::size_t n_firms = 1000;
    std::size_t n_workers = 10000;
    Money base_money{1'000'000'000};
    Money wage{100};                  // per worker per step
    double markup = 1.0;              // carried for the record; revenue is spending-driven
    double interest_rate = 0.005;     // on debt, per step
    double deposit_rate = 0.005;      // paid by the bank on firm deposits, per step
    double investment_margin = 0.01;  // per year, over the annualised interest rate
    double depreciation = 0.01;       // book write-down per step, in [0, 1)
    double capitalist_consumption_fraction = 0.05;
    std::size_t n_steps = 20;
    std::uint64_t seed = 0;
    // The split of base money: each firm starts with `initial_deposit` and
    // `initial_capital`; workers hold nothing; the rest is bank equity.
    Money initial_capital{5000};
    Money initial_deposit{0};
    int steps_per_year = 50;
};

void validate(const EconomyConfig& config);

struct StepRecord {
    std::size_t t = 0;
    std::vector<PhasePoint> points; // one per firm, ordered by firm id
    std::array<std::size_t, 3> class_counts{}; // A, B, C
    std::size_t bankruptcies = 0;
    Money conservation_residual;
    /// sum over agents of the change in net position plus the change in
    /// bank equity over this step; zero whenever credit growth is matched.
    Money flow_residual;
    Money bank_equity;
};

class EconomyState {
public:
    explicit EconomyState(const EconomyConfig& config);

    const EconomyConfig& config() const noexcept { return config_; }
    const Ledger& ledger() const noexcept { return ledger_; }
    const std::vector<FirmState>& firms() const noexcept { return firms_; }
    std::size_t time() const noexcept { return t_; }

    AgentId firm_agent(std::size_t firm) const { return AgentId{static_cast<std::uint32_t>(firm)}; }
    AgentId worker_agent(std::size_t worker) const
    {
        return AgentId{static_cast<std::uint32_t>(config_.n_firms + worker)};
    }

    Money net_debt(std::size_t firm) const;

    /// Phase points with y measured against the previous step boundary.
    StepRecord snapshot() const;

    StepRecord step();

private:
    void pay_wages(std::vector<Money>& profit);
    void consume(std::vector<Money>& profit);
    void charge_interest(std::vector<Money>& profit);
    void classify_and_invest(StepRecord& rec);
    void depreciate();
    std::size_t resolve_bankruptcies();
    void endow(std::size_t firm);
    std::size_t random_other_firm(std::size_t firm);

    EconomyConfig config_;
    Ledger ledger_;
    std::vector<FirmState> firms_;
    std::vector<std::size_t> first_worker_;
    std::vector<Money> prev_net_debt_;
    Rng rng_;
    std::size_t t_ = 0;
};

/// Initial state: equal capital and deposit, zero debt, idle workers.
EconomyState init_economy(const EconomyConfig& config);

/// Class of a live firm. `profit_rate`, `interest_rate` and `margin` share a
/// time unit (per year in the simulation); `interest_due` is this step's
/// interest on the firm's net debt.
///  A: last profit does not cover the interest due
///  B: profit rate beats interest plus margin
///  C: otherwise
FirmClass classify(const FirmState& firm, double profit_rate, double interest_rate, double margin,
                   Money interest_due = Money{});

/// Initial snapshot followed by one record per step.
std::vector<StepRecord> run(const EconomyConfig& config);

} // namespace finphase

#endif // FINPHASE_FIRM_ECONOMY_HPP
