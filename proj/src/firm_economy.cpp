#include "finphase/firm_economy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finphase {

std::string_view to_string(FirmClass c) noexcept
{
    switch (c) {
    case FirmClass::A_InvoluntaryBorrower: return "A";
    case FirmClass::B_VoluntaryBorrower: return "B";
    case FirmClass::C_VoluntaryLender: return "C";
    }
    return "?";
}

void validate(const EconomyConfig& c)
{
    auto bad = [](const char* what) { return Error(ErrorCode::InvalidConfig, what); };
    if (c.n_firms < 1)
        throw bad("n_firms must be at least 1");
    if (c.n_workers < 1)
        throw bad("n_workers must be at least 1");
    if (c.n_firms + c.n_workers > std::numeric_limits<std::uint32_t>::max())
        throw bad("too many agents");
    if (c.base_money < Money{})
        throw bad("base_money must be non-negative");
    if (c.wage < Money{})
        throw bad("wage must be non-negative");
    if (!(c.markup > 0.0))
        throw bad("markup must be positive");
    if (!(c.interest_rate >= 0.0))
        throw bad("interest_rate must be non-negative");
    if (!(c.deposit_rate >= 0.0))
        throw bad("deposit_rate must be non-negative");
    if (!(c.investment_margin >= 0.0))
        throw bad("investment_margin must be non-negative");
    if (!(c.depreciation >= 0.0 && c.depreciation < 1.0))
        throw bad("depreciation must lie in [0, 1)");
    if (!(c.capitalist_consumption_fraction >= 0.0 && c.capitalist_consumption_fraction <= 1.0))
        throw bad("capitalist_consumption_fraction must lie in [0, 1]");
    if (c.initial_capital <= Money{})
        throw bad("initial_capital must be positive");
    if (c.initial_deposit < Money{})
        throw bad("initial_deposit must be non-negative");
    if (c.steps_per_year < 1)
        throw bad("steps_per_year must be at least 1");
    if (c.initial_deposit * static_cast<Money::rep>(c.n_firms) > c.base_money)
        throw bad("base_money cannot cover n_firms * initial_deposit");
}

FirmClass classify(const FirmState& firm, double profit_rate, double interest_rate, double margin,
                   Money interest_due)
{
    if (firm.last_profit < interest_due)
        return FirmClass::A_InvoluntaryBorrower;
    if (profit_rate > interest_rate + margin)
        return FirmClass::B_VoluntaryBorrower;
    return FirmClass::C_VoluntaryLender;
}

namespace {

// Interest is rounded up to whole minor units.
Money interest_on(Money principal, double rate)
{
    if (principal <= Money{} || rate <= 0.0)
        return Money{};
    return Money(static_cast<Money::rep>(std::ceil(principal.to_double() * rate)));
}

} // namespace

EconomyState::EconomyState(const EconomyConfig& config)
    : config_((validate(config), config)),
      ledger_(config.n_firms + config.n_workers, config.base_money),
      firms_(config.n_firms),
      first_worker_(config.n_firms + 1),
      prev_net_debt_(config.n_firms),
      rng_(config.seed)
{
    // workers split as evenly as possible, the first firms taking the remainder
    const std::size_t per = config.n_workers / config.n_firms;
    const std::size_t extra = config.n_workers % config.n_firms;
    first_worker_[0] = 0;
    for (std::size_t i = 0; i < config.n_firms; ++i) {
        auto& f = firms_[i];
        f.id = firm_agent(i);
        f.employees = static_cast<std::uint32_t>(per + (i < extra ? 1 : 0));
        first_worker_[i + 1] = first_worker_[i] + f.employees;
        endow(i);
    }
}

void EconomyState::endow(std::size_t firm)
{
    auto& f = firms_[firm];
    f.capital_stock = config_.initial_capital;
    f.last_profit = Money{};
    f.cls = FirmClass::C_VoluntaryLender;
    ledger_.bank_grant(f.id, config_.initial_deposit);
    prev_net_debt_[firm] = net_debt(firm);
}

Money EconomyState::net_debt(std::size_t firm) const { return -ledger_.net_position(firm_agent(firm)); }

std::size_t EconomyState::random_other_firm(std::size_t firm)
{
    std::size_t j = rng_.uniform_index(config_.n_firms - 1);
    return j >= firm ? j + 1 : j;
}

StepRecord EconomyState::snapshot() const
{
    StepRecord rec;
    rec.t = t_;
    rec.points.reserve(firms_.size());
    for (std::size_t i = 0; i < firms_.size(); ++i) {
        const double k = firms_[i].capital_stock.to_double();
        const Money nd = net_debt(i);
        rec.points.push_back({nd.to_double() / k, (nd - prev_net_debt_[i]).to_double() / k});
        rec.class_counts[static_cast<std::size_t>(firms_[i].cls)]++;
    }
    rec.conservation_residual = ledger_.conservation_residual();
    rec.bank_equity = ledger_.bank_equity();
    return rec;
}

void EconomyState::pay_wages(std::vector<Money>& profit)
{
    for (std::size_t i = 0; i < firms_.size(); ++i) {
        const AgentId firm = firm_agent(i);
        const Money bill = config_.wage * firms_[i].employees;
        const Money cash = ledger_.account(firm).deposit;
        if (cash < bill)
            ledger_.create_loan(firm, bill - cash);
        for (std::size_t w = first_worker_[i]; w < first_worker_[i + 1]; ++w)
            ledger_.transfer(firm, worker_agent(w), config_.wage);
        profit[i] -= bill;
    }
}

void EconomyState::consume(std::vector<Money>& profit)
{
    const std::size_t n = firms_.size();
    // workers spend their whole balance at one firm each
    for (std::size_t w = 0; w < config_.n_workers; ++w) {
        const AgentId worker = worker_agent(w);
        const std::size_t shop = rng_.uniform_index(n);
        const Money cash = ledger_.account(worker).deposit;
        if (cash > Money{}) {
            ledger_.transfer(worker, firm_agent(shop), cash);
            profit[shop] += cash;
        }
    }
    if (n < 2 || config_.capitalist_consumption_fraction <= 0.0)
        return;
    // owners draw a fraction of the firm's deposit and spend it elsewhere
    for (std::size_t i = 0; i < n; ++i) {
        const AgentId firm = firm_agent(i);
        const std::size_t shop = random_other_firm(i);
        const Money spend = fraction_floor(ledger_.account(firm).deposit, config_.capitalist_consumption_fraction);
        if (spend > Money{}) {
            ledger_.transfer(firm, firm_agent(shop), spend);
            profit[shop] += spend;
        }
    }
}

void EconomyState::charge_interest(std::vector<Money>& profit)
{
    for (std::size_t i = 0; i < firms_.size(); ++i) {
        const AgentId firm = firm_agent(i);
        const Account& acc = ledger_.account(firm);
        // deposit interest is credited on the balance held before any charge
        const Money earned = interest_on(acc.deposit, config_.deposit_rate);
        if (earned > Money{}) {
            ledger_.bank_grant(firm, earned);
            profit[i] += earned;
        }
        const Money due = interest_on(acc.debt, config_.interest_rate);
        if (due == Money{})
            continue;
        if (acc.deposit < due)
            ledger_.create_loan(firm, due - acc.deposit);
        ledger_.pay_bank(firm, due);
        profit[i] -= due;
    }
}

void EconomyState::classify_and_invest(StepRecord& rec)
{
    const double annual_interest = config_.interest_rate * config_.steps_per_year;
    for (std::size_t i = 0; i < firms_.size(); ++i) {
        auto& f = firms_[i];
        const AgentId firm = f.id;
        const double profit_rate =
            f.last_profit.to_double() * config_.steps_per_year / f.capital_stock.to_double();
        const Money nd = net_debt(i);
        const Money due = interest_on(nd, config_.interest_rate);
        f.cls = classify(f, profit_rate, annual_interest, config_.investment_margin, due);
        rec.class_counts[static_cast<std::size_t>(f.cls)]++;

        switch (f.cls) {
        case FirmClass::A_InvoluntaryBorrower:
            break;
        case FirmClass::B_VoluntaryBorrower: {
            // borrow the step's profit and buy equipment from another firm
            const Money loan = f.last_profit;
            if (firms_.size() < 2 || loan <= Money{})
                break;
            const std::size_t supplier = random_other_firm(i);
            ledger_.create_loan(firm, loan);
            ledger_.transfer(firm, firm_agent(supplier), loan);
            f.capital_stock += loan;
            break;
        }
        case FirmClass::C_VoluntaryLender: {
            const Account& acc = ledger_.account(firm);
            const Money repay = std::min(acc.deposit, acc.debt);
            if (repay > Money{})
                ledger_.repay_loan(firm, repay);
            break;
        }
        }
    }
}

void EconomyState::depreciate()
{
    for (auto& f : firms_)
        f.capital_stock -= fraction_floor(f.capital_stock, config_.depreciation);
}

std::size_t EconomyState::resolve_bankruptcies()
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < firms_.size(); ++i) {
        if (firms_[i].capital_stock > Money{} && net_debt(i) <= firms_[i].capital_stock)
            continue;
        ledger_.annihilate(firms_[i].id);
        endow(i);
        ++count;
    }
    return count;
}

StepRecord EconomyState::step()
{
    const Money equity_before = ledger_.bank_equity();
    Money net_before;
    for (const auto& a : ledger_.accounts())
        net_before += a.net_position();

    std::vector<Money> profit(firms_.size());
    pay_wages(profit);
    consume(profit);
    charge_interest(profit);
    for (std::size_t i = 0; i < firms_.size(); ++i)
        firms_[i].last_profit = profit[i];

    StepRecord rec;
    classify_and_invest(rec);
    depreciate();
    rec.bankruptcies = resolve_bankruptcies();
    ++t_;

    StepRecord snap = snapshot();
    snap.class_counts = rec.class_counts;
    snap.bankruptcies = rec.bankruptcies;
    Money net_after;
    for (const auto& a : ledger_.accounts())
        net_after += a.net_position();
    snap.flow_residual = (net_after - net_before) + (ledger_.bank_equity() - equity_before);

    for (std::size_t i = 0; i < firms_.size(); ++i)
        prev_net_debt_[i] = net_debt(i);
    return snap;
}

EconomyState init_economy(const EconomyConfig& config) { return EconomyState(config); }

std::vector<StepRecord> run(const EconomyConfig& config)
{
    EconomyState economy(config);
    std::vector<StepRecord> out;
    out.reserve(config.n_steps + 1);
    out.push_back(economy.snapshot());
    for (std::size_t s = 0; s < config.n_steps; ++s)
        out.push_back(economy.step());
    return out;
}

} // namespace finphase
