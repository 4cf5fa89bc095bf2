#include "finphase/ledger.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace finphase {

namespace {

void require_nonnegative(Money amount)
{
    if (amount < Money{})
        throw Error(ErrorCode::NegativeAmount, "amount " + to_string(amount) + " is negative");
}

} // namespace

Ledger::Ledger(std::size_t n_agents, Money base_money)
    : accounts_(n_agents), base_money_(base_money), bank_equity_(base_money)
{
    if (n_agents > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorCode::InvalidConfig, "too many agents");
}

Ledger Ledger::restore(std::vector<Account> accounts, Money bank_equity, Money base_money)
{
    Ledger out(0, base_money);
    Money total = bank_equity;
    for (const auto& a : accounts) {
        if (a.deposit < Money{} || a.debt < Money{})
            throw Error(ErrorCode::InvalidConfig, "negative deposit or debt in stored ledger");
        total += a.net_position();
    }
    if (total != base_money)
        throw Error(ErrorCode::InvalidConfig,
                    "stored ledger violates conservation (residual " + to_string(total - base_money) + ")");
    out.accounts_ = std::move(accounts);
    out.bank_equity_ = bank_equity;
    return out;
}

const Account& Ledger::account(AgentId id) const
{
    if (id.value >= accounts_.size())
        throw Error(ErrorCode::UnknownAgent, "agent " + std::to_string(id.value));
    return accounts_[id.value];
}

Account& Ledger::mutable_account(AgentId id)
{
    if (id.value >= accounts_.size())
        throw Error(ErrorCode::UnknownAgent, "agent " + std::to_string(id.value));
    return accounts_[id.value];
}

void Ledger::transfer(AgentId from, AgentId to, Money amount)
{
    auto& src = mutable_account(from);
    auto& dst = mutable_account(to);
    if (from == to)
        throw Error(ErrorCode::SelfTransfer, "agent " + std::to_string(from.value));
    require_nonnegative(amount);
    if (src.deposit < amount)
        throw Error(ErrorCode::InsufficientFunds,
                    "agent " + std::to_string(from.value) + " holds " + to_string(src.deposit) +
                        ", needs " + to_string(amount));
    const Money new_dst = dst.deposit + amount;
    src.deposit -= amount;
    dst.deposit = new_dst;
}

void Ledger::create_loan(AgentId borrower, Money amount)
{
    auto& acc = mutable_account(borrower);
    require_nonnegative(amount);
    const Money deposit = acc.deposit + amount;
    const Money debt = acc.debt + amount;
    acc.deposit = deposit;
    acc.debt = debt;
}

void Ledger::repay_loan(AgentId borrower, Money amount)
{
    auto& acc = mutable_account(borrower);
    require_nonnegative(amount);
    if (acc.debt < amount)
        throw Error(ErrorCode::NoSuchDebt,
                    "agent " + std::to_string(borrower.value) + " owes " + to_string(acc.debt));
    if (acc.deposit < amount)
        throw Error(ErrorCode::InsufficientFunds,
                    "agent " + std::to_string(borrower.value) + " holds " + to_string(acc.deposit));
    acc.deposit -= amount;
    acc.debt -= amount;
}

void Ledger::annihilate(AgentId bankrupt)
{
    auto& acc = mutable_account(bankrupt);
    const Money equity = bank_equity_ + acc.net_position();
    bank_equity_ = equity;
    acc = Account{};
}

void Ledger::pay_bank(AgentId payer, Money amount)
{
    auto& acc = mutable_account(payer);
    require_nonnegative(amount);
    if (acc.deposit < amount)
        throw Error(ErrorCode::InsufficientFunds,
                    "agent " + std::to_string(payer.value) + " holds " + to_string(acc.deposit));
    const Money equity = bank_equity_ + amount;
    acc.deposit -= amount;
    bank_equity_ = equity;
}

void Ledger::bank_grant(AgentId payee, Money amount)
{
    auto& acc = mutable_account(payee);
    require_nonnegative(amount);
    const Money deposit = acc.deposit + amount;
    const Money equity = bank_equity_ - amount;
    acc.deposit = deposit;
    bank_equity_ = equity;
}

Money Ledger::net_position(AgentId agent) const { return account(agent).net_position(); }

Money Ledger::conservation_residual() const
{
    Money total = bank_equity_;
    for (const auto& a : accounts_)
        total += a.net_position();
    return total - base_money_;
}

Ledger transfer(Ledger ledger, AgentId from, AgentId to, Money amount)
{
    ledger.transfer(from, to, amount);
    return ledger;
}

Ledger create_loan(Ledger ledger, AgentId borrower, Money amount)
{
    ledger.create_loan(borrower, amount);
    return ledger;
}

Ledger repay_loan(Ledger ledger, AgentId borrower, Money amount)
{
    ledger.repay_loan(borrower, amount);
    return ledger;
}

Ledger annihilate(Ledger ledger, AgentId bankrupt)
{
    ledger.annihilate(bankrupt);
    return ledger;
}

Money net_position(const Ledger& ledger, AgentId agent) { return ledger.net_position(agent); }

Money conservation_residual(const Ledger& ledger) { return ledger.conservation_residual(); }

void write_snapshot(std::ostream& os, const Ledger& ledger)
{
    os << "agent_id,deposit,debt\n";
    const auto& accounts = ledger.accounts();
    for (std::size_t i = 0; i < accounts.size(); ++i)
        os << i << ',' << accounts[i].deposit << ',' << accounts[i].debt << '\n';
    os << "#bank_equity," << ledger.bank_equity() << '\n';
    os << "#base_money," << ledger.base_money() << '\n';
}

Ledger read_snapshot(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) -> Error {
        return Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + why);
    };
    auto parse_int = [&](const std::string& field) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(field, &pos);
        } catch (const std::exception&) {
            throw fail("not an integer: '" + field + "'");
        }
        if (pos != field.size())
            throw fail("not an integer: '" + field + "'");
        return static_cast<Money::rep>(v);
    };

    if (!std::getline(is, line) || (++line_no, line != "agent_id,deposit,debt"))
        throw fail("expected header agent_id,deposit,debt");

    std::vector<Account> accounts;
    bool have_equity = false, have_base = false;
    Money equity, base;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(f);
        if (line[0] == '#') {
            if (fields.size() != 2)
                throw fail("malformed trailer");
            if (fields[0] == "#bank_equity") {
                equity = Money(parse_int(fields[1]));
                have_equity = true;
            } else if (fields[0] == "#base_money") {
                base = Money(parse_int(fields[1]));
                have_base = true;
            } else {
                throw fail("unknown trailer " + fields[0]);
            }
            continue;
        }
        if (have_equity || have_base)
            throw fail("account row after trailer");
        if (fields.size() != 3)
            throw fail("expected 3 fields");
        if (parse_int(fields[0]) != static_cast<Money::rep>(accounts.size()))
            throw fail("agent ids must be dense and ordered");
        accounts.push_back({Money(parse_int(fields[1])), Money(parse_int(fields[2]))});
    }
    if (!have_equity || !have_base)
        throw fail("missing #bank_equity or #base_money trailer");
    return Ledger::restore(std::move(accounts), equity, base);
}

} // namespace finphase
