#ifndef FINPHASE_LEDGER_HPP
#define FINPHASE_LEDGER_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "finphase/money.hpp"

namespace finphase {

/// Dense agent index, 0..N-1 within one ledger.
struct AgentId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(AgentId, AgentId) noexcept = default;
};

struct Account {
    Money deposit;
    Money debt;

    Money net_position() const { return deposit - debt; }

    friend bool operator==(const Account&, const Account&) = default;
};

/// Single-bank double-entry ledger. Every agent holds a deposit and a debt
/// at the bank; the bank's own equity absorbs interest income and write-offs.
///
/// Invariant: sum(deposit - debt) + bank_equity == base_money, exactly.
///
/// Mutating operations validate everything before touching state, so a
/// thrown Error leaves the ledger unchanged.
class Ledger {
public:
    /// Creates `n_agents` empty accounts; all base money starts as bank equity.
    Ledger(std::size_t n_agents, Money base_money);

    /// Rebuilds a ledger from stored state; throws InvalidConfig if the
    /// accounts are negative or the conservation identity does not hold.
    static Ledger restore(std::vector<Account> accounts, Money bank_equity, Money base_money);

    std::size_t size() const noexcept { return accounts_.size(); }
    Money base_money() const noexcept { return base_money_; }
    Money bank_equity() const noexcept { return bank_equity_; }

    const Account& account(AgentId id) const;
    const std::vector<Account>& accounts() const noexcept { return accounts_; }

    void transfer(AgentId from, AgentId to, Money amount);

    /// Creation operator: a matching deposit/debt pair appears on `borrower`.
    void create_loan(AgentId borrower, Money amount);
    void repay_loan(AgentId borrower, Money amount);

    /// Annihilation operator: writes the agent's account off against bank equity.
    void annihilate(AgentId bankrupt);

    /// Moves `amount` of the agent's deposit into bank equity (interest, fees).
    void pay_bank(AgentId payer, Money amount);
    /// Moves `amount` of bank equity into the agent's deposit. Equity may go negative.
    void bank_grant(AgentId payee, Money amount);

    Money net_position(AgentId agent) const;
    Money conservation_residual() const;

    friend bool operator==(const Ledger&, const Ledger&) = default;

private:
    Account& mutable_account(AgentId id);

    std::vector<Account> accounts_;
    Money base_money_;
    Money bank_equity_;
};

// Value-semantic wrappers: return an updated copy, never a partial update.
Ledger transfer(Ledger ledger, AgentId from, AgentId to, Money amount);
Ledger create_loan(Ledger ledger, AgentId borrower, Money amount);
Ledger repay_loan(Ledger ledger, AgentId borrower, Money amount);
Ledger annihilate(Ledger ledger, AgentId bankrupt);
Money net_position(const Ledger& ledger, AgentId agent);
Money conservation_residual(const Ledger& ledger);

/// CSV snapshot: `agent_id,deposit,debt` rows followed by `#bank_equity,<n>`
/// and `#base_money,<n>` trailer lines.
void write_snapshot(std::ostream& os, const Ledger& ledger);
Ledger read_snapshot(std::istream& is);

} // namespace finphase

#endif // FINPHASE_LEDGER_HPP
