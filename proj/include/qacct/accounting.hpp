#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qacct/error.hpp"
#include "qacct/money.hpp"

namespace qacct {

/// A named debit/credit pair, i.e. the vector x|0> + y|1>. Both sides are
/// kept non-negative; a negative balance is expressed on the opposite side.
struct TAccount {
    std::string name;
    AccountClass cls = AccountClass::Asset;
    Money debit;
    Money credit;

    Money side(Side s) const noexcept { return s == Side::Debit ? debit : credit; }
    Money& side(Side s) noexcept { return s == Side::Debit ? debit : credit; }

    bool operator==(const TAccount&) const = default;
};

/// Complexified account: amount x on the debit side with probability |alpha|^2,
/// amount y on the credit side with probability |beta|^2.
struct StochasticTAccount {
    TAccount account;
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};

    double norm() const noexcept { return std::norm(alpha) + std::norm(beta); }
};

struct JournalLine {
    std::string account;
    Side side = Side::Debit;
    Money amount;
};

struct JournalEntry {
    std::string id;
    std::string date;  // YYYY-MM-DD
    std::string memo;
    std::vector<JournalLine> lines;

    Money total(Side s) const noexcept {
        Money sum;
        for (const auto& line : lines)
            if (line.side == s) sum += line.amount;
        return sum;
    }
};

/// Entries are posted in the order they appear; dates need not be sorted.
struct Journal {
    std::vector<JournalEntry> entries;
};

/// Chart of accounts, in insertion order. The order fixes the worksheet basis.
using Chart = std::vector<std::pair<std::string, AccountClass>>;

class Ledger {
public:
    Ledger() = default;

    explicit Ledger(const Chart& chart) {
        for (const auto& [name, cls] : chart) add_account(name, cls);
    }

    const std::vector<TAccount>& accounts() const noexcept { return accounts_; }
    std::size_t size() const noexcept { return accounts_.size(); }
    bool empty() const noexcept { return accounts_.empty(); }

    bool contains(std::string_view name) const { return index_.find(name) != index_.end(); }

    const TAccount* find(std::string_view name) const {
        auto it = index_.find(name);
        return it == index_.end() ? nullptr : &accounts_[it->second];
    }

    const TAccount& at(std::string_view name) const {
        if (const auto* acc = find(name)) return *acc;
        throw Error(ErrorCode::UnknownAccount, "account \"" + std::string(name) + "\" is not in the chart");
    }

    Chart chart() const {
        Chart c;
        c.reserve(accounts_.size());
        for (const auto& a : accounts_) c.emplace_back(a.name, a.cls);
        return c;
    }

    /// Adds a zero account. Re-adding an existing name with the same class is a no-op.
    void add_account(const std::string& name, AccountClass cls) {
        if (auto it = index_.find(name); it != index_.end()) {
            if (accounts_[it->second].cls != cls)
                throw Error(ErrorCode::MalformedEntry, "account \"" + name + "\" declared with two classes");
            return;
        }
        index_.emplace(name, accounts_.size());
        accounts_.push_back(TAccount{name, cls, Money{}, Money{}});
    }

    /// Low-level side update used by the posting operators. Keeps both sides non-negative.
    void adjust(std::string_view name, Side side, Money delta) {
        auto it = index_.find(name);
        if (it == index_.end())
            throw Error(ErrorCode::UnknownAccount, "account \"" + std::string(name) + "\" is not in the chart");
        Money& cell = accounts_[it->second].side(side);
        if (cell + delta < Money{})
            throw Error(ErrorCode::InsufficientAmount,
                        "account \"" + std::string(name) + "\" holds " + std::to_string(cell.minor()) + " on the " +
                            std::string(to_string(side)) + " side");
        cell += delta;
    }

    Money total(Side s) const noexcept {
        Money sum;
        for (const auto& a : accounts_) sum += a.side(s);
        return sum;
    }

    bool operator==(const Ledger& o) const { return accounts_ == o.accounts_; }

private:
    std::vector<TAccount> accounts_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// a|b written as normal * (unit on normal side) + balanced * (1|1).
struct BalanceDecomposition {
    std::optional<Side> normal_side;
    Money normal_amount;
    Money balanced_amount;

    std::pair<Money, Money> recompose() const noexcept {
        Money debit = balanced_amount;
        Money credit = balanced_amount;
        if (normal_side == Side::Debit) debit += normal_amount;
        if (normal_side == Side::Credit) credit += normal_amount;
        return {debit, credit};
    }

    bool operator==(const BalanceDecomposition&) const = default;
};

struct TrialBalanceRow {
    std::string account;
    std::optional<Side> side;
    Money amount;
};

struct TrialBalance {
    std::vector<TrialBalanceRow> rows;
    Money total_debit;
    Money total_credit;

    bool balanced() const noexcept { return total_debit == total_credit; }
};

enum class EquationForm { Basic, Extended };

inline constexpr const char* kIncomeSummary = "Income Summary";

// ---------------------------------------------------------------------------

inline void validate_entry(const JournalEntry& entry, const Ledger& ledger) {
    if (entry.lines.size() < 2)
        throw Error(ErrorCode::MalformedEntry, "entry " + entry.id + " has fewer than two lines");
    for (const auto& line : entry.lines) {
        if (line.amount <= Money{})
            throw Error(ErrorCode::NonPositiveAmount,
                        "entry " + entry.id + " has a non-positive amount on account \"" + line.account + "\"");
        if (!ledger.contains(line.account))
            throw Error(ErrorCode::UnknownAccount,
                        "entry " + entry.id + " references unknown account \"" + line.account + "\"");
    }
    const Money debits = entry.total(Side::Debit);
    const Money credits = entry.total(Side::Credit);
    if (debits != credits)
        throw Error(ErrorCode::UnbalancedEntry, "entry " + entry.id + " debits " + std::to_string(debits.minor()) +
                                                    " != credits " + std::to_string(credits.minor()));
}

inline Ledger post_entry(const JournalEntry& entry, const Ledger& ledger) {
    validate_entry(entry, ledger);
    Ledger out = ledger;
    for (const auto& line : entry.lines) out.adjust(line.account, line.side, line.amount);
    return out;
}

inline void validate_journal(const Journal& journal) {
    std::set<std::string_view> seen;
    for (const auto& e : journal.entries)
        if (!seen.insert(e.id).second) throw Error(ErrorCode::DuplicateEntryId, "entry id " + e.id + " repeats");
}

inline Ledger post_journal(const Journal& journal, const Ledger& ledger) {
    validate_journal(journal);
    Ledger out = ledger;
    for (const auto& e : journal.entries) out = post_entry(e, out);
    return out;
}

inline BalanceDecomposition normal_balance(Money debit, Money credit) noexcept {
    if (debit > credit) return {Side::Debit, debit - credit, credit};
    if (credit > debit) return {Side::Credit, credit - debit, debit};
    return {std::nullopt, Money{}, debit};
}

inline BalanceDecomposition normal_balance(const TAccount& account) noexcept {
    return normal_balance(account.debit, account.credit);
}

inline TrialBalance trial_balance(const Ledger& ledger) {
    TrialBalance tb;
    tb.rows.reserve(ledger.size());
    for (const auto& acc : ledger.accounts()) {
        const auto nb = normal_balance(acc);
        tb.rows.push_back({acc.name, nb.normal_side, nb.normal_amount});
        if (nb.normal_side == Side::Debit) tb.total_debit += nb.normal_amount;
        if (nb.normal_side == Side::Credit) tb.total_credit += nb.normal_amount;
    }
    return tb;
}

/// Net of one account signed by its class's increase side: debit-minus-credit
/// for asset/expense/drawing, credit-minus-debit otherwise.
inline Money signed_balance(const TAccount& acc) noexcept {
    const auto nb = normal_balance(acc);
    Money signed_amount = nb.normal_side == Side::Credit ? -nb.normal_amount : nb.normal_amount;
    return increase_side(acc.cls) == Side::Debit ? signed_amount : -signed_amount;
}

/// Residual of A = L + OE (basic) or A = L + R - E + C - D (extended). Zero
/// means the equation holds.
inline Money verify_accounting_equation(const Ledger& ledger, EquationForm form) {
    std::map<AccountClass, Money> net;
    for (const auto& acc : ledger.accounts()) net[acc.cls] += signed_balance(acc);

    const Money assets = net[AccountClass::Asset];
    const Money liabilities = net[AccountClass::Liability];
    if (form == EquationForm::Extended) {
        return assets - (liabilities + net[AccountClass::Revenue] - net[AccountClass::Expense] +
                         net[AccountClass::Capital] - net[AccountClass::Drawing]);
    }
    // Owner's equity aggregated as one block, credit-minus-debit over all of its accounts.
    Money equity;
    for (const auto& acc : ledger.accounts()) {
        if (acc.cls == AccountClass::Asset || acc.cls == AccountClass::Liability) continue;
        equity += acc.credit - acc.debit;
    }
    return assets - liabilities - equity;
}

inline Ledger transfer(const Ledger& ledger, std::string_view from, std::string_view to, Side side, Money amount) {
    if (amount < Money{}) throw Error(ErrorCode::NegativeAmount, "transfer amount must be non-negative");
    const TAccount& source = ledger.at(from);
    ledger.at(to);
    if (source.side(side) < amount)
        throw Error(ErrorCode::InsufficientAmount, "account \"" + source.name + "\" holds " +
                                                       std::to_string(source.side(side).minor()) + ", cannot move " +
                                                       std::to_string(amount.minor()));
    Ledger out = ledger;
    out.adjust(from, side, -amount);
    out.adjust(to, side, amount);
    return out;
}

struct ClosingResult {
    Ledger ledger;
    Money net_income;
};

/// Closes revenue and expense into an income summary, nets the summary into
/// capital, then closes drawing into capital. Every step is a transfer, except
/// the summary's balanced part which is removed from both sides at once.
inline ClosingResult close_cycle(const Ledger& ledger, std::string_view capital_account) {
    const TAccount* capital = ledger.find(capital_account);
    if (capital == nullptr || capital->cls != AccountClass::Capital)
        throw Error(ErrorCode::MissingCapitalAccount,
                    "\"" + std::string(capital_account) + "\" is not a capital account in the chart");

    Money net_income;
    bool anything_to_close = false;
    for (const auto& acc : ledger.accounts()) {
        if (acc.cls == AccountClass::Revenue) net_income += acc.credit - acc.debit;
        if (acc.cls == AccountClass::Expense) net_income -= acc.debit - acc.credit;
        if (is_temporary(acc.cls) && (acc.debit != Money{} || acc.credit != Money{})) anything_to_close = true;
    }
    if (!anything_to_close) return {ledger, net_income};

    Ledger out = ledger;
    out.add_account(kIncomeSummary, AccountClass::Capital);

    auto sweep = [&out](const std::string& from, std::string_view to) {
        for (Side s : {Side::Debit, Side::Credit}) out = transfer(out, from, to, s, out.at(from).side(s));
    };

    for (const auto& acc : ledger.accounts())
        if (acc.cls == AccountClass::Revenue || acc.cls == AccountClass::Expense) sweep(acc.name, kIncomeSummary);

    const auto summary = normal_balance(out.at(kIncomeSummary));
    out.adjust(kIncomeSummary, Side::Debit, -summary.balanced_amount);
    out.adjust(kIncomeSummary, Side::Credit, -summary.balanced_amount);
    sweep(kIncomeSummary, capital_account);

    for (const auto& acc : ledger.accounts())
        if (acc.cls == AccountClass::Drawing) sweep(acc.name, capital_account);

    return {out, net_income};
}

struct ExpectedSides {
    double debit = 0.0;
    double credit = 0.0;
};

inline constexpr double kAmplitudeNormTol = 1e-9;

inline ExpectedSides expected_sides(const StochasticTAccount& s) {
    if (std::abs(s.norm() - 1.0) > kAmplitudeNormTol)
        throw Error(ErrorCode::NonNormalizedAmplitudes,
                    "|alpha|^2 + |beta|^2 = " + std::to_string(s.norm()) + " for account \"" + s.account.name + "\"");
    return {std::norm(s.alpha) * s.account.debit.to_real(), std::norm(s.beta) * s.account.credit.to_real()};
}

}  // namespace qacct
