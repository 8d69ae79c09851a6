#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "qacct/accounting.hpp"
#include "qacct/matrix.hpp"

namespace qacct {

enum class ColumnPair : std::size_t {
    TrialBalance = 0,
    Adjustments = 1,
    AdjustedTrialBalance = 2,
    IncomeStatement = 3,
    BalanceSheet = 4,
};

inline constexpr std::size_t kColumnPairCount = 5;
inline constexpr std::size_t kCellsPerRow = 2 * kColumnPairCount;

template <class Amount>
struct SidePair {
    Amount debit{};
    Amount credit{};

    Amount& side(Side s) noexcept { return s == Side::Debit ? debit : credit; }
    const Amount& side(Side s) const noexcept { return s == Side::Debit ? debit : credit; }

    bool operator==(const SidePair&) const = default;
};

template <class Amount>
struct WorksheetRow {
    std::string account;
    AccountClass cls = AccountClass::Asset;
    std::array<SidePair<Amount>, kColumnPairCount> pairs{};

    SidePair<Amount>& operator[](ColumnPair p) noexcept { return pairs[static_cast<std::size_t>(p)]; }
    const SidePair<Amount>& operator[](ColumnPair p) const noexcept { return pairs[static_cast<std::size_t>(p)]; }

    bool operator==(const WorksheetRow&) const = default;
};

/// The five-column-pair worksheet. Amount is Money for worksheets built from a
/// ledger and double once a business action has been applied.
///
/// The flattened vector X lists, for each account in chart order, the five
/// pairs in TB, Adj, ATB, IS, BS order with debit before credit.
template <class Amount>
class BasicWorksheet {
public:
    BasicWorksheet() = default;
    explicit BasicWorksheet(std::vector<WorksheetRow<Amount>> rows) : rows_(std::move(rows)) {}

    const std::vector<WorksheetRow<Amount>>& rows() const noexcept { return rows_; }
    std::size_t dimension() const noexcept { return rows_.size() * kCellsPerRow; }

    std::optional<std::size_t> row_index(std::string_view account) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].account == account) return i;
        return std::nullopt;
    }

    const WorksheetRow<Amount>& row(std::string_view account) const {
        if (auto i = row_index(account)) return rows_[*i];
        throw Error(ErrorCode::UnknownAccount, "worksheet has no row \"" + std::string(account) + "\"");
    }

    static std::size_t cell_index(std::size_t row, ColumnPair pair, Side side) noexcept {
        return row * kCellsPerRow + 2 * static_cast<std::size_t>(pair) + (side == Side::Debit ? 0 : 1);
    }

    /// Column totals over account rows only (no net-income line).
    SidePair<Amount> totals(ColumnPair pair) const {
        SidePair<Amount> t;
        for (const auto& r : rows_) {
            t.debit += r[pair].debit;
            t.credit += r[pair].credit;
        }
        return t;
    }

    std::vector<double> flatten() const {
        std::vector<double> x;
        x.reserve(dimension());
        for (const auto& r : rows_)
            for (const auto& p : r.pairs) {
                x.push_back(to_double(p.debit));
                x.push_back(to_double(p.credit));
            }
        return x;
    }

    bool operator==(const BasicWorksheet&) const = default;

private:
    static double to_double(Money m) noexcept { return m.to_real(); }
    static double to_double(double v) noexcept { return v; }

    std::vector<WorksheetRow<Amount>> rows_;
};

using Worksheet = BasicWorksheet<Money>;
using RealWorksheet = BasicWorksheet<double>;

inline RealWorksheet unflatten(const std::vector<WorksheetRow<double>>& layout, std::span<const double> x) {
    if (x.size() != layout.size() * kCellsPerRow)
        throw Error(ErrorCode::DimensionMismatch, "vector length does not match worksheet layout");
    std::vector<WorksheetRow<double>> rows = layout;
    std::size_t k = 0;
    for (auto& r : rows)
        for (auto& p : r.pairs) {
            p.debit = x[k++];
            p.credit = x[k++];
        }
    return RealWorksheet(std::move(rows));
}

/// Income-statement credits minus debits, before the closing plug.
template <class Amount>
Amount net_income(const BasicWorksheet<Amount>& w) {
    const auto t = w.totals(ColumnPair::IncomeStatement);
    return t.credit - t.debit;
}

/// Net-income carry line. Profit is a debit plug on the income statement and a
/// credit plug on the balance sheet; a loss mirrors that.
template <class Amount>
struct NetIncomeLine {
    SidePair<Amount> income_statement;
    SidePair<Amount> balance_sheet;
};

template <class Amount>
NetIncomeLine<Amount> net_income_line(const BasicWorksheet<Amount>& w) {
    const Amount ni = net_income(w);
    NetIncomeLine<Amount> line;
    if (ni >= Amount{}) {
        line.income_statement.debit = ni;
        line.balance_sheet.credit = ni;
    } else {
        line.income_statement.credit = -ni;
        line.balance_sheet.debit = -ni;
    }
    return line;
}

/// Totals including the net-income line for the IS and BS pairs.
template <class Amount>
SidePair<Amount> closing_totals(const BasicWorksheet<Amount>& w, ColumnPair pair) {
    auto t = w.totals(pair);
    if (pair == ColumnPair::IncomeStatement || pair == ColumnPair::BalanceSheet) {
        const auto line = net_income_line(w);
        const auto& plug = pair == ColumnPair::IncomeStatement ? line.income_statement : line.balance_sheet;
        t.debit += plug.debit;
        t.credit += plug.credit;
    }
    return t;
}

/// Lists broken worksheet invariants; empty means valid. Use tol = 0 for Money.
template <class Amount>
std::vector<std::string> check_invariants(const BasicWorksheet<Amount>& w, double tol = 0.0) {
    std::vector<std::string> problems;
    auto differs = [tol](Amount a, Amount b) {
        if constexpr (std::is_same_v<Amount, Money>)
            return a != b;
        else
            return std::abs(a - b) > tol;
    };
    auto negative = [tol](Amount a) {
        if constexpr (std::is_same_v<Amount, Money>)
            return a < Money{};
        else
            return a < -tol;
    };
    for (const auto& r : w.rows())
        for (std::size_t p = 0; p < kColumnPairCount; ++p)
            if (negative(r.pairs[p].debit) || negative(r.pairs[p].credit))
                problems.push_back("negative cell in row " + r.account);

    const auto tb = w.totals(ColumnPair::TrialBalance);
    if (differs(tb.debit, tb.credit)) problems.emplace_back("trial balance does not balance");
    const auto atb = w.totals(ColumnPair::AdjustedTrialBalance);
    if (differs(atb.debit, atb.credit)) problems.emplace_back("adjusted trial balance does not balance");
    const auto is = closing_totals(w, ColumnPair::IncomeStatement);
    if (differs(is.debit, is.credit)) problems.emplace_back("income statement does not balance");
    const auto bs = closing_totals(w, ColumnPair::BalanceSheet);
    if (differs(bs.debit, bs.credit)) problems.emplace_back("balance sheet does not balance");

    for (const auto& r : w.rows()) {
        const bool on_is = r.cls == AccountClass::Revenue || r.cls == AccountClass::Expense;
        const auto& misplaced = on_is ? r[ColumnPair::BalanceSheet] : r[ColumnPair::IncomeStatement];
        if (differs(misplaced.debit, Amount{}) || differs(misplaced.credit, Amount{}))
            problems.push_back("row " + r.account + " is in the wrong statement");
    }
    return problems;
}

inline Worksheet build_worksheet(const Ledger& ledger, const Journal& adjustments) {
    const Ledger adjusted = post_journal(adjustments, Ledger(ledger.chart()));
    const TrialBalance tb = trial_balance(ledger);

    std::vector<WorksheetRow<Money>> rows;
    rows.reserve(ledger.size());
    for (std::size_t i = 0; i < ledger.size(); ++i) {
        const TAccount& acc = ledger.accounts()[i];
        WorksheetRow<Money> row{acc.name, acc.cls, {}};

        const auto& tb_row = tb.rows[i];
        if (tb_row.side) row[ColumnPair::TrialBalance].side(*tb_row.side) = tb_row.amount;

        const TAccount& adj = adjusted.at(acc.name);
        row[ColumnPair::Adjustments] = {adj.debit, adj.credit};

        const Money net = row[ColumnPair::TrialBalance].debit - row[ColumnPair::TrialBalance].credit + adj.debit -
                          adj.credit;
        auto& atb = row[ColumnPair::AdjustedTrialBalance];
        if (net > Money{}) atb.debit = net;
        if (net < Money{}) atb.credit = -net;

        const bool on_is = acc.cls == AccountClass::Revenue || acc.cls == AccountClass::Expense;
        row[on_is ? ColumnPair::IncomeStatement : ColumnPair::BalanceSheet] = atb;
        rows.push_back(std::move(row));
    }
    return Worksheet(std::move(rows));
}

// ---------------------------------------------------------------------------
// Business actions: linear maps X -> AX on the flattened worksheet vector.

struct BusinessAction {
    RealMatrix matrix;

    /// Composite that applies this action first, then `next`.
    BusinessAction then(const BusinessAction& next) const { return {next.matrix * matrix}; }
};

template <class Amount>
RealWorksheet apply_business_action(const BusinessAction& action, const BasicWorksheet<Amount>& w) {
    const auto& a = action.matrix;
    if (a.rows() != a.cols() || a.rows() != w.dimension())
        throw Error(ErrorCode::DimensionMismatch, "action is " + std::to_string(a.rows()) + "x" +
                                                      std::to_string(a.cols()) + ", worksheet vector has " +
                                                      std::to_string(w.dimension()) + " cells");
    std::vector<WorksheetRow<double>> layout;
    layout.reserve(w.rows().size());
    for (const auto& r : w.rows()) layout.push_back({r.account, r.cls, {}});
    const auto x = w.flatten();
    return unflatten(layout, a * std::span<const double>(x));
}

template <class Amount>
BusinessAction identity_action(const BasicWorksheet<Amount>& w) {
    return {RealMatrix::identity(w.dimension())};
}

/// Moves the whole content of one cell to the same cell of another account.
template <class Amount>
BusinessAction move_cell_action(const BasicWorksheet<Amount>& w, std::string_view from, std::string_view to,
                                ColumnPair pair, Side side) {
    const auto src = w.row_index(from);
    const auto dst = w.row_index(to);
    if (!src || !dst) throw Error(ErrorCode::UnknownAccount, "move between unknown worksheet rows");
    RealMatrix m = RealMatrix::identity(w.dimension());
    const std::size_t i = BasicWorksheet<Amount>::cell_index(*src, pair, side);
    const std::size_t j = BasicWorksheet<Amount>::cell_index(*dst, pair, side);
    if (i == j) return {m};
    m(i, i) = 0.0;
    m(j, i) = 1.0;
    return {m};
}

/// Permutation exchanging every cell of two account rows.
template <class Amount>
BusinessAction swap_rows_action(const BasicWorksheet<Amount>& w, std::string_view a, std::string_view b) {
    const auto ra = w.row_index(a);
    const auto rb = w.row_index(b);
    if (!ra || !rb) throw Error(ErrorCode::UnknownAccount, "swap between unknown worksheet rows");
    RealMatrix m = RealMatrix::identity(w.dimension());
    for (std::size_t c = 0; c < kCellsPerRow; ++c) {
        const std::size_t i = *ra * kCellsPerRow + c;
        const std::size_t j = *rb * kCellsPerRow + c;
        m(i, i) = m(j, j) = 0.0;
        m(i, j) = m(j, i) = 1.0;
    }
    return {m};
}

/// Closing entries on the trial-balance pair as a product of cell moves:
/// revenue and expense into the income summary (or straight into capital when
/// the worksheet has no summary row), summary into capital, drawing into capital.
template <class Amount>
BusinessAction closing_action(const BasicWorksheet<Amount>& w, std::string_view capital) {
    const auto cap = w.row_index(capital);
    if (!cap || w.rows()[*cap].cls != AccountClass::Capital)
        throw Error(ErrorCode::MissingCapitalAccount, "\"" + std::string(capital) + "\" is not a capital row");
    const bool has_summary = w.row_index(kIncomeSummary).has_value();
    const std::string_view summary = has_summary ? std::string_view(kIncomeSummary) : capital;

    BusinessAction action = identity_action(w);
    auto sweep = [&](std::string_view from, std::string_view to) {
        for (Side s : {Side::Debit, Side::Credit})
            action = action.then(move_cell_action(w, from, to, ColumnPair::TrialBalance, s));
    };
    for (const auto& r : w.rows())
        if (r.cls == AccountClass::Revenue || r.cls == AccountClass::Expense) sweep(r.account, summary);
    if (has_summary) sweep(kIncomeSummary, capital);
    for (const auto& r : w.rows())
        if (r.cls == AccountClass::Drawing) sweep(r.account, capital);
    return action;
}

}  // namespace qacct
