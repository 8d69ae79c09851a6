#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qacct/accounting.hpp"
#include "qacct/leontief.hpp"
#include "qacct/qgje.hpp"
#include "qacct/worksheet.hpp"

namespace qacct::io {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline bool valid_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    auto number = [&](std::size_t pos, std::size_t len, int& out) {
        auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
        return ec == std::errc{} && p == s.data() + pos + len;
    };
    int y = 0, m = 0, d = 0;
    if (!number(0, 4, y) || !number(5, 2, m) || !number(8, 2, d)) return false;
    return std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                       std::chrono::day{static_cast<unsigned>(d)}}
        .ok();
}

inline std::string format_real(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string format_amount(Money m) { return std::to_string(m.minor()); }
inline std::string format_amount(double v) { return format_real(v); }

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view text, std::size_t line_no) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || p != text.data() + text.size())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": \"" + std::string(text) +
                                               "\" is not a number");
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Journal: one JSON object per line.

inline JournalEntry parse_journal_entry(const std::string& text, std::size_t line_no) {
    const std::string where = "journal line " + std::to_string(line_no) + ": ";
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + e.what());
    }
    try {
        JournalEntry entry;
        entry.id = j.at("id").get<std::string>();
        entry.date = j.at("date").get<std::string>();
        if (!detail::valid_iso_date(entry.date)) throw Error(ErrorCode::ParseError, where + "bad date " + entry.date);
        entry.memo = j.value("memo", std::string{});
        for (const auto& line : j.at("lines")) {
            const auto& amount = line.at("amount_minor");
            if (!amount.is_number_integer()) throw Error(ErrorCode::ParseError, where + "amount_minor must be an integer");
            entry.lines.push_back({line.at("account").get<std::string>(),
                                   parse_side(line.at("side").get<std::string>()), Money(amount.get<std::int64_t>())});
        }
        return entry;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, where + e.what());
    }
}

inline Journal read_journal(std::istream& in) {
    Journal journal;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        journal.entries.push_back(parse_journal_entry(line, line_no));
    }
    return journal;
}

inline void write_journal(std::ostream& out, const Journal& journal) {
    for (const auto& e : journal.entries) {
        ordered_json j;
        j["id"] = e.id;
        j["date"] = e.date;
        j["memo"] = e.memo;
        j["lines"] = ordered_json::array();
        for (const auto& l : e.lines)
            j["lines"].push_back({{"account", l.account}, {"side", to_string(l.side)}, {"amount_minor", l.amount.minor()}});
        out << j.dump() << '\n';
    }
}

// ---------------------------------------------------------------------------
// Chart of accounts and ledger snapshots.

inline AccountClass parse_class_or_throw(const ordered_json& value, const std::string& account) {
    std::optional<AccountClass> cls;
    if (value.is_string()) cls = parse_account_class(value.get<std::string>());
    if (!cls) throw Error(ErrorCode::UnclassifiedAccount, "account \"" + account + "\" has no valid class");
    return *cls;
}

inline Chart read_chart(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("chart: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "chart must be a JSON object of name -> class");
    Chart chart;
    for (const auto& [name, value] : j.items()) chart.emplace_back(name, parse_class_or_throw(value, name));
    return chart;
}

inline ordered_json ledger_json(const Ledger& ledger) {
    ordered_json j = ordered_json::object();
    for (const auto& a : ledger.accounts())
        j[a.name] = {{"class", to_string(a.cls)}, {"debit_minor", a.debit.minor()}, {"credit_minor", a.credit.minor()}};
    return j;
}

inline Ledger read_ledger(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("ledger: ") + e.what());
    }
    Ledger ledger;
    try {
        for (const auto& [name, value] : j.items()) {
            ledger.add_account(name, parse_class_or_throw(value.at("class"), name));
            ledger.adjust(name, Side::Debit, Money(value.at("debit_minor").get<std::int64_t>()));
            ledger.adjust(name, Side::Credit, Money(value.at("credit_minor").get<std::int64_t>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("ledger: ") + e.what());
    }
    return ledger;
}

// ---------------------------------------------------------------------------
// CSV reports.

inline void write_trial_balance_csv(std::ostream& out, const TrialBalance& tb) {
    out << "account,normal_side,debit_minor,credit_minor\n";
    for (const auto& r : tb.rows) {
        out << r.account << ',' << (r.side ? to_string(*r.side) : std::string_view("none")) << ',';
        out << (r.side == Side::Debit ? r.amount.minor() : 0) << ',' << (r.side == Side::Credit ? r.amount.minor() : 0)
            << '\n';
    }
    out << "Totals,," << tb.total_debit.minor() << ',' << tb.total_credit.minor() << '\n';
}

inline constexpr std::string_view kWorksheetHeader = "account,tb_d,tb_c,adj_d,adj_c,atb_d,atb_c,is_d,is_c,bs_d,bs_c";

/// Account rows, then the net-income carry line, then column totals.
template <class Amount>
void write_worksheet_csv(std::ostream& out, const BasicWorksheet<Amount>& w) {
    out << kWorksheetHeader << '\n';
    for (const auto& r : w.rows()) {
        out << r.account;
        for (const auto& p : r.pairs) out << ',' << detail::format_amount(p.debit) << ',' << detail::format_amount(p.credit);
        out << '\n';
    }
    const auto line = net_income_line(w);
    out << "Net Income,,,,,,," << detail::format_amount(line.income_statement.debit) << ','
        << detail::format_amount(line.income_statement.credit) << ',' << detail::format_amount(line.balance_sheet.debit)
        << ',' << detail::format_amount(line.balance_sheet.credit) << '\n';
    out << "Totals";
    for (std::size_t p = 0; p < kColumnPairCount; ++p) {
        const auto t = closing_totals(w, static_cast<ColumnPair>(p));
        out << ',' << detail::format_amount(t.debit) << ',' << detail::format_amount(t.credit);
    }
    out << '\n';
}

inline RealMatrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        std::vector<double> row;
        for (auto cell : detail::split(line, ',')) row.push_back(detail::parse_real(cell, line_no));
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": ragged matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "matrix file is empty");
    RealMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

inline std::vector<double> read_vector_csv(std::istream& in) {
    const RealMatrix m = read_matrix_csv(in);
    if (m.rows() != 1) throw Error(ErrorCode::ParseError, "vector file must hold a single line");
    return {m.data().begin(), m.data().end()};
}

// ---------------------------------------------------------------------------
// JSON reports.

inline ordered_json solution_json(const SolutionKind& kind) {
    ordered_json x = nullptr;
    if (const auto* u = std::get_if<Unique>(&kind)) x = u->x;
    if (const auto* r = std::get_if<OneParameterRay>(&kind)) x = r->particular;
    return x;
}

inline std::string_view count_mode_name(CountMode mode) {
    return mode == CountMode::OracleCalls ? "row_operations+oracle_calls" : "row_operations+gate_applications";
}

inline ordered_json qgje_report_json(const QgjeReport& report) {
    ordered_json j;
    j["kind"] = kind_name(report.result.solution);
    j["x"] = solution_json(report.result.solution);
    if (const auto* r = std::get_if<OneParameterRay>(&report.result.solution)) j["direction"] = r->direction;
    j["row_operations"] = report.counter.row_operations;
    j["oracle_calls"] = report.counter.oracle_calls;
    j["gate_applications"] = report.counter.gate_applications;
    j["counted"] = report.counted;
    j["counted_unit"] = count_mode_name(report.count_mode);
    j["bound"] = report.bound;
    j["within_bound"] = report.within_bound;
    j["seed"] = report.seed;
    return j;
}

inline ordered_json leontief_json(const LeontiefSolution& s, const std::optional<QgjeReport>& report = std::nullopt) {
    ordered_json j;
    j["kind"] = kind_name(s.rref.solution);
    j["x"] = s.x;
    j["residual_inf"] = s.residual_inf;
    if (report) {
        const auto r = qgje_report_json(*report);
        for (const char* key : {"row_operations", "oracle_calls", "gate_applications", "counted", "counted_unit",
                                "bound", "within_bound", "seed"})
            j[key] = r[key];
    }
    return j;
}

}  // namespace qacct::io
