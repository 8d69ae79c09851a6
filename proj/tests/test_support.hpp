#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qacct/accounting.hpp"
#include "qacct/matrix.hpp"

namespace qacct::testing {

inline Chart sample_chart() {
    return {{"Cash", AccountClass::Asset},          {"Receivables", AccountClass::Asset},
            {"Liabilities", AccountClass::Liability}, {"Capital", AccountClass::Capital},
            {"Revenue", AccountClass::Revenue},     {"Expense", AccountClass::Expense},
            {"Drawing", AccountClass::Drawing}};
}

inline JournalEntry entry(std::string id, std::vector<JournalLine> lines) {
    return {std::move(id), "2024-01-31", "", std::move(lines)};
}

inline JournalLine dr(std::string account, std::int64_t amount) { return {std::move(account), Side::Debit, Money(amount)}; }
inline JournalLine cr(std::string account, std::int64_t amount) { return {std::move(account), Side::Credit, Money(amount)}; }

/// Balanced entry with 2..6 lines over the chart's accounts.
inline JournalEntry random_balanced_entry(std::mt19937_64& rng, const Chart& chart, const std::string& id) {
    std::uniform_int_distribution<int> line_count(2, 6);
    std::uniform_int_distribution<std::size_t> pick(0, chart.size() - 1);
    std::uniform_int_distribution<std::int64_t> amount(1, 1'000'000);

    const int lines = line_count(rng);
    const int debits = std::uniform_int_distribution<int>(1, lines - 1)(rng);
    const int credits = lines - debits;

    std::vector<std::int64_t> d(static_cast<std::size_t>(debits));
    for (auto& v : d) v = amount(rng);
    std::int64_t total = 0;
    for (auto v : d) total += v;
    // Split the same total over the credit lines, each at least 1.
    while (total < credits) {
        d.front() += 1;
        ++total;
    }
    std::vector<std::int64_t> c(static_cast<std::size_t>(credits), 1);
    std::int64_t remaining = total - credits;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        const std::int64_t share = std::uniform_int_distribution<std::int64_t>(0, remaining)(rng);
        c[i] += share;
        remaining -= share;
    }
    c.back() += remaining;

    JournalEntry e{id, "2024-02-29", "random", {}};
    for (auto v : d) e.lines.push_back({chart[pick(rng)].first, Side::Debit, Money(v)});
    for (auto v : c) e.lines.push_back({chart[pick(rng)].first, Side::Credit, Money(v)});
    return e;
}

inline Journal random_journal(std::mt19937_64& rng, const Chart& chart, int entries) {
    Journal j;
    for (int i = 0; i < entries; ++i) j.entries.push_back(random_balanced_entry(rng, chart, "e" + std::to_string(i)));
    return j;
}

inline RealMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double lo = -1.0,
                                double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    RealMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = u(rng);
    return m;
}

/// Strictly positive columns normalized to sum 1.
inline RealMatrix random_column_stochastic(std::mt19937_64& rng, std::size_t n) {
    RealMatrix a = random_matrix(rng, n, n, 0.05, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a(i, j);
        for (std::size_t i = 0; i < n; ++i) a(i, j) /= s;
    }
    return a;
}

/// Non-negative columns scaled to sum to a random value in [0.1, 0.9].
inline RealMatrix random_sub_stochastic(std::mt19937_64& rng, std::size_t n) {
    RealMatrix a = random_column_stochastic(rng, n);
    std::uniform_real_distribution<double> target(0.1, 0.9);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = target(rng);
        for (std::size_t i = 0; i < n; ++i) a(i, j) *= t;
    }
    return a;
}

}  // namespace qacct::testing
