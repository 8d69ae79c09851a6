#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "qacct/error.hpp"

namespace qacct {

/// Exact amount in minor currency units (cents). Arithmetic never rounds.
class Money {
public:
    constexpr Money() = default;
    constexpr explicit Money(std::int64_t minor) : minor_(minor) {}

    constexpr std::int64_t minor() const noexcept { return minor_; }
    constexpr double to_real() const noexcept { return static_cast<double>(minor_); }

    constexpr Money operator+(Money o) const noexcept { return Money(minor_ + o.minor_); }
    constexpr Money operator-(Money o) const noexcept { return Money(minor_ - o.minor_); }
    constexpr Money operator-() const noexcept { return Money(-minor_); }
    constexpr Money& operator+=(Money o) noexcept { minor_ += o.minor_; return *this; }
    constexpr Money& operator-=(Money o) noexcept { minor_ -= o.minor_; return *this; }

    constexpr auto operator<=>(const Money&) const = default;

private:
    std::int64_t minor_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Money m) { return os << m.minor(); }

enum class Side { Debit, Credit };

constexpr Side opposite(Side s) noexcept { return s == Side::Debit ? Side::Credit : Side::Debit; }

// Debit is basis state |0>, credit is |1>.
constexpr int basis_index(Side s) noexcept { return s == Side::Debit ? 0 : 1; }
constexpr Side side_from_basis(int bit) noexcept { return bit == 0 ? Side::Debit : Side::Credit; }

constexpr std::string_view to_string(Side s) noexcept { return s == Side::Debit ? "debit" : "credit"; }

inline Side parse_side(std::string_view text) {
    if (text == "debit") return Side::Debit;
    if (text == "credit") return Side::Credit;
    throw Error(ErrorCode::ParseError, "side must be \"debit\" or \"credit\", got \"" + std::string(text) + "\"");
}

enum class AccountClass { Asset, Liability, Capital, Revenue, Expense, Drawing };

/// Temporary accounts are zeroed when the cycle is closed.
constexpr bool is_temporary(AccountClass c) noexcept {
    return c == AccountClass::Revenue || c == AccountClass::Expense || c == AccountClass::Drawing;
}

/// Side on which an increase is recorded for the class.
constexpr Side increase_side(AccountClass c) noexcept {
    switch (c) {
        case AccountClass::Asset:
        case AccountClass::Expense:
        case AccountClass::Drawing:
            return Side::Debit;
        default:
            return Side::Credit;
    }
}

constexpr std::string_view to_string(AccountClass c) noexcept {
    switch (c) {
        case AccountClass::Asset: return "asset";
        case AccountClass::Liability: return "liability";
        case AccountClass::Capital: return "capital";
        case AccountClass::Revenue: return "revenue";
        case AccountClass::Expense: return "expense";
        case AccountClass::Drawing: return "drawing";
    }
    return "unknown";
}

inline std::optional<AccountClass> parse_account_class(std::string_view text) {
    if (text == "asset") return AccountClass::Asset;
    if (text == "liability") return AccountClass::Liability;
    if (text == "capital") return AccountClass::Capital;
    if (text == "revenue") return AccountClass::Revenue;
    if (text == "expense") return AccountClass::Expense;
    if (text == "drawing") return AccountClass::Drawing;
    return std::nullopt;
}

}  // namespace qacct
