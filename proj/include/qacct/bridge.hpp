#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "qacct/accounting.hpp"
#include "qacct/quantum.hpp"

namespace qacct::bridge {

using quantum::Complex;
using quantum::OpCounter;
using quantum::StateVector;

/// One-qubit encoding of an account. Amounts stay classical side data; the
/// amplitudes carry only the side probabilities.
struct AccountEncoding {
    Money debit;
    Money credit;
    StateVector state;
};

inline AccountEncoding encode_account(const StochasticTAccount& s) {
    if (std::abs(s.norm() - 1.0) > kAmplitudeNormTol)
        throw Error(ErrorCode::NonNormalizedAmplitudes, "|alpha|^2 + |beta|^2 = " + std::to_string(s.norm()));
    const double scale = 1.0 / std::sqrt(s.norm());
    return {s.account.debit, s.account.credit, StateVector::from_amplitudes({s.alpha * scale, s.beta * scale})};
}

/// Deterministic one-sided account: pure debit is |0>, pure credit is |1>, a
/// zero account is |0>. Two-sided accounts must be decomposed first.
inline AccountEncoding encode_account(const TAccount& account) {
    if (account.debit > Money{} && account.credit > Money{})
        throw Error(ErrorCode::PreconditionViolated,
                    "account \"" + account.name + "\" has both sides; decompose it with balance_via_cnot");
    const Side side = account.credit > Money{} ? Side::Credit : Side::Debit;
    return {account.debit, account.credit, StateVector::basis(1, static_cast<std::uint64_t>(basis_index(side)))};
}

namespace detail {

/// Index of the basis state a deterministic circuit ended in.
inline std::uint64_t read_basis(const StateVector& s) {
    for (std::uint64_t i = 0; i < s.dimension(); ++i)
        if (s.probability(i) > 0.5) return i;
    throw Error(ErrorCode::PreconditionViolated, "register is not in a basis state");
}

/// Two-qubit register: qubit 0 is the control, qubit 1 the side label. Returns
/// the side after CNOT(control -> label).
inline Side cnot_side(bool control, Side side) {
    OpCounter counter;
    const std::uint64_t index = (control ? 1u : 0u) | (static_cast<std::uint64_t>(basis_index(side)) << 1);
    StateVector reg = StateVector::basis(2, index);
    reg = quantum::apply_gate(std::move(reg), quantum::make_gate(quantum::Cnot{}), {0, 1}, counter);
    const std::uint64_t out = read_basis(reg);
    if ((out & 1u) != (control ? 1u : 0u)) throw Error(ErrorCode::PreconditionViolated, "CNOT disturbed its control");
    return side_from_basis(static_cast<int>((out >> 1) & 1u));
}

}  // namespace detail

/// Splits a|b into a normal component on one side plus a balanced component
/// min(a, b)(1|1). The normal component starts labelled debit; a CNOT controlled
/// by the flag [credit > debit] moves it to the credit side.
inline BalanceDecomposition balance_via_cnot(const TAccount& account) {
    const Money a = account.debit;
    const Money b = account.credit;
    if (a == b) return {std::nullopt, Money{}, a};
    const bool credit_heavy = b > a;
    const Side side = detail::cnot_side(credit_heavy, Side::Debit);
    const Money normal = credit_heavy ? b - a : a - b;
    const Money balanced = credit_heavy ? a : b;
    return {side, normal, balanced};
}

struct AdjustmentSplit {
    TAccount kept;
    TAccount twisted;
};

/// a|b = (a - a1)|b + a1|0, then the a1 component is twisted to the opposite
/// side by a CNOT whose control marks it. Symmetric for a credit split.
inline AdjustmentSplit adjustment_via_cnot(const TAccount& account, Money split, Side side) {
    if (split < Money{}) throw Error(ErrorCode::NegativeAmount, "split must be non-negative");
    if (split > account.side(side))
        throw Error(ErrorCode::SplitTooLarge, "cannot split " + std::to_string(split.minor()) + " from " +
                                                  std::to_string(account.side(side).minor()));
    TAccount kept = account;
    kept.side(side) -= split;

    TAccount twisted{account.name, account.cls, Money{}, Money{}};
    const Side kept_side = detail::cnot_side(false, side);
    const Side twisted_side = detail::cnot_side(true, side);
    if (kept_side != side) throw Error(ErrorCode::PreconditionViolated, "CNOT moved an uncontrolled component");
    twisted.side(twisted_side) = split;
    return {kept, twisted};
}

/// Inverse twist: the same amount back on the opposite side.
inline TAccount untwist(const TAccount& twisted) {
    return {twisted.name, twisted.cls, twisted.credit, twisted.debit};
}

inline std::vector<Complex> kron(std::span<const Complex> left, std::span<const Complex> right) {
    std::vector<Complex> out;
    out.reserve(left.size() * right.size());
    for (const auto& l : left)
        for (const auto& r : right) out.push_back(l * r);
    return out;
}

/// max-norm of (k v_i) (x) v_j - v_i (x) (k v_j). Zero up to rounding, which is
/// why a scalar may be moved between tensor factors.
inline double transfer_via_tensor(double k, const StateVector& left, const StateVector& right) {
    std::vector<Complex> scaled_left(left.amplitudes().begin(), left.amplitudes().end());
    std::vector<Complex> scaled_right(right.amplitudes().begin(), right.amplitudes().end());
    for (auto& v : scaled_left) v *= k;
    for (auto& v : scaled_right) v *= k;
    const auto lhs = kron(scaled_left, right.amplitudes());
    const auto rhs = kron(left.amplitudes(), scaled_right);
    double diff = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
    return diff;
}

/// H = rotation * flip, rotation = (1/sqrt2)[[1, 1], [-1, 1]], flip = [[0, 1], [1, 0]].
struct HadamardFactorization {
    RealMatrix rotation;
    RealMatrix flip;

    HadamardFactorization() {
        const double s = 1.0 / std::numbers::sqrt2;
        rotation = RealMatrix{{s, s}, {-s, s}};
        flip = RealMatrix{{0.0, 1.0}, {1.0, 0.0}};
        if (product_error() > 1e-15) throw Error(ErrorCode::PreconditionViolated, "rotation * flip != H");
    }

    double product_error() const {
        const auto h = quantum::make_gate(quantum::Hadamard{}).matrix;
        const RealMatrix p = rotation * flip;
        double err = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) err = std::max(err, std::abs(h(i, j) - p(i, j)));
        return err;
    }
};

inline HadamardFactorization hadamard_factorization() { return {}; }

}  // namespace qacct::bridge
