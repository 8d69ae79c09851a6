#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qacct/leontief.hpp"
#include "qacct/quantum.hpp"

namespace qacct {

using quantum::OpCounter;

enum class CountMode { OracleCalls, GateApplications };

struct QgjeConfig {
    double pivot_tol = kDefaultPivotTol;
    std::uint64_t seed = 0;
    CountMode count_mode = CountMode::OracleCalls;
};

struct QgjeReport {
    RrefResult result;
    OpCounter counter;
    double bound = 0.0;
    std::uint64_t counted = 0;  // row_operations + the count_mode quantity
    bool within_bound = false;
    std::uint64_t seed = 0;
    CountMode count_mode = CountMode::OracleCalls;
};

/// N(N-1)(2N+1)/3 + floor(sqrt2 ((sqrt2)^N - 1) / (sqrt2 - 1)). Only the Grover
/// term is floored; the elimination term stays real.
inline double op_bound(std::size_t n) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "op_bound needs N >= 1");
    const double N = static_cast<double>(n);
    const double elimination = N * (N - 1.0) * (2.0 * N + 1.0) / 3.0;
    const double r2 = std::numbers::sqrt2;
    const double search = std::floor(r2 * (std::pow(r2, N) - 1.0) / (r2 - 1.0));
    return elimination + search;
}

/// First term of op_bound alone: the budget for scales and eliminations.
inline double elimination_bound(std::size_t n) {
    const double N = static_cast<double>(n);
    return N * (N - 1.0) * (2.0 * N + 1.0) / 3.0;
}

/// Grover search for a row whose entry exceeds tol. The slice is padded to the
/// next power of two with unmarked entries. A miss is confirmed by a classical
/// scan charged at one oracle call per entry; the scan may still find a pivot.
inline std::optional<std::size_t> grover_pivot(std::span<const double> column, double tol, quantum::Rng& rng,
                                               OpCounter& counter) {
    if (column.empty()) throw Error(ErrorCode::PreconditionViolated, "empty pivot column");
    int bits = 0;
    while ((std::size_t{1} << bits) < column.size()) ++bits;

    const quantum::BoolOracle oracle{bits, [column, tol](std::uint64_t j) {
                                         return j < column.size() && std::abs(column[j]) > tol;
                                     }};
    if (auto found = quantum::try_grover_search(oracle, std::nullopt, rng, counter))
        return static_cast<std::size_t>(*found);

    counter.oracle_calls += column.size();
    for (std::size_t j = 0; j < column.size(); ++j)
        if (std::abs(column[j]) > tol) return j;
    return std::nullopt;
}

/// Gauss-Jordan elimination with Grover pivot search. Forward pass: find a
/// pivot in the active block, swap it up, scale to a leading 1, clear the
/// entries below it, shrink the block. Backward pass: clear the entries above
/// each pivot from the last pivot up. Scales and eliminations that would be
/// no-ops (pivot already 1, entry already 0) are skipped and not counted.
inline QgjeReport quantum_gje(RealMatrix m, const QgjeConfig& config = {}) {
    detail::check_augmented(m, config.pivot_tol);
    const double tol = config.pivot_tol;
    const std::size_t unknowns = m.cols() - 1;

    quantum::Rng rng(config.seed);
    OpCounter counter;
    std::vector<std::size_t> pivots;
    std::vector<double> slice;

    auto eliminate = [&](std::size_t target, std::size_t source, std::size_t col) {
        const double f = m(target, col);
        if (f == 0.0) return;
        for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) -= f * m(source, j);
        m(target, col) = 0.0;
        ++counter.row_operations;
    };

    std::size_t row = 0;
    for (std::size_t col = 0; col < unknowns && row < m.rows(); ++col) {
        slice.clear();
        for (std::size_t r = row; r < m.rows(); ++r) slice.push_back(m(r, col));
        const auto hit = grover_pivot(slice, tol, rng, counter);
        if (!hit) {
            for (std::size_t r = row; r < m.rows(); ++r) m(r, col) = 0.0;
            continue;
        }
        m.swap_rows(row, row + *hit);
        const double pivot = m(row, col);
        if (pivot != 1.0) {
            for (double& v : m.row(row)) v /= pivot;
            m(row, col) = 1.0;
            ++counter.row_operations;
        }
        for (std::size_t i = row + 1; i < m.rows(); ++i) eliminate(i, row, col);
        pivots.push_back(col);
        ++row;
    }

    for (std::size_t k = pivots.size(); k-- > 0;)
        for (std::size_t i = 0; i < k; ++i) eliminate(i, k, pivots[k]);

    QgjeReport report;
    report.result = detail::classify(std::move(m), std::move(pivots), tol);
    report.counter = counter;
    report.bound = op_bound(report.result.rref.rows());
    report.counted = counter.row_operations +
                     (config.count_mode == CountMode::OracleCalls ? counter.oracle_calls : counter.gate_applications);
    report.within_bound = static_cast<double>(report.counted) <= std::ceil(report.bound);
    report.seed = config.seed;
    report.count_mode = config.count_mode;
    return report;
}

/// Adapter so the Leontief solvers can run on the quantum engine. Keeps the
/// report of the most recent solve.
struct QuantumGje {
    QgjeConfig config;
    std::optional<QgjeReport> last_report;

    RrefResult operator()(const RealMatrix& augmented, double tol) {
        QgjeConfig c = config;
        c.pivot_tol = tol;
        last_report = quantum_gje(augmented, c);
        return last_report->result;
    }
};

}  // namespace qacct
