#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qacct/error.hpp"
#include "qacct/matrix.hpp"

namespace qacct {

inline constexpr double kDefaultPivotTol = 1e-10;

struct Unique {
    std::vector<double> x;
};

/// particular + t * direction. For homogeneous systems particular is zero.
struct OneParameterRay {
    std::vector<double> particular;
    std::vector<double> direction;
};

struct Inconsistent {};

struct HigherDimKernel {
    std::size_t dimension = 0;
};

using SolutionKind = std::variant<Unique, OneParameterRay, Inconsistent, HigherDimKernel>;

inline std::string_view kind_name(const SolutionKind& kind) {
    static constexpr std::string_view names[] = {"unique", "one_parameter_ray", "inconsistent", "higher_dim_kernel"};
    return names[kind.index()];
}

/// Reduced row-echelon form of an augmented matrix [coefficients | rhs].
struct RrefResult {
    RealMatrix rref;
    std::vector<std::size_t> pivot_columns;
    SolutionKind solution;

    std::size_t rank() const noexcept { return pivot_columns.size(); }
};

namespace detail {

inline void check_augmented(const RealMatrix& m, double tol) {
    if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorCode::PreconditionViolated, "empty augmented matrix");
    if (!(tol > 0.0)) throw Error(ErrorCode::PreconditionViolated, "pivot tolerance must be positive");
}

/// Reads the solution structure off a matrix already in RREF. Rows below the
/// rank must have zero coefficients.
inline RrefResult classify(RealMatrix rref, std::vector<std::size_t> pivots, double tol) {
    const std::size_t unknowns = rref.cols() - 1;
    const std::size_t rhs = unknowns;
    const std::size_t rank = pivots.size();

    bool consistent = true;
    for (std::size_t r = rank; r < rref.rows(); ++r) {
        if (std::abs(rref(r, rhs)) > tol)
            consistent = false;
        else
            rref(r, rhs) = 0.0;
    }

    SolutionKind kind;
    if (!consistent) {
        kind = Inconsistent{};
    } else if (rank == unknowns) {
        std::vector<double> x(unknowns, 0.0);
        for (std::size_t k = 0; k < rank; ++k) x[pivots[k]] = rref(k, rhs);
        kind = Unique{std::move(x)};
    } else if (unknowns - rank == 1) {
        std::size_t free_col = 0;
        while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
        std::vector<double> particular(unknowns, 0.0);
        std::vector<double> direction(unknowns, 0.0);
        direction[free_col] = 1.0;
        for (std::size_t k = 0; k < rank; ++k) {
            particular[pivots[k]] = rref(k, rhs);
            direction[pivots[k]] = -rref(k, free_col);
        }
        kind = OneParameterRay{std::move(particular), std::move(direction)};
    } else {
        kind = HigherDimKernel{unknowns - rank};
    }
    return {std::move(rref), std::move(pivots), std::move(kind)};
}

}  // namespace detail

/// Gauss-Jordan elimination with first-above-tolerance partial pivoting. The
/// last column is the right-hand side and is never pivoted on.
inline RrefResult classical_gje(RealMatrix m, double tol = kDefaultPivotTol) {
    detail::check_augmented(m, tol);
    const std::size_t unknowns = m.cols() - 1;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < unknowns && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && std::abs(m(p, col)) <= tol) ++p;
        if (p == m.rows()) {
            for (std::size_t r = row; r < m.rows(); ++r) m(r, col) = 0.0;
            continue;
        }
        m.swap_rows(row, p);
        const double pivot = m(row, col);
        for (double& v : m.row(row)) v /= pivot;
        m(row, col) = 1.0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            const double f = m(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
            m(i, col) = 0.0;
        }
        pivots.push_back(col);
        ++row;
    }
    return detail::classify(std::move(m), std::move(pivots), tol);
}

struct ClassicalGje {
    RrefResult operator()(const RealMatrix& augmented, double tol) const { return classical_gje(augmented, tol); }
};

template <class S>
concept GjeSolver = std::invocable<S&, const RealMatrix&, double> &&
                    std::same_as<std::invoke_result_t<S&, const RealMatrix&, double>, RrefResult>;

inline RealMatrix augment(const RealMatrix& a, std::span<const double> b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length differs from rows");
    RealMatrix m(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        m(i, a.cols()) = b[i];
    }
    return m;
}

/// ||A x - b||_inf.
inline double residual_inf(const RealMatrix& a, std::span<const double> x, std::span<const double> b) {
    const auto ax = a * x;
    return max_abs_diff(ax, b);
}

// ---------------------------------------------------------------------------
// Input-output models.

/// Consumption coefficients: entry (i, j) is the input of good i used per unit
/// of good j. Square with non-negative entries.
class IOMatrix {
public:
    explicit IOMatrix(RealMatrix coefficients) : a_(std::move(coefficients)) {
        if (a_.rows() == 0 || a_.rows() != a_.cols())
            throw Error(ErrorCode::PreconditionViolated, "input-output matrix must be square and non-empty");
        for (double v : a_.data())
            if (!(v >= 0.0)) throw Error(ErrorCode::PreconditionViolated, "input-output entries must be >= 0");
    }

    const RealMatrix& coefficients() const noexcept { return a_; }
    std::size_t size() const noexcept { return a_.rows(); }

    double column_sum(std::size_t j) const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < a_.rows(); ++i) s += a_(i, j);
        return s;
    }

    /// I - A.
    RealMatrix leontief_matrix() const { return RealMatrix::identity(size()) - a_; }

private:
    RealMatrix a_;
};

struct LeontiefSolution {
    std::vector<double> x;
    double residual_inf = 0.0;
    RrefResult rref;
};

inline constexpr double kColumnStochasticTol = 1e-9;
inline constexpr double kSubStochasticMargin = 1e-12;

/// Closed model AX = X: the normalized (sum 1) generator of ker(I - A).
template <GjeSolver Solver = ClassicalGje>
LeontiefSolution solve_closed(const IOMatrix& a, double tol = kDefaultPivotTol, Solver&& solver = {}) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (std::abs(a.column_sum(j) - 1.0) > kColumnStochasticTol)
            throw Error(ErrorCode::PreconditionViolated,
                        "column " + std::to_string(j) + " sums to " + std::to_string(a.column_sum(j)) + ", not 1");

    const RealMatrix lhs = a.leontief_matrix();
    const std::vector<double> zero(a.size(), 0.0);
    RrefResult rref = solver(augment(lhs, zero), tol);

    const auto* ray = std::get_if<OneParameterRay>(&rref.solution);
    if (ray == nullptr)
        throw Error(ErrorCode::DegenerateKernel,
                    "expected a one-parameter kernel, got " + std::string(kind_name(rref.solution)));
    const double total = std::accumulate(ray->direction.begin(), ray->direction.end(), 0.0);
    if (std::abs(total) <= tol) throw Error(ErrorCode::DegenerateKernel, "kernel direction sums to zero");

    std::vector<double> x = ray->direction;
    for (double& v : x) v /= total;
    const double res = residual_inf(lhs, x, zero);
    return {std::move(x), res, std::move(rref)};
}

/// Open model (I - A)X = D, solved by elimination on [I - A | D].
template <GjeSolver Solver = ClassicalGje>
LeontiefSolution solve_open(const IOMatrix& a, std::span<const double> demand, double tol = kDefaultPivotTol,
                            Solver&& solver = {}) {
    if (demand.size() != a.size())
        throw Error(ErrorCode::PreconditionViolated, "demand vector length differs from matrix size");
    for (double d : demand)
        if (!(d >= 0.0)) throw Error(ErrorCode::PreconditionViolated, "demand entries must be >= 0");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a.column_sum(j) < 1.0 - kSubStochasticMargin))
            throw Error(ErrorCode::PreconditionViolated,
                        "column " + std::to_string(j) + " sums to " + std::to_string(a.column_sum(j)) + ", not < 1");

    const RealMatrix lhs = a.leontief_matrix();
    RrefResult rref = solver(augment(lhs, demand), tol);
    const auto* unique = std::get_if<Unique>(&rref.solution);
    if (unique == nullptr)
        throw Error(ErrorCode::SingularSystem, "I - A is numerically singular (" +
                                                   std::string(kind_name(rref.solution)) + ")");
    std::vector<double> x = unique->x;
    const double res = residual_inf(lhs, x, demand);
    return {std::move(x), res, std::move(rref)};
}

}  // namespace qacct
