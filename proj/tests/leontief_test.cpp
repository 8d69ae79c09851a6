#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "qacct/leontief.hpp"
#include "test_support.hpp"

using namespace qacct;

namespace {

// Laplace expansion; independent of any elimination code.
double det(const RealMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    double sum = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        RealMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = m(i, j);
        sum += (c % 2 ? -1.0 : 1.0) * m(0, c) * det(minor);
    }
    return sum;
}

std::vector<double> cramer(const RealMatrix& a, const std::vector<double>& b) {
    const double d = det(a);
    std::vector<double> x(a.rows());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        RealMatrix m = a;
        for (std::size_t i = 0; i < a.rows(); ++i) m(i, c) = b[i];
        x[c] = det(m) / d;
    }
    return x;
}

// Row-by-row dot products, independent of Matrix::operator*.
double residual_by_hand(const RealMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        r = std::max(r, std::abs(s - b[i]));
    }
    return r;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

}  // namespace

TEST(ClassicalGje, Examples) {
    auto r = classical_gje(RealMatrix{{2, 1, 3}, {1, 1, 2}});
    ASSERT_TRUE(std::holds_alternative<Unique>(r.solution));
    EXPECT_NEAR(std::get<Unique>(r.solution).x[0], 1.0, 1e-12);
    EXPECT_NEAR(std::get<Unique>(r.solution).x[1], 1.0, 1e-12);

    r = classical_gje(RealMatrix{{1, 0, 5}, {0, 1, 7}});
    ASSERT_TRUE(std::holds_alternative<Unique>(r.solution));
    EXPECT_EQ(std::get<Unique>(r.solution).x, (std::vector<double>{5, 7}));

    r = classical_gje(RealMatrix{{1, 1, 1}, {1, 1, 2}});
    EXPECT_TRUE(std::holds_alternative<Inconsistent>(r.solution));
    EXPECT_EQ(kind_name(r.solution), "inconsistent");
}

TEST(ClassicalGje, RayAndHigherKernel) {
    auto r = classical_gje(RealMatrix{{1, 1, 2}, {2, 2, 4}});
    ASSERT_TRUE(std::holds_alternative<OneParameterRay>(r.solution));
    const auto& ray = std::get<OneParameterRay>(r.solution);
    EXPECT_EQ(ray.particular, (std::vector<double>{2, 0}));
    EXPECT_EQ(ray.direction, (std::vector<double>{-1, 1}));

    r = classical_gje(RealMatrix{{1, 1, 1, 3}});
    ASSERT_TRUE(std::holds_alternative<HigherDimKernel>(r.solution));
    EXPECT_EQ(std::get<HigherDimKernel>(r.solution).dimension, 2u);
}

TEST(ClassicalGje, Preconditions) {
    EXPECT_EQ(code_of([] { classical_gje(RealMatrix{}); }), ErrorCode::PreconditionViolated);
    EXPECT_EQ(code_of([] { classical_gje(RealMatrix{{1, 2}}, 0.0); }), ErrorCode::PreconditionViolated);
}

TEST(ClassicalGje, AgreesWithCramerOnRandomSystems) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 7;
        RealMatrix a = qacct::testing::random_matrix(rng, n, n);
        for (std::size_t i = 0; i < n; ++i) a(i, i) += static_cast<double>(n);  // well conditioned
        const auto bm = qacct::testing::random_matrix(rng, 1, n);
        const std::vector<double> b(bm.data().begin(), bm.data().end());
        const auto r = classical_gje(augment(a, b));
        ASSERT_TRUE(std::holds_alternative<Unique>(r.solution));
        const auto& x = std::get<Unique>(r.solution).x;
        ASSERT_LT(max_abs_diff(x, cramer(a, b)), 1e-9);
        ASSERT_LT(residual_by_hand(a, x, b), 1e-8);
    }
}

TEST(ClassicalGje, RrefIsIdempotent) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + trial % 6, cols = 2 + (trial / 6) % 6;
        RealMatrix m = qacct::testing::random_matrix(rng, rows, cols);
        if (trial % 3 == 0 && rows > 1)  // force a dependent row
            for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2.0 * m(0, j);
        const auto once = classical_gje(m);
        const auto twice = classical_gje(once.rref);
        ASSERT_LT((twice.rref - once.rref).max_abs(), 1e-10);
        ASSERT_EQ(twice.pivot_columns, once.pivot_columns);
        ASSERT_EQ(twice.solution.index(), once.solution.index());
    }
}

TEST(SolveClosed, Examples) {
    auto s = solve_closed(IOMatrix(RealMatrix{{0.5, 0.5}, {0.5, 0.5}}));
    EXPECT_NEAR(s.x[0], 0.5, 1e-12);
    EXPECT_NEAR(s.x[1], 0.5, 1e-12);
    s = solve_closed(IOMatrix(RealMatrix{{0, 1}, {1, 0}}));
    EXPECT_NEAR(s.x[0], 0.5, 1e-12);
    EXPECT_NEAR(s.x[1], 0.5, 1e-12);
    s = solve_closed(IOMatrix(RealMatrix{{0.8, 0.3}, {0.2, 0.7}}));
    EXPECT_NEAR(s.x[0], 0.6, 1e-12);
    EXPECT_NEAR(s.x[1], 0.4, 1e-12);
    EXPECT_LT(s.residual_inf, 1e-10);
}

TEST(SolveClosed, Errors) {
    EXPECT_EQ(code_of([] { solve_closed(IOMatrix(RealMatrix{{0.5, 0.5}, {0.4, 0.5}})); }),
              ErrorCode::PreconditionViolated);
    EXPECT_EQ(code_of([] { IOMatrix(RealMatrix{{-0.1, 1}, {1.1, 0}}); }), ErrorCode::PreconditionViolated);
    EXPECT_EQ(code_of([] { IOMatrix(RealMatrix{{1, 0, 0}}); }), ErrorCode::PreconditionViolated);
    // Identity: every vector is a fixed point, kernel dimension 2.
    EXPECT_EQ(code_of([] { solve_closed(IOMatrix(RealMatrix::identity(2))); }), ErrorCode::DegenerateKernel);
}

TEST(SolveClosed, RandomPositiveMatricesHaveOneDimensionalKernel) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const IOMatrix a(qacct::testing::random_column_stochastic(rng, n));
        const auto s = solve_closed(a);
        ASSERT_EQ(s.rref.rank(), n - 1);
        ASSERT_NEAR(std::accumulate(s.x.begin(), s.x.end(), 0.0), 1.0, 1e-12);
        for (double v : s.x) ASSERT_GT(v, 0.0);
        ASSERT_LT(residual_by_hand(a.leontief_matrix(), s.x, std::vector<double>(n, 0.0)), 1e-10);
    }
}

TEST(SolveOpen, Examples) {
    const std::vector<double> d{6, 6};
    auto s = solve_open(IOMatrix(RealMatrix{{0.2, 0.3}, {0.4, 0.1}}), d);
    EXPECT_NEAR(s.x[0], 12.0, 1e-10);
    EXPECT_NEAR(s.x[1], 12.0, 1e-10);
    EXPECT_LT(s.residual_inf, 1e-8);

    const std::vector<double> demand{3, 1, 4};
    s = solve_open(IOMatrix(RealMatrix(3, 3)), demand);
    EXPECT_EQ(s.x, demand);

    s = solve_open(IOMatrix(RealMatrix{{0.2, 0.3}, {0.4, 0.1}}), std::vector<double>{0, 0});
    EXPECT_EQ(s.x, (std::vector<double>{0, 0}));
}

TEST(SolveOpen, Errors) {
    const IOMatrix ok(RealMatrix{{0.2, 0.3}, {0.4, 0.1}});
    EXPECT_EQ(code_of([&] { solve_open(ok, std::vector<double>{1}); }), ErrorCode::PreconditionViolated);
    EXPECT_EQ(code_of([&] { solve_open(ok, std::vector<double>{1, -1}); }), ErrorCode::PreconditionViolated);
    EXPECT_EQ(code_of([] { solve_open(IOMatrix(RealMatrix{{0.5, 0.5}, {0.5, 0.5}}), std::vector<double>{1, 1}); }),
              ErrorCode::PreconditionViolated);
}

TEST(SolveOpen, RandomSubStochasticMatricesArePositiveAndMatchCramer) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const IOMatrix a(qacct::testing::random_sub_stochastic(rng, n));
        std::vector<double> d(n);
        for (auto& v : d) v = u(rng);
        const auto s = solve_open(a, d);
        ASSERT_LT(residual_by_hand(a.leontief_matrix(), s.x, d), 1e-8);
        ASSERT_LT(max_abs_diff(s.x, cramer(a.leontief_matrix(), d)), 1e-8);
        for (double v : s.x) ASSERT_GE(v, -1e-9);
    }
}
