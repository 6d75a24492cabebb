#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "polya/errors.hpp"
#include "polya/linalg.hpp"
#include "polya/toeplitz.hpp"
#include "polya/weights.hpp"

using namespace polya;

namespace {
ToeplitzSpec spec(int n, int L, std::vector<cplx> c) { return {n, L, std::move(c)}; }

// cofactor expansion oracle, independent of LU
cplx cofactor_det(const std::vector<std::vector<cplx>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    cplx acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<cplx>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<cplx> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        acc += (c % 2 ? -1.0 : 1.0) * a[0][c] * cofactor_det(minor);
    }
    return acc;
}
}  // namespace

TEST(BandedToeplitz, Examples) {
    EXPECT_LT(std::abs(banded_toeplitz_det(spec(2, 1, {1.0, 2.0, 1.0})) - 3.0), 1e-14);
    const cplx a(0.3, -0.2), b(1.1, 0.4), c(-0.7, 0.9);
    const ToeplitzSpec s = spec(3, 2, {1.0, 0.0, a, b, c});
    const cplx lu = banded_toeplitz_det(s);
    EXPECT_LT(std::abs(lu - cofactor_det({{a, b, c}, {0.0, a, b}, {1.0, 0.0, a}})), 1e-14);
    EXPECT_LT(std::abs(lu - (a * a * a + b * b - a * c)), 1e-14);
    // upper part zero, L = n-1: the matrix is strictly lower with a single corner entry
    for (int n = 2; n <= 6; ++n) {
        std::vector<cplx> coef(2 * n - 1, 0.0);
        coef[0] = 1.0;
        EXPECT_EQ(std::abs(banded_toeplitz_det(spec(n, n - 1, coef))), 0.0) << n;
    }
}

TEST(BandedToeplitz, MatchesCofactorOracle) {
    for (int n = 2; n <= 6; ++n)
        for (int L = 1; L < n; ++L) {
            const ToeplitzSpec s = random_toeplitz(n, L, 100 * n + L);
            std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n, 0.0));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    if (c - r >= -L) m[r][c] = s.coef(c - r);
            const cplx want = cofactor_det(m);
            EXPECT_LT(std::abs(banded_toeplitz_det(s) - want), 1e-12 * std::max(1.0, std::abs(want)));
        }
}

TEST(HankelSide, Examples) {
    EXPECT_LT(std::abs(rhs_hankel_det(spec(2, 1, {1.0, 2.0, 1.0})) - 3.0), 1e-14);
    EXPECT_LT(std::abs(rhs_hankel_det(spec(2, 1, {1.0, 3.0, 2.0})) - 7.0), 1e-13);
    EXPECT_LT(std::abs(banded_toeplitz_det(spec(2, 1, {1.0, 3.0, 2.0})) - 7.0), 1e-13);
}

TEST(HankelSide, ElementaryVersusComplete) {
    // L = 1: F(t) = prod (1 + r_k t) has elementary coefficients; 1/F has the complete ones up to sign
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int n = 2; n <= 7; ++n) {
        std::vector<cplx> roots(n);
        for (auto& r : roots) r = cplx(g(rng), g(rng)) * 0.5;
        std::vector<cplx> e{1.0};
        for (cplx r : roots) {
            std::vector<cplx> next(e.size() + 1, 0.0);
            for (std::size_t k = 0; k < e.size(); ++k) {
                next[k] += e[k];
                next[k + 1] += r * e[k];
            }
            e = next;
        }
        const ToeplitzSpec s = spec(n, 1, e);
        EXPECT_LT(check_identity(s), 1e-10) << n;
        // Jacobi-Trudi: det[e_{1-a+b}] = h_n, and [t^n] 1/E = (-1)^n h_n
        std::vector<cplx> hk(n + 1, 0.0);
        hk[0] = 1.0;
        for (cplx r : roots)
            for (int k = 1; k <= n; ++k) hk[k] += r * hk[k - 1];
        const double tol = 1e-10 * std::max(1.0, std::abs(hk[n]));
        EXPECT_LT(std::abs(banded_toeplitz_det(s) - hk[n]), tol) << n;
        EXPECT_LT(std::abs(rhs_hankel_det(s) - hk[n]), tol) << n;
    }
}

TEST(CheckIdentity, Examples) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) worst = std::max(worst, check_identity(random_toeplitz(6, 3, 7000 + t)));
    EXPECT_LT(worst, 1e-10);
    worst = 0.0;
    for (int t = 0; t < 100; ++t) worst = std::max(worst, check_identity(random_toeplitz(8, 7, 9000 + t)));
    EXPECT_LT(worst, 1e-9);
    for (int n = 2; n <= 8; ++n)
        for (int L = 1; L < n; ++L) {
            std::vector<cplx> coef(n + L, 0.0);
            coef[0] = 1.0;
            EXPECT_LT(check_identity(spec(n, L, coef)), 1e-15);
        }
}

TEST(CheckIdentity, ThousandRandomSpecs) {
    const ToeplitzStats st = toeplitz_trials(0, 0, 1000, 20260101);
    EXPECT_EQ(st.trials, 1000);
    EXPECT_LT(st.max_residual, 1e-10);
    EXPECT_LE(st.mean_residual, st.max_residual);
    const ToeplitzStats again = toeplitz_trials(0, 0, 1000, 20260101);
    EXPECT_EQ(again.max_residual, st.max_residual);
}

TEST(Toeplitz, SeriesInversionUnitProduct) {
    const ToeplitzSpec s = random_toeplitz(8, 5, 42);
    const int order = s.n + s.L;
    const std::vector<cplx> inv = series_inverse(s.c, order);
    const std::vector<cplx> unit = series_product(s.c, inv, order);
    ASSERT_EQ(unit.size(), std::size_t(order));
    for (int k = 0; k < order; ++k) EXPECT_LT(std::abs(unit[k] - (k == 0 ? 1.0 : 0.0)), 1e-13);
}

TEST(Toeplitz, RandomSpecShape) {
    const ToeplitzSpec s = random_toeplitz(5, 2, 1);
    EXPECT_EQ(s.c.size(), 7u);
    EXPECT_EQ(s.c[0], cplx(1.0));
    for (std::size_t k = 1; k < s.c.size(); ++k) EXPECT_LE(std::abs(s.c[k]), 1.0);
    EXPECT_NO_THROW(validate(s));
    EXPECT_THROW(validate(spec(3, 3, std::vector<cplx>(6, 1.0))), UsageError);
    EXPECT_THROW(validate(spec(3, 1, {2.0, 1.0, 1.0, 1.0})), UsageError);
    EXPECT_THROW(validate(spec(3, 1, {1.0, 1.0})), UsageError);
}
