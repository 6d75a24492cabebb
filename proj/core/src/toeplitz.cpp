#include "polya/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "polya/errors.hpp"
#include "polya/linalg.hpp"
#include "polya/weights.hpp"

namespace polya {

void validate(const ToeplitzSpec& s) {
    if (s.n < 2) throw UsageError("toeplitz: n must be >= 2");
    if (s.L < 1 || s.L > s.n - 1) throw UsageError("toeplitz: L must satisfy 1 <= L <= n-1");
    if (static_cast<int>(s.c.size()) != s.n + s.L)
        throw UsageError("toeplitz: need n+L = " + std::to_string(s.n + s.L) + " coefficients");
    if (s.c.front() != cplx(1.0)) throw UsageError("toeplitz: c_{-L} must equal 1");
}

cplx banded_toeplitz_det(const ToeplitzSpec& s) {
    validate(s);
    CMatrix m(s.n, s.n);
    for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b)
            if (b - a >= -s.L) m(a, b) = s.coef(b - a);
    return determinant(std::move(m));
}

cplx rhs_hankel_det(const ToeplitzSpec& s) {
    validate(s);
    const int order = s.n + s.L;  // coefficients up to t^{n+L-1}
    const std::vector<cplx> inv = series_inverse(s.c, order);
    const int L = s.L;
    CMatrix m(L, L);
    for (int a = 0; a < L; ++a)
        for (int b = 0; b < L; ++b) m(a, b) = inv[s.n + b - a];  // d_{L-1+b-a}
    const cplx d = determinant(std::move(m));
    return (static_cast<long>(s.n) * L) % 2 == 0 ? d : -d;
}

double check_identity(const ToeplitzSpec& s) {
    const cplx lhs = banded_toeplitz_det(s);
    const cplx rhs = rhs_hankel_det(s);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

namespace {

ToeplitzSpec draw(int n, int L, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ToeplitzSpec s;
    s.n = n;
    s.L = L;
    s.c.assign(n + L, cplx(0.0));
    s.c[0] = 1.0;
    for (int k = 1; k < n + L; ++k) {
        const double r = std::sqrt(u(rng));
        const double th = 2.0 * std::numbers::pi * u(rng);
        s.c[k] = std::polar(r, th);
    }
    return s;
}

}  // namespace

ToeplitzSpec random_toeplitz(int n, int L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return draw(n, L, rng);
}

ToeplitzStats toeplitz_trials(int n, int L, int trials, std::uint64_t seed) {
    if (trials < 1) throw UsageError("toeplitz: trials must be >= 1");
    if (n > 0 && n < 2) throw UsageError("toeplitz: n must be >= 2");
    if (n > 0 && L > n - 1) throw UsageError("toeplitz: L must satisfy 1 <= L <= n-1");
    std::mt19937_64 rng(seed);
    ToeplitzStats st;
    for (int t = 0; t < trials; ++t) {
        const int nn = n > 0 ? n : std::uniform_int_distribution<int>(2, 8)(rng);
        const int ll = L > 0 ? L : std::uniform_int_distribution<int>(1, nn - 1)(rng);
        const double r = check_identity(draw(nn, ll, rng));
        st.max_residual = std::max(st.max_residual, r);
        st.mean_residual += r;
    }
    st.trials = trials;
    st.mean_residual /= trials;
    return st;
}

}  // namespace polya
