#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace polya {

using cplx = std::complex<double>;

// Banded Toeplitz data: c holds c_{-L}, ..., c_{n-1} and c_{-L} = 1.
struct ToeplitzSpec {
    int n = 2;
    int L = 1;
    std::vector<cplx> c;

    cplx coef(int j) const { return c[j + L]; }  // c_j for -L <= j <= n-1
};

void validate(const ToeplitzSpec& s);

// det of the n x n matrix with entry (a, b) = c_{b-a} for b - a >= -L, else 0.
cplx banded_toeplitz_det(const ToeplitzSpec& s);
// (-1)^{nL} det[d_{L-1+b-a}] (L x L), d_k = [t^{n+k-L+1}] 1/F(t), F(t) = sum_j c_{j-L} t^j.
cplx rhs_hankel_det(const ToeplitzSpec& s);
// |lhs - rhs| / max(1, |lhs|)
double check_identity(const ToeplitzSpec& s);

// Coefficients uniform in the complex unit disk.
ToeplitzSpec random_toeplitz(int n, int L, std::uint64_t seed);

struct ToeplitzStats {
    int trials = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
};
// L <= 0 draws L uniformly from [1, n-1] per trial; n <= 0 draws n from [2, 8].
ToeplitzStats toeplitz_trials(int n, int L, int trials, std::uint64_t seed);

}  // namespace polya
