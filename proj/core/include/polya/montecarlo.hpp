#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polya/ensembles.hpp"

namespace polya {

struct SampleBatch {
    Space space = Space::H2;
    int n = 0;
    double nu = 0.0;
    std::uint64_t seed = 0;
    int count = 0;
    std::vector<std::vector<double>> spectra;  // sorted ascending
};

// Worker cap from POLYA_KERNELS_THREADS, else hardware concurrency.
int worker_count();

// Samples are drawn in fixed blocks, each with its own stream seeded from (seed, block index),
// so output does not depend on the number of workers.
inline constexpr int sample_block = 512;

// Hermitian X with density ~ exp(-tr X^2 / (2v)). shift: none; fixed(x) adds diag(x);
// ensemble adds an independent sample of the second config (gaussian, itself unshifted or fixed).
SampleBatch sample_h2_gaussian(int n, double variance, const ShiftConfig& shift, int count, std::uint64_t seed);
// Squared singular values of an n x (n+nu) complex Ginibre matrix (E|w|^2 = 1).
SampleBatch sample_m_ginibre(int n, int nu, int count, std::uint64_t seed);

enum class Parity { even, odd };
// Real antisymmetric A of size 2 n_half (+1 if odd), entries N(0, 1/2) above the diagonal.
// Spectra are the n_half distinct nonzero eigenvalues of -A^2, distributed as laguerre_m(nu = -1/2 or +1/2, s = 1).
SampleBatch sample_h1_gaussian(int n_half, Parity parity, int count, std::uint64_t seed);

struct Histogram {
    double lo = 0.0, hi = 1.0;
    std::vector<long> counts;
    std::vector<double> heights;  // counts / (samples * width): integrates to n over the whole line
    long underflow = 0, overflow = 0;
    int samples = 0;

    int bins() const { return static_cast<int>(counts.size()); }
    double width() const { return (hi - lo) / bins(); }
    double edge(int b) const { return lo + b * width(); }
};

Histogram empirical_density(const SampleBatch& batch, int bins, double lo, double hi);
// Range from the data.
Histogram empirical_density(const SampleBatch& batch, int bins);

struct DensityComparison {
    std::vector<double> analytic;  // bin averages of R_1
    std::vector<double> sigma;     // per-bin Poisson sigma on the density scale
    double max_sigmas = 0.0;       // max |empirical - analytic| / sigma
};
// sigma_b = sqrt(max(expected count, 1)) / (samples * width).
DensityComparison compare_density(const Histogram& h, const std::function<double(double)>& r1);

struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};
// Sample mean of sum_a x_a^k.
MomentEstimate trace_moment(const SampleBatch& batch, int k);

struct Grid2d {
    double lo = -4.0, hi = 4.0;
    int cells = 20;
};
// Sorted pairs binned on the ordered region vs 2! p; max cellwise deviation in Poisson sigmas.
double jpdf_compare_2d(const EnsembleConfig& cfg, const SampleBatch& batch, const Grid2d& grid);

}  // namespace polya
