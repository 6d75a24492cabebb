#include "polya/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "polya/errors.hpp"
#include "polya/linalg.hpp"
#include "polya/quadrature.hpp"

namespace polya {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 block_stream(std::uint64_t seed, std::uint64_t block) {
    return std::mt19937_64(splitmix(splitmix(seed) ^ (block * 0xd1b54a32d192ed03ULL + 1)));
}

using Draw = std::function<std::vector<double>(std::mt19937_64&)>;

// one Draw per worker; each block is produced sequentially from its own stream
SampleBatch run_blocks(int count, std::uint64_t seed, const Draw& draw) {
    if (count < 1) throw UsageError("sample count must be >= 1");
    SampleBatch b;
    b.seed = seed;
    b.count = count;
    b.spectra.resize(count);
    const int blocks = (count + sample_block - 1) / sample_block;
    std::atomic<int> next{0};
    auto work = [&] {
        for (int k = next++; k < blocks; k = next++) {
            auto rng = block_stream(seed, k);
            const int end = std::min(count, (k + 1) * sample_block);
            for (int i = k * sample_block; i < end; ++i) b.spectra[i] = draw(rng);
        }
    };
    const int workers = std::min(worker_count(), blocks);
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return b;
}

CMatrix gue(int n, double v, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double sd = std::sqrt(v), off = std::sqrt(v / 2.0);
    CMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        a(r, r) = sd * g(rng);
        for (int c = r + 1; c < n; ++c) {
            const double re = off * g(rng);
            const double im = off * g(rng);
            a(r, c) = {re, im};
            a(c, r) = {re, -im};
        }
    }
    return a;
}

}  // namespace

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("POLYA_KERNELS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return std::min(cap, hw);
    }
    return hw;
}

SampleBatch sample_h2_gaussian(int n, double variance, const ShiftConfig& shift, int count, std::uint64_t seed) {
    if (n < 1) throw UsageError("n must be >= 1");
    if (!(variance > 0.0)) throw UsageError("variance must be > 0");
    std::vector<double> diag;
    double v2 = 0.0;
    std::vector<double> diag2;
    switch (shift.mode) {
        case ShiftConfig::Mode::none: break;
        case ShiftConfig::Mode::fixed:
            if (static_cast<int>(shift.x.size()) != n) throw UsageError("fixed shift needs n eigenvalues");
            diag = shift.x;
            break;
        case ShiftConfig::Mode::ensemble: {
            if (!shift.second) throw UsageError("ensemble shift without a second ensemble");
            const EnsembleConfig& s = *shift.second;
            if (s.space() != Space::H2 || s.weight.family != Family::gaussian || s.n() != n)
                throw UsageError("sampling supports a gaussian second ensemble of the same size only");
            if (s.shift.mode == ShiftConfig::Mode::ensemble) throw UsageError("nested ensemble shifts are not sampled");
            v2 = s.weight.variance;
            if (s.shift.mode == ShiftConfig::Mode::fixed) diag2 = s.shift.x;
            break;
        }
    }
    SampleBatch b = run_blocks(count, seed, [=](std::mt19937_64& rng) {
        CMatrix a = gue(n, variance, rng);
        for (std::size_t k = 0; k < diag.size(); ++k) a(k, k) += diag[k];
        if (v2 > 0.0) {
            const CMatrix c = gue(n, v2, rng);
            for (int r = 0; r < n; ++r)
                for (int q = 0; q < n; ++q) a(r, q) += c(r, q);
            for (std::size_t k = 0; k < diag2.size(); ++k) a(k, k) += diag2[k];
        }
        return hermitian_eigen(a, false).values;
    });
    b.space = Space::H2;
    b.n = n;
    return b;
}

SampleBatch sample_m_ginibre(int n, int nu, int count, std::uint64_t seed) {
    if (n < 1) throw UsageError("n must be >= 1");
    if (nu < 0) throw UsageError("nu must be a nonnegative integer");
    const int m = n + nu;
    SampleBatch b = run_blocks(count, seed, [=](std::mt19937_64& rng) {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        CMatrix w(n, m);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c) w(r, c) = {g(rng), g(rng)};
        CMatrix a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) {
                cplx s = 0.0;
                for (int k = 0; k < m; ++k) s += w(r, k) * std::conj(w(c, k));
                a(r, c) = s;
                a(c, r) = std::conj(s);
            }
        auto x = hermitian_eigen(a, false).values;
        for (double& v : x) v = std::max(v, 0.0);
        return x;
    });
    b.space = Space::M;
    b.n = n;
    b.nu = nu;
    return b;
}

SampleBatch sample_h1_gaussian(int n_half, Parity parity, int count, std::uint64_t seed) {
    if (n_half < 1) throw UsageError("n_half must be >= 1");
    const bool odd = parity == Parity::odd;
    const int dim = 2 * n_half + (odd ? 1 : 0);
    SampleBatch b = run_blocks(count, seed, [=](std::mt19937_64& rng) {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        RMatrix a(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = r + 1; c < dim; ++c) {
                a(r, c) = g(rng);
                a(c, r) = -a(r, c);
            }
        // -A^2 = A^T A
        CMatrix s(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = r; c < dim; ++c) {
                double acc = 0.0;
                for (int k = 0; k < dim; ++k) acc += a(k, r) * a(k, c);
                s(r, c) = acc;
                s(c, r) = acc;
            }
        const auto ev = hermitian_eigen(s, false).values;
        // eigenvalues come in equal pairs; an odd size adds one zero at the bottom
        std::vector<double> x;
        for (int k = odd ? 1 : 0; k + 1 < dim; k += 2) x.push_back(std::max(0.0, 0.5 * (ev[k] + ev[k + 1])));
        return x;
    });
    b.space = Space::M;
    b.n = n_half;
    b.nu = odd ? 0.5 : -0.5;
    return b;
}

Histogram empirical_density(const SampleBatch& batch, int bins, double lo, double hi) {
    if (bins < 10) throw UsageError("histogram needs bins >= 10");
    if (!(hi > lo)) throw UsageError("histogram range must satisfy lo < hi");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.samples = batch.count;
    h.counts.assign(bins, 0);
    const double w = (hi - lo) / bins;
    for (const auto& s : batch.spectra)
        for (double x : s) {
            if (x < lo) {
                ++h.underflow;
            } else if (x >= hi) {
                ++h.overflow;
            } else {
                const int k = std::min(bins - 1, static_cast<int>((x - lo) / w));
                ++h.counts[k];
            }
        }
    h.heights.resize(bins);
    for (int k = 0; k < bins; ++k) h.heights[k] = h.counts[k] / (static_cast<double>(batch.count) * w);
    return h;
}

Histogram empirical_density(const SampleBatch& batch, int bins) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : batch.spectra)
        for (double x : s) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    if (!(hi > lo)) hi = lo + 1.0;
    return empirical_density(batch, bins, lo, std::nextafter(hi, std::numeric_limits<double>::infinity()));
}

DensityComparison compare_density(const Histogram& h, const std::function<double(double)>& r1) {
    DensityComparison out;
    const int bins = h.bins();
    const double w = h.width();
    for (int k = 0; k < bins; ++k) {
        const double a = h.edge(k);
        const double mean = segment_integrate(r1, a, a + w, Endpoint::algebraic, 16) / w;
        const double expected = mean * w * h.samples;
        const double sigma = std::sqrt(std::max(expected, 1.0)) / (h.samples * w);
        out.analytic.push_back(mean);
        out.sigma.push_back(sigma);
        out.max_sigmas = std::max(out.max_sigmas, std::abs(h.heights[k] - mean) / sigma);
    }
    return out;
}

MomentEstimate trace_moment(const SampleBatch& batch, int k) {
    double s = 0.0, s2 = 0.0;
    for (const auto& sp : batch.spectra) {
        double t = 0.0;
        for (double x : sp) t += std::pow(x, k);
        s += t;
        s2 += t * t;
    }
    const double m = batch.count;
    MomentEstimate e;
    e.mean = s / m;
    const double var = m > 1 ? std::max(0.0, (s2 - m * e.mean * e.mean) / (m - 1)) : 0.0;
    e.std_error = std::sqrt(var / m);
    return e;
}

double jpdf_compare_2d(const EnsembleConfig& cfg, const SampleBatch& batch, const Grid2d& grid) {
    if (cfg.n() != 2 || batch.n != 2) throw UsageError("jpdf_compare_2d needs n = 2");
    if (!(grid.hi > grid.lo) || grid.cells < 2) throw UsageError("jpdf_compare_2d: bad grid");
    const int m = grid.cells;
    const double w = (grid.hi - grid.lo) / m;
    std::vector<long> obs(m * m, 0);
    for (const auto& s : batch.spectra) {
        const double a = std::min(s[0], s[1]), b = std::max(s[0], s[1]);
        if (a < grid.lo || b >= grid.hi) continue;
        const int i = std::min(m - 1, static_cast<int>((a - grid.lo) / w));
        const int j = std::min(m - 1, static_cast<int>((b - grid.lo) / w));
        ++obs[i * m + j];
    }
    const JointDensity p(cfg);
    const QuadratureRule& r = legendre_rule(8);
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            // p is symmetric, so the ordered part of a diagonal cell carries the full-square mass of p
            const double ax = grid.lo + i * w, ay = grid.lo + j * w;
            double mass = 0.0;
            for (std::size_t u = 0; u < r.nodes.size(); ++u)
                for (std::size_t v = 0; v < r.nodes.size(); ++v) {
                    const double pt[2] = {ax + 0.5 * w * (1.0 + r.nodes[u]), ay + 0.5 * w * (1.0 + r.nodes[v])};
                    mass += r.weights[u] * r.weights[v] * p(pt);
                }
            mass *= 0.25 * w * w * (i == j ? 1.0 : 2.0);
            const double expected = mass * batch.count;
            const double dev = std::abs(obs[i * m + j] - expected) / std::sqrt(std::max(expected, 1.0));
            worst = std::max(worst, dev);
        }
    return worst;
}

}  // namespace polya
