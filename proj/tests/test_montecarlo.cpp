#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "polya/ensembles.hpp"
#include "polya/linalg.hpp"
#include "polya/montecarlo.hpp"

using namespace polya;

namespace {
EnsembleConfig unshifted(WeightSpec w) { return {std::move(w), {}}; }

// \int x^k R_1(x) dx
double analytic_moment(const EnsembleConfig& cfg, int k) {
    const KernelEvaluator ker(cfg);
    return integrate_domain(ker.pair().domain, [&](double x) { return std::pow(x, k) * ker(x, x); }).value;
}

void expect_moment(const SampleBatch& b, int k, double want, const char* what) {
    const MomentEstimate m = trace_moment(b, k);
    EXPECT_LT(std::abs(m.mean - want), 4.0 * m.std_error) << what << " k=" << k << " mean=" << m.mean << " want=" << want;
}
}  // namespace

TEST(Eigensolver, ReconstructsHermitian) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int n : {1, 2, 5, 12, 30}) {
        CMatrix a(n, n);
        for (int r = 0; r < n; ++r) {
            a(r, r) = g(rng);
            for (int c = r + 1; c < n; ++c) {
                a(r, c) = cplx(g(rng), g(rng));
                a(c, r) = std::conj(a(r, c));
            }
        }
        const HermitianEigen e = hermitian_eigen(a, true);
        double num = 0.0, den = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx s = 0.0;
                for (int k = 0; k < n; ++k) s += e.vectors(r, k) * e.values[k] * std::conj(e.vectors(c, k));
                num += std::norm(s - a(r, c));
                den += std::norm(a(r, c));
            }
        EXPECT_LT(std::sqrt(num / den), 1e-10) << n;
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    }
}

TEST(Eigensolver, DiagonalInput) {
    const std::vector<double> d{3.0, -1.0, 2.5, 0.0};
    CMatrix a(4, 4);
    for (int k = 0; k < 4; ++k) a(k, k) = d[k];
    std::vector<double> want = d;
    std::sort(want.begin(), want.end());
    EXPECT_EQ(hermitian_eigen(a, false).values, want);
}

TEST(SampleGue, Moments) {
    const int n = 3;
    const double v = 1.5;
    const SampleBatch b = sample_h2_gaussian(n, v, ShiftConfig::none(), 40000, 11);
    ASSERT_EQ(b.spectra.size(), 40000u);
    for (const auto& s : b.spectra) ASSERT_EQ(s.size(), std::size_t(n));
    expect_moment(b, 1, 0.0, "trace");
    expect_moment(b, 2, n * n * v, "trace square");
    const std::vector<double> x{-1.0, 0.5, 2.0};
    const SampleBatch f = sample_h2_gaussian(n, v, ShiftConfig::fixed(x), 40000, 12);
    expect_moment(f, 1, 1.5, "shifted trace");
}

TEST(SampleGinibre, Moments) {
    for (int nu : {0, 1, 3}) {
        const int n = 3;
        const SampleBatch b = sample_m_ginibre(n, nu, 40000, 21 + nu);
        expect_moment(b, 1, n * (n + nu), "ginibre trace");
        for (const auto& s : b.spectra)
            for (double x : s) ASSERT_GE(x, 0.0);
    }
}

TEST(SampleGinibre, SingleEntryIsExponential) {
    const int count = 20000;
    const SampleBatch b = sample_m_ginibre(1, 0, count, 5);
    std::vector<double> x;
    for (const auto& s : b.spectra) x.push_back(s[0]);
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    for (int i = 0; i < count; ++i) {
        const double f = 1.0 - std::exp(-x[i]);
        ks = std::max({ks, std::abs(f - double(i) / count), std::abs(f - double(i + 1) / count)});
    }
    EXPECT_LT(ks, 1.36 / std::sqrt(double(count)));
}

TEST(SampleH1, SmallestEvenCaseIsChiSquared) {
    // x = a^2, a ~ N(0, 1/2): 2x ~ chi^2_1
    const int count = 20000;
    const SampleBatch b = sample_h1_gaussian(1, Parity::even, count, 8);
    EXPECT_DOUBLE_EQ(b.nu, -0.5);
    std::vector<double> x;
    for (const auto& s : b.spectra) x.push_back(s[0]);
    std::sort(x.begin(), x.end());
    const boost::math::chi_squared chi(1.0);
    double ks = 0.0;
    for (int i = 0; i < count; ++i) {
        const double f = boost::math::cdf(chi, 2.0 * x[i]);
        ks = std::max({ks, std::abs(f - double(i) / count), std::abs(f - double(i + 1) / count)});
    }
    EXPECT_LT(ks, 1.36 / std::sqrt(double(count)));
}

TEST(SampleH1, OddParityDropsZeroMode) {
    const SampleBatch b = sample_h1_gaussian(2, Parity::odd, 1000, 3);
    EXPECT_DOUBLE_EQ(b.nu, 0.5);
    for (const auto& s : b.spectra) {
        ASSERT_EQ(s.size(), 2u);
        EXPECT_GT(s[0], 1e-12);
    }
}

TEST(SampleH1, FirstMomentMatchesLaguerre) {
    for (Parity p : {Parity::even, Parity::odd}) {
        const double nu = p == Parity::even ? -0.5 : 0.5;
        const SampleBatch b = sample_h1_gaussian(3, p, 40000, 31);
        expect_moment(b, 1, analytic_moment(unshifted(WeightSpec::laguerre_m(3, nu, 1.0)), 1), "h1");
    }
}

TEST(MomentChain, AllSamplersUpToCubic) {
    struct Case {
        SampleBatch batch;
        EnsembleConfig cfg;
    };
    const std::vector<Case> cases{
        {sample_h2_gaussian(4, 1.0, ShiftConfig::none(), 40000, 41), unshifted(WeightSpec::gaussian(4, 1.0))},
        {sample_m_ginibre(3, 1, 40000, 42), unshifted(WeightSpec::laguerre_m(3, 1.0))},
        {sample_h1_gaussian(2, Parity::even, 40000, 43), unshifted(WeightSpec::laguerre_m(2, -0.5))},
        {sample_h1_gaussian(2, Parity::odd, 40000, 44), unshifted(WeightSpec::laguerre_m(2, 0.5))},
    };
    for (const Case& c : cases)
        for (int k = 1; k <= 3; ++k) expect_moment(c.batch, k, analytic_moment(c.cfg, k), to_string(c.cfg.weight.family).c_str());
}

TEST(Additivity, SumOfIndependentGues) {
    const int n = 3;
    const EnsembleConfig second = unshifted(WeightSpec::gaussian(n, 0.5));
    const SampleBatch b = sample_h2_gaussian(n, 1.0, ShiftConfig::ensemble(second), 40000, 51);
    expect_moment(b, 1, 0.0, "sum trace");
    expect_moment(b, 2, n * n * 1.0 + n * n * 0.5, "sum trace square");
}

TEST(Reproducibility, IndependentOfWorkerCount) {
    ::setenv("POLYA_KERNELS_THREADS", "1", 1);
    const SampleBatch a = sample_h2_gaussian(3, 1.0, ShiftConfig::none(), 5000, 77);
    const SampleBatch ga = sample_m_ginibre(2, 1, 3000, 78);
    ::setenv("POLYA_KERNELS_THREADS", "4", 1);
    const SampleBatch b = sample_h2_gaussian(3, 1.0, ShiftConfig::none(), 5000, 77);
    const SampleBatch gb = sample_m_ginibre(2, 1, 3000, 78);
    ::unsetenv("POLYA_KERNELS_THREADS");
    EXPECT_EQ(a.spectra, b.spectra);
    EXPECT_EQ(ga.spectra, gb.spectra);
    const SampleBatch c = sample_h2_gaussian(3, 1.0, ShiftConfig::none(), 5000, 78);
    EXPECT_NE(a.spectra, c.spectra);
}

TEST(Histogram, IntegratesToN) {
    const SampleBatch b = sample_h2_gaussian(4, 1.0, ShiftConfig::none(), 5000, 1);
    const Histogram h = empirical_density(b, 40);
    double mass = 0.0;
    long total = 0;
    for (int k = 0; k < h.bins(); ++k) {
        EXPECT_GE(h.heights[k], 0.0);
        mass += h.heights[k] * h.width();
        total += h.counts[k];
    }
    EXPECT_NEAR(mass, 4.0, 1e-12);
    EXPECT_EQ(total + h.underflow + h.overflow, 5000L * 4);
    EXPECT_EQ(h.underflow + h.overflow, 0);
}

TEST(DensityMatch, GueN4) {
    const SampleBatch b = sample_h2_gaussian(4, 1.0, ShiftConfig::none(), 100000, 2026);
    const Histogram h = empirical_density(b, 80, -6.0, 6.0);
    const KernelEvaluator k(unshifted(WeightSpec::gaussian(4, 1.0)));
    const DensityComparison c = compare_density(h, [&](double x) { return k(x, x); });
    EXPECT_LT(c.max_sigmas, 5.0);
}

TEST(DensityMatch, WishartN3Nu1) {
    const SampleBatch b = sample_m_ginibre(3, 1, 100000, 2027);
    const Histogram h = empirical_density(b, 80, 0.0, 20.0);
    const KernelEvaluator k(unshifted(WeightSpec::laguerre_m(3, 1.0)));
    const DensityComparison c = compare_density(h, [&](double x) { return k(x, x); });
    EXPECT_LT(c.max_sigmas, 5.0);
}

TEST(JpdfCompare2d, GuePair) {
    const SampleBatch b = sample_h2_gaussian(2, 1.0, ShiftConfig::none(), 200000, 61);
    EXPECT_LT(jpdf_compare_2d(unshifted(WeightSpec::gaussian(2, 1.0)), b, Grid2d{}), 5.0);
}

TEST(JpdfCompare2d, ShiftedGuePair) {
    const ShiftConfig s = ShiftConfig::fixed({-1.0, 1.0});
    const SampleBatch b = sample_h2_gaussian(2, 1.0, s, 200000, 62);
    EXPECT_LT(jpdf_compare_2d(EnsembleConfig{WeightSpec::gaussian(2, 1.0), s}, b, Grid2d{-5.0, 5.0, 20}), 5.0);
}

TEST(JpdfCompare2d, WishartPair) {
    const SampleBatch b = sample_m_ginibre(2, 0, 200000, 63);
    EXPECT_LT(jpdf_compare_2d(unshifted(WeightSpec::laguerre_m(2, 0.0)), b, Grid2d{0.0, 8.0, 20}), 5.0);
}
