#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "polya/errors.hpp"
#include "polya/quadrature.hpp"

using namespace polya;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

TEST(GaussLegendre, Examples) {
    EXPECT_NEAR(gauss_legendre(8, [](double) { return 1.0; }), 2.0, 1e-14);
    EXPECT_NEAR(gauss_legendre(8, [](double t) { return t * t; }), 2.0 / 3.0, 1e-14);
    // endpoint singularity: the 32-point error is 2.4e-5, 1e-6 needs about 100 points
    auto wallis = [](double t) { return std::sqrt(1 - t * t); };
    EXPECT_NEAR(gauss_legendre(32, wallis), (boost::math::quadrature::gauss<double, 32>::integrate(wallis, -1.0, 1.0)), 1e-14);
    EXPECT_NEAR(gauss_legendre(32, wallis), pi / 2, 3e-5);
    EXPECT_NEAR(gauss_legendre(100, wallis), pi / 2, 1e-6);
}

TEST(GaussLegendre, RuleShape) {
    for (int n : {2, 8, 64, 128}) {
        const QuadratureRule& r = legendre_rule(n);
        ASSERT_EQ(r.nodes.size(), std::size_t(n));
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            EXPECT_GT(r.weights[i], 0.0);
            if (i) {
                EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
            }
            s += r.weights[i];
        }
        EXPECT_NEAR(s, 2.0, 1e-13);
    }
}

namespace {
// exact integral of sum c_k t^k against (1-t^2)^{nu-1/2} on [-1, 1]
double weighted_moment(int k, double nu) {
    if (k % 2) return 0.0;
    const double a = nu + 0.5;
    return std::exp(std::lgamma(0.5 * (k + 1)) + std::lgamma(a) - std::lgamma(0.5 * (k + 1) + a));
}
}  // namespace

TEST(GaussLegendre, ExactOnRandomPolynomials) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 4, 16, 64}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> c(2 * n);
            double norm = 0.0, exact = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                c[k] = u(rng);
                norm += std::abs(c[k]);
                exact += c[k] * weighted_moment(static_cast<int>(k), 0.5);
            }
            const double got = gauss_legendre(n, [&](double t) {
                double acc = 0.0;
                for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
                return acc;
            });
            EXPECT_LT(std::abs(got - exact), 1e-13 * norm) << n;
        }
    }
}

TEST(GaussGegenbauer, Examples) {
    EXPECT_NEAR(gauss_gegenbauer(8, 0.5, [](double) { return 1.0; }), 2.0, 1e-14);
    EXPECT_NEAR(gauss_gegenbauer(16, 1.0, [](double) { return 1.0; }), pi / 2, 1e-14);
    EXPECT_NEAR(gauss_gegenbauer(16, 0.5, [](double t) { return t; }), 0.0, 1e-15);
}

TEST(GaussGegenbauer, RejectsReflectionIndex) {
    EXPECT_THROW(gauss_gegenbauer(8, -0.5, [](double) { return 1.0; }), DomainError);
}

TEST(GaussGegenbauer, ExactOnRandomPolynomials) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double nu : {-0.25, 0.0, 1.0, 2.0, 3.5}) {
        for (int n : {2, 8, 24}) {
            std::vector<double> c(2 * n);
            double norm = 0.0, exact = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) {
                c[k] = u(rng);
                norm += std::abs(c[k]);
                exact += c[k] * weighted_moment(static_cast<int>(k), nu);
            }
            const double got = gauss_gegenbauer(n, nu, [&](double t) {
                double acc = 0.0;
                for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
                return acc;
            });
            EXPECT_LT(std::abs(got - exact), 1e-13 * norm) << nu << " " << n;
        }
    }
}

TEST(Contour, Examples) {
    CircleContour c;
    EXPECT_LT(std::abs(contour_integrate(c, [](cplx z) { return 1.0 / z; }).value - 1.0), 1e-14);
    EXPECT_LT(std::abs(contour_integrate(c, [](cplx) { return cplx(1.0); }).value), 1e-14);
    for (int m = 0; m <= 6; ++m) {
        const cplx v = contour_integrate(c, [m](cplx z) { return std::exp(z) / std::pow(z, m + 1); }).value;
        EXPECT_LT(std::abs(v - 1.0 / boost::math::factorial<double>(m)), 1e-12) << m;
    }
}

TEST(Contour, LaurentMonomialsExact) {
    CircleContour c;
    c.radius = 0.8;
    c.node_count = 32;
    for (int k = -15; k <= 15; ++k) {
        const cplx v = contour_integrate(c, [k](cplx z) { return std::pow(z, k); }).value;
        EXPECT_LT(std::abs(v - (k == -1 ? 1.0 : 0.0)), 1e-13) << k;
    }
}

TEST(Contour, ValarrayIntegrand) {
    CircleContour c;
    const auto r = contour_integrate(c, [](cplx z) {
        std::valarray<cplx> v(3);
        v[0] = 1.0 / z;
        v[1] = std::exp(z) / (z * z);
        v[2] = std::cos(z) / (z * z * z);
        return v;
    });
    EXPECT_LT(std::abs(r.value[0] - 1.0), 1e-14);
    EXPECT_LT(std::abs(r.value[1] - 1.0), 1e-13);
    EXPECT_LT(std::abs(r.value[2] + 0.5), 1e-13);
    EXPECT_GE(r.error, 0.0);
}

TEST(Contour, NonConvergenceThrows) {
    CircleContour c;
    c.radius = 1.0;
    ContourOptions opt;
    opt.max_nodes = 64;
    // pole right next to the circle
    EXPECT_THROW(contour_integrate(c, [](cplx z) { return 1.0 / (z - 1.001); }, opt), AccuracyError);
}

TEST(Contour, DoublingNeverWorsens) {
    auto g = [](cplx z) { return std::exp(z) / std::pow(z, 4); };
    const double exact = 1.0 / 6.0;
    double prev = 1e300;
    for (int m : {8, 16, 32, 64}) {
        CircleContour c;
        c.node_count = m;
        ContourOptions opt;
        opt.max_nodes = 2 * m;  // exactly one refinement
        double err;
        try {
            err = std::abs(contour_integrate(c, g, opt).value - exact);
        } catch (const AccuracyError&) {
            continue;
        }
        EXPECT_LE(err, std::max(prev, 2e-15));
        prev = err;
    }
}

TEST(HalfLine, Examples) {
    EXPECT_NEAR(half_line_integrate([](double x) { return std::exp(-x); }).value, 1.0, 1e-13);
    EXPECT_NEAR(half_line_integrate([](double x) { return x * x * x * std::exp(-x); }).value, 6.0, 1e-12);
    HalfLineOptions opt;
    opt.endpoint = Endpoint::algebraic;
    EXPECT_NEAR(half_line_integrate([](double x) { return std::sqrt(x) * std::exp(-x); }, opt).value,
                boost::math::tgamma(1.5), 1e-12);
}

TEST(HalfLine, SlowDecayThrows) {
    EXPECT_THROW(half_line_integrate([](double x) { return 1.0 / (1.0 + x); }), AccuracyError);
}

TEST(HalfLine, ComplexIntegrand) {
    const cplx v = half_line_integrate([](double x) { return std::exp(cplx(-1.0, 1.0) * x); }).value;
    EXPECT_LT(std::abs(v - 1.0 / cplx(1.0, -1.0)), 1e-13);
}

TEST(RealLine, Examples) {
    HalfLineOptions g;
    g.decay = Decay::gaussian;
    EXPECT_NEAR(real_line_integrate([](double x) { return std::exp(-x * x / 2); }, g).value, std::sqrt(2 * pi), 1e-13);
    EXPECT_NEAR(real_line_integrate([](double x) { return x * std::exp(-x * x / 2); }, g).value, 0.0, 1e-14);
    EXPECT_NEAR(real_line_integrate([](double x) { return std::exp(-std::abs(x)); }).value, 2.0, 1e-13);
}

TEST(Domain, BreaksAndBoundedSupport) {
    Domain d;
    d.lower = 0.0;
    EXPECT_NEAR(integrate_domain(d, [](double x) { return std::exp(-2 * x); }).value, 0.5, 1e-13);
    Domain r;
    r.breaks = {0.0, 1.0};
    EXPECT_NEAR(integrate_domain(r, [](double x) { return std::exp(-std::abs(x - 1.0)) + std::exp(-std::abs(x)); }).value, 4.0, 1e-12);
}

TEST(Domain, TabulatedRuleReproducesIntegral) {
    Domain d;
    d.lower = 0.0;
    auto f = [](double x) { return x * std::exp(-x); };
    const NodeSet rule = tabulate_domain(d, f);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weight[i] * f(rule.node[i]);
    EXPECT_NEAR(s, 1.0, 1e-13);
    EXPECT_NEAR(rule.integral, 1.0, 1e-13);
}
