#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polya/quadrature.hpp"

namespace polya {

using cplx = std::complex<double>;

enum class Space { H2, M };
enum class Family { gaussian, laguerre_h2, laguerre_m, polya_product, polya_product_m };
enum class Support { real, positive };

std::string to_string(Space s);
std::string to_string(Family f);
std::string to_string(Support s);

struct WeightSpec {
    Space space = Space::H2;
    int n = 1;
    // M: the space index (one of -1/2, 1/2, 0, 1, 2, ...).
    // laguerre_h2: exponent shift, omega = x^{n+nu-1} e^{-x}.
    double nu = 0.0;
    Family family = Family::gaussian;
    double variance = 1.0;        // gaussian
    double scale = 1.0;           // laguerre_m
    double gamma = 0.0;           // polya_product
    std::vector<double> deltas;   // polya_product, polya_product_m
    Support support = Support::real;
    double shift = 0.0;           // polya_product_m: e^{-shift z}

    double alpha() const { return n + nu - 1.0; }
    bool operator==(const WeightSpec&) const = default;

    static WeightSpec gaussian(int n, double variance = 1.0);
    static WeightSpec laguerre_h2(int n, double nu);
    static WeightSpec laguerre_m(int n, double nu, double scale = 1.0);
    static WeightSpec polya_product(int n, double gamma, std::vector<double> deltas, Support support = Support::real);
    static WeightSpec polya_product_m(int n, double nu, std::vector<double> deltas, double shift = 0.0);
};

// Throws UsageError describing the first violated invariant.
void validate(const WeightSpec& w);
bool admissible_nu(double nu);

struct TransformModel {
    WeightSpec spec;

    cplx evaluate(cplx z) const;
    double holomorphy_radius() const;  // +inf when entire
    double value_at_zero() const;
    // Coefficients k = 1..order of log(F/F(0)); index 0 unused.
    std::vector<cplx> log_taylor(int order) const;
    // Taylor coefficients of F at 0, by the log-derivative recursion.
    std::vector<cplx> taylor(int order) const;
};

TransformModel transform_model(const WeightSpec& w);

// b_l = (-i d/dt)^l (1/F)(0) on H2, (-d/dt)^l (1/H)(0) on M.
struct ReciprocalSeries {
    Space space = Space::H2;
    std::vector<cplx> b;
};

ReciprocalSeries reciprocal_taylor(const WeightSpec& w, int order);

// Power-series helpers on coefficient vectors.
std::vector<cplx> series_inverse(const std::vector<cplx>& a, int order);
std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b, int order);

double eval_weight(const WeightSpec& w, double x);
// omega(x) / x^nu on M, continuous at 0.
double eval_weight_reduced(const WeightSpec& w, double x);
cplx eval_transform(const WeightSpec& w, cplx z);

// q_j = D^j omega, D = -d/dx (H2) or d/dx x^{nu+1} d/dx x^{-nu} (M).
double one_point_weight(const WeightSpec& w, int j, double x);
// out[j] for j = 0..out.size()-1.
void one_point_weights(const WeightSpec& w, double x, std::span<double> out);
// M only: out[j] = q_j(x) / x^nu.
void one_point_weights_reduced(const WeightSpec& w, double x, std::span<double> out);

// Support and integration hints for omega.
Domain support_domain(const WeightSpec& w);

// Scalar convolution (omega * sigma)(x) on R or the radial convolution on M.
double convolve(const WeightSpec& w1, const WeightSpec& w2, double x);

// Closed-form semigroup partner: omega * sigma = factor * combined, if the catalog is closed
// for this pair.
std::optional<std::pair<WeightSpec, double>> combine(const WeightSpec& w1, const WeightSpec& w2);

// Support hints for a convolution of functions living on d1 and d2.
Domain convolution_domain(const Domain& d1, const Domain& d2, Space space);

// e^{i x s} on H2, phi(nu, -x s) on M.
inline cplx transform_kernel(Space space, double nu, double x, cplx s);

// Numerical transform of an arbitrary function on the space of w (Fourier on H2, modified
// Hankel on M).
template <class F>
cplx numeric_transform(Space space, double nu, const Domain& dom, F&& f, cplx s);

// Average of g(R) over the radial convolution measure at (x, y):
// nu > -1/2: Gamma(nu+1)/(sqrt(pi) Gamma(nu+1/2)) \int g(x+y-2 sqrt(xy) t) (1-t^2)^{nu-1/2} dt,
// nu = -1/2: (g((sqrt y - sqrt x)^2) + g((sqrt y + sqrt x)^2)) / 2.
// length_scale sets the node count (the integrand varies like e^{2 sqrt(xy) t / length_scale}).
template <class G>
auto radial_average(double nu, double x, double y, G&& g, double length_scale = 1.0);

}  // namespace polya

#include "polya/detail/weights_inl.hpp"
