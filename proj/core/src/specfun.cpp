#include "polya/specfun.hpp"

#include <cmath>
#include <numbers>

#include "polya/errors.hpp"

namespace polya {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool is_half(double nu, double target) { return std::abs(nu - target) < 1e-15; }

// Lanczos g=7, n=9.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                 771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                 -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Hankel large-argument coefficients a_k(nu) = prod_{m=1..k} (4nu^2 - (2m-1)^2) / (k! 8^k).
template <class Sign>
double hankel_sum(double nu, double x, Sign sign) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double next = term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        if (std::abs(next) > std::abs(term)) break;  // asymptotic series starts diverging
        term = next;
        sum += sign(k) * term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

constexpr double large_scaled = 600.0;

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole at nonpositive integer");
    return std::tgamma(x);
}

cplx gamma_fn(cplx z) {
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw DomainError("gamma_fn: pole at nonpositive integer");
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma_fn(1.0 - z));
    z -= 1.0;
    cplx a = lanczos_c[0];
    const cplx t = z + lanczos_g + 0.5;
    for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (z + static_cast<double>(i));
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double log_gamma(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("log_gamma: pole at nonpositive integer");
    return std::lgamma(x);
}

void hermite_monic_all(int jmax, double x, std::span<double> out) {
    if (jmax < 0) return;
    out[0] = 1.0;
    if (jmax >= 1) out[1] = x;
    for (int j = 1; j < jmax; ++j) out[j + 1] = x * out[j] - j * out[j - 1];
}

double hermite_monic(int j, double x) {
    double h0 = 1.0, h1 = x;
    if (j == 0) return h0;
    for (int k = 1; k < j; ++k) {
        const double h2 = x * h1 - k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

Polynomial hermite_monic_poly(int j) {
    Polynomial prev({1.0});
    if (j == 0) return prev;
    Polynomial cur({0.0, 1.0});
    const Polynomial x({0.0, 1.0});
    for (int k = 1; k < j; ++k) {
        Polynomial next = x * cur + (-static_cast<double>(k)) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

void laguerre_monic_all(int jmax, double alpha, double x, std::span<double> out) {
    if (jmax < 0) return;
    out[0] = 1.0;
    if (jmax >= 1) out[1] = x - (alpha + 1.0);
    for (int j = 1; j < jmax; ++j)
        out[j + 1] = (x - (2.0 * j + alpha + 1.0)) * out[j] - j * (j + alpha) * out[j - 1];
}

double laguerre_monic(int j, double alpha, double x) {
    double l0 = 1.0;
    if (j == 0) return l0;
    double l1 = x - (alpha + 1.0);
    for (int k = 1; k < j; ++k) {
        const double l2 = (x - (2.0 * k + alpha + 1.0)) * l1 - k * (k + alpha) * l0;
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

Polynomial laguerre_monic_poly(int j, double alpha) {
    Polynomial prev({1.0});
    if (j == 0) return prev;
    Polynomial cur({-(alpha + 1.0), 1.0});
    for (int k = 1; k < j; ++k) {
        Polynomial shifted = Polynomial({-(2.0 * k + alpha + 1.0), 1.0}) * cur;
        Polynomial next = shifted + (-k * (k + alpha)) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double bessel_j(double nu, double x) {
    if (nu < -0.5 - 1e-15) throw DomainError("bessel_j: order below -1/2");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (is_half(nu, 0.5)) return x == 0.0 ? 0.0 : std::sqrt(2.0 / (pi * x)) * std::sin(x);
    if (is_half(nu, -0.5)) return std::sqrt(2.0 / (pi * x)) * std::cos(x);
    if (nu >= 0.0) return std::cyl_bessel_j(nu, x);
    // -1/2 < nu < 0
    const double m = -nu;
    return std::cos(m * pi) * std::cyl_bessel_j(m, x) - std::sin(m * pi) * std::cyl_neumann(m, x);
}

double bessel_i_scaled(double nu, double x) {
    if (nu < -0.5 - 1e-15) throw DomainError("bessel_i: order below -1/2");
    if (x < 0.0) throw DomainError("bessel_i: negative argument");
    if (x == 0.0) return bessel_i(nu, 0.0);
    if (is_half(nu, 0.5)) return std::sqrt(1.0 / (2.0 * pi * x)) * (-std::expm1(-2.0 * x));
    if (is_half(nu, -0.5)) return std::sqrt(1.0 / (2.0 * pi * x)) * (1.0 + std::exp(-2.0 * x));
    if (x > large_scaled) return hankel_sum(nu, x, [](int k) { return k % 2 ? -1.0 : 1.0; }) / std::sqrt(2.0 * pi * x);
    return bessel_i(nu, x) * std::exp(-x);
}

double bessel_i(double nu, double x) {
    if (nu < -0.5 - 1e-15) throw DomainError("bessel_i: order below -1/2");
    if (x < 0.0) throw DomainError("bessel_i: negative argument");
    if (is_half(nu, 0.5)) return x == 0.0 ? 0.0 : std::sqrt(2.0 / (pi * x)) * std::sinh(x);
    if (is_half(nu, -0.5)) return std::sqrt(2.0 / (pi * x)) * std::cosh(x);
    if (x > large_scaled) return bessel_i_scaled(nu, x) * std::exp(x);
    if (nu >= 0.0) return std::cyl_bessel_i(nu, x);
    const double m = -nu;
    return std::cyl_bessel_i(m, x) + 2.0 / pi * std::sin(m * pi) * std::cyl_bessel_k(m, x);
}

double bessel_k_scaled(double nu, double x) {
    if (x <= 0.0) throw DomainError("bessel_k: argument must be positive");
    const double m = std::abs(nu);
    if (is_half(m, 0.5)) return std::sqrt(pi / (2.0 * x));
    if (x > large_scaled) return hankel_sum(m, x, [](int) { return 1.0; }) * std::sqrt(pi / (2.0 * x));
    return std::cyl_bessel_k(m, x) * std::exp(x);
}

double bessel_k(double nu, double x) {
    if (x <= 0.0) throw DomainError("bessel_k: argument must be positive");
    const double m = std::abs(nu);
    if (is_half(m, 0.5)) return std::sqrt(pi / (2.0 * x)) * std::exp(-x);
    if (x > large_scaled) return bessel_k_scaled(m, x) * std::exp(-x);
    return std::cyl_bessel_k(m, x);
}

cplx bessel_phi(double nu, cplx w) {
    cplx term = 1.0;
    cplx sum = 1.0;
    const double peak = 2.0 * std::sqrt(std::abs(w)) + 8.0;
    for (int k = 0; k < 2000; ++k) {
        term *= w / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (k > peak && std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_phi(double nu, double w) {
    if (w > 50.0) {
        const double z = 2.0 * std::sqrt(w);
        // Gamma(nu+1) I_nu(z) / (z/2)^nu with the exponential kept in log form.
        return std::exp(std::lgamma(nu + 1.0) - nu * std::log(z / 2.0) + z + std::log(bessel_i_scaled(nu, z)));
    }
    if (w < -1.0) {
        const double z = 2.0 * std::sqrt(-w);
        return std::tgamma(nu + 1.0) * bessel_j(nu, z) / std::pow(z / 2.0, nu);
    }
    return bessel_phi(nu, cplx(w, 0.0)).real();
}

}  // namespace polya
