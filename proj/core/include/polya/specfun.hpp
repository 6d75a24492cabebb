#pragma once

#include <complex>
#include <span>

#include "polya/polynomial.hpp"

namespace polya {

using cplx = std::complex<double>;

double gamma_fn(double x);
cplx gamma_fn(cplx z);
double log_gamma(double x);

// Probabilists' monic Hermite: H_{j+1} = x H_j - j H_{j-1}.
double hermite_monic(int j, double x);
// Fills out[0..jmax].
void hermite_monic_all(int jmax, double x, std::span<double> out);
Polynomial hermite_monic_poly(int j);

// Monic generalized Laguerre: L_{j+1} = (x - (2j+a+1)) L_j - j(j+a) L_{j-1}.
double laguerre_monic(int j, double alpha, double x);
void laguerre_monic_all(int jmax, double alpha, double x, std::span<double> out);
Polynomial laguerre_monic_poly(int j, double alpha);

double bessel_j(double nu, double x);
double bessel_i(double nu, double x);
double bessel_k(double nu, double x);
// e^{-x} I_nu(x) and e^{x} K_nu(x).
double bessel_i_scaled(double nu, double x);
double bessel_k_scaled(double nu, double x);

// Gamma(nu+1) * sum_k w^k / (k! Gamma(nu+k+1)) = Gamma(nu+1) I_nu(2 sqrt w) / w^{nu/2}.
// Entire in w; equals Gamma(nu+1) J_nu(2 sqrt(-w)) / (-w)^{nu/2} on the negative axis.
cplx bessel_phi(double nu, cplx w);
double bessel_phi(double nu, double w);

}  // namespace polya
