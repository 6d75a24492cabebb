#pragma once

#include <span>
#include <vector>

#include "polya/weights.hpp"

namespace polya {

enum class Route { series, contour };

// out[j] = D^j omega(y) recovered from the Fourier transform, j = 0..out.size()-1.
// series: Gauss-Legendre panels on the real line (or the rotated ray / residue circle when the
// transform is not entire-like); contour: trapezoid sums on the real line where they apply.
void fourier_inverse(const WeightSpec& w, double y, std::span<double> out, Route route);

// Same on M from the modified Hankel transform, returned divided by y^nu.
// Needs exponential decay of the transform (laguerre_m, or polya_product_m with shift > 0).
void hankel_inverse_reduced(const WeightSpec& w, double y, std::span<double> out);

// Radial average of e^{-R/s} at (x, y): the laguerre_m(nu, s) fixed-shift weight divided by y^nu,
// phi(xy/s^2) e^{-(x+y)/s}.
double laguerre_fixed_reduced(double nu, double s, double x, double y);

// polya_product_m written as a superposition of laguerre_m components:
// omega(x) = sum_k coef_k x^nu e^{-x/scale_k}.
class LaguerreMixture {
public:
    explicit LaguerreMixture(const WeightSpec& w);

    // out[j] = D^j omega(y) / y^nu.
    void reduced_weights(double y, std::span<double> out) const;
    double reduced(double y) const;
    // Radial average of omega(R)/R^nu at (x, y), i.e. the fixed-shift weight divided by y^nu.
    double fixed_shift(double x, double y) const;
    cplx transform(cplx z) const;

    const std::vector<double>& scales() const { return scale_; }
    const std::vector<double>& coefs() const { return coef_; }

private:
    double nu_ = 0.0;
    std::vector<double> scale_, coef_;
};

// Shared instance per spec.
const LaguerreMixture& laguerre_mixture(const WeightSpec& w);

}  // namespace polya
