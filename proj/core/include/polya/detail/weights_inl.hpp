#pragma once

#include <cmath>
#include <numbers>

#include "polya/specfun.hpp"

namespace polya {

inline int radial_node_count(double coupling) {
    const double want = 16.0 + 0.6 * coupling + 4.0 * std::sqrt(coupling);
    return std::clamp(8 * static_cast<int>(std::ceil(want / 8.0)), 16, 512);
}

inline double radial_norm(double nu) {
    return std::exp(std::lgamma(nu + 1.0) - std::lgamma(nu + 0.5)) / std::sqrt(std::numbers::pi);
}

template <class G>
auto radial_average(double nu, double x, double y, G&& g, double length_scale) {
    using V = std::decay_t<decltype(g(0.0))>;
    const double sx = std::sqrt(x), sy = std::sqrt(y);
    if (nu < -0.5 + 1e-12) {
        V r = g((sy - sx) * (sy - sx));
        r += g((sy + sx) * (sy + sx));
        return scaled(0.5, std::move(r));
    }
    const double cross = 2.0 * sx * sy;
    const int nodes = radial_node_count(cross / length_scale);
    V r = gauss_gegenbauer(nodes, nu, [&](double t) { return V(g(std::max(x + y - cross * t, 0.0))); });
    return scaled(radial_norm(nu), std::move(r));
}

inline cplx transform_kernel(Space space, double nu, double x, cplx s) {
    return space == Space::H2 ? std::exp(cplx(0.0, 1.0) * x * s) : bessel_phi(nu, -x * s);
}

template <class F>
cplx numeric_transform(Space space, double nu, const Domain& dom, F&& f, cplx s) {
    return integrate_domain(dom, [&](double x) { return cplx(f(x)) * transform_kernel(space, nu, x, s); }).value;
}

}  // namespace polya
