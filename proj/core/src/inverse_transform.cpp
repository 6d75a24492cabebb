#include "polya/inverse_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <valarray>

#include "polya/errors.hpp"
#include "polya/specfun.hpp"

namespace polya {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

using RVec = std::valarray<double>;
using CVec = std::valarray<cplx>;

double delta_sum(const WeightSpec& w) {
    double s = 0.0;
    for (double d : w.deltas) s += d;
    return s;
}

// (1/2pi) \int (iz)^j e^{-iuz} prod 1/(1 - i d z) dz by residues, closing in the half-plane
// where e^{-iuz} decays.
void residue_inverse(const std::vector<double>& deltas, double u, std::span<double> out) {
    const int count = static_cast<int>(out.size());
    std::vector<double> reach;
    for (double d : deltas)
        if ((u >= 0.0 && d > 0.0) || (u < 0.0 && d < 0.0)) reach.push_back(1.0 / std::abs(d));
    if (reach.empty()) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const auto [lo, hi] = std::minmax_element(reach.begin(), reach.end());
    const double side = u >= 0.0 ? -1.0 : 1.0;
    CircleContour c;
    c.center = cplx(0.0, side * 0.5 * (*lo + *hi));
    c.radius = 0.5 * *hi;
    c.node_count = 64;
    auto g = [&](cplx z) {
        cplx base = std::exp(-I * u * z);
        for (double d : deltas)
            if (d != 0.0) base /= 1.0 - I * d * z;
        CVec v(count);
        const cplx iz = I * z;
        for (int j = 0; j < count; ++j) {
            v[j] = base;
            base *= iz;
        }
        return v;
    };
    const CVec r = contour_integrate(c, g).value;
    const cplx factor = side < 0.0 ? -I : I;
    for (int j = 0; j < count; ++j) out[j] = (factor * r[j]).real();
}

// (1/pi) Re \int_0^inf (iz)^j e^{-iyz} F(z) dz on Gauss-Legendre panels.
void real_line_panels(const TransformModel& m, double y, double decay_width, std::span<double> out) {
    const int count = static_cast<int>(out.size());
    auto f = [&](double z) {
        cplx base = std::exp(-I * y * z) * m.evaluate(z);
        RVec v(count);
        const cplx iz(0.0, z);
        for (int j = 0; j < count; ++j) {
            v[j] = base.real();
            base *= iz;
        }
        return v;
    };
    HalfLineOptions opt;
    opt.decay = Decay::gaussian;
    opt.max_width = 30.0 / std::max(std::abs(y), 1e-12);
    opt.scale = std::min(decay_width, opt.max_width);
    const RVec r = half_line_integrate(f, opt).value;
    for (int j = 0; j < count; ++j) out[j] = r[j] / pi;
}

// Trapezoid sum of the same integral; the step is set by the strip of analyticity.
void real_line_trapezoid(const TransformModel& m, double y, double strip, double growth, std::span<double> out) {
    const int count = static_cast<int>(out.size());
    const double h = 2.0 * pi * strip / (45.0 + growth);
    const double f0 = std::abs(m.evaluate(0.0));
    std::vector<cplx> acc(count, 0.0);
    acc[0] = 0.5 * m.evaluate(0.0);
    int quiet = 0;
    for (int k = 1; k < 200000 && quiet < 3; ++k) {
        const double z = k * h;
        const cplx fz = m.evaluate(z);
        cplx base = std::exp(-I * y * z) * fz;
        const cplx iz(0.0, z);
        for (int j = 0; j < count; ++j) {
            acc[j] += base;
            base *= iz;
        }
        const double size = std::abs(fz) * std::pow(std::max(1.0, z), count);
        quiet = size < 1e-18 * f0 ? quiet + 1 : 0;
    }
    for (int j = 0; j < count; ++j) out[j] = h * acc[j].real() / pi;
}

// (1/pi) Re \int_0^inf g(t e^{-i theta}) e^{-i theta} dt, theta = pi/4; for transforms of
// densities supported on [0, inf).
void rotated_ray(const TransformModel& m, double y, std::span<double> out) {
    const int count = static_cast<int>(out.size());
    if (y <= 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const cplx dir = std::polar(1.0, -pi / 4.0);
    auto f = [&](double t) {
        const cplx z = t * dir;
        cplx base = std::exp(-I * y * z) * m.evaluate(z) * dir;
        RVec v(count);
        const cplx iz = I * z;
        for (int j = 0; j < count; ++j) {
            v[j] = base.real();
            base *= iz;
        }
        return v;
    };
    HalfLineOptions opt;
    opt.scale = 4.0 / (1.0 + y);
    const RVec r = half_line_integrate(f, opt).value;
    for (int j = 0; j < count; ++j) out[j] = r[j] / pi;
}

double max_abs(const std::vector<double>& d) {
    double m = 0.0;
    for (double x : d) m = std::max(m, std::abs(x));
    return m;
}

// Outside [lo, hi] a polya_product weight and its derivatives are below ~1e-18 of the peak,
// under the noise floor of the inversion; returning exact zeros there keeps polynomial
// moments finite.
std::pair<double, double> product_window(const WeightSpec& w) {
    double up = 0.0, down = 0.0, spread = 0.0;
    for (double d : w.deltas) {
        spread += std::abs(d);
        if (d > 0.0) up = std::max(up, d);
        if (d < 0.0) down = std::max(down, -d);
    }
    auto reach = [&](double ell) {
        if (ell > 0.0) return spread + 45.0 * ell + w.gamma / ell;
        if (w.gamma > 0.0) return spread + 13.0 * std::sqrt(w.gamma);
        return std::numeric_limits<double>::infinity();
    };
    return {-reach(down), reach(up)};
}

}  // namespace

double laguerre_fixed_reduced(double nu, double s, double x, double y) {
    const double arg = x * y / (s * s);
    if (arg < 100.0) return bessel_phi(nu, arg) * std::exp(-(x + y) / s);
    const double z = 2.0 * std::sqrt(arg);
    const double gap = std::sqrt(x) - std::sqrt(y);
    return std::tgamma(nu + 1.0) * bessel_i_scaled(nu, z) * std::pow(0.5 * z, -nu) * std::exp(-gap * gap / s);
}

void fourier_inverse(const WeightSpec& w, double y, std::span<double> out, Route route) {
    if (out.empty()) return;
    const TransformModel m = transform_model(w);
    switch (w.family) {
        case Family::gaussian:
            if (route == Route::series) {
                real_line_panels(m, y, 0.5 / std::sqrt(w.variance), out);
            } else {
                const double d = 1.5 / std::sqrt(w.variance);
                real_line_trapezoid(m, y, d, 0.5 * w.variance * d * d + std::abs(y) * d, out);
            }
            return;
        case Family::laguerre_h2:
            rotated_ray(m, y, out);
            return;
        case Family::polya_product: {
            const auto [lo, hi] = product_window(w);
            if (y < lo || y > hi) {
                std::fill(out.begin(), out.end(), 0.0);
                return;
            }
            if (w.support == Support::positive) {
                if (route == Route::series) {
                    rotated_ray(m, y, out);
                } else {
                    residue_inverse(w.deltas, y, out);
                }
                return;
            }
            if (w.gamma == 0.0) {
                residue_inverse(w.deltas, y + delta_sum(w), out);
                return;
            }
            if (route == Route::series) {
                real_line_panels(m, y, 0.5 / std::sqrt(w.gamma), out);
            } else {
                const double dm = max_abs(w.deltas);
                double d = 1.5 / std::sqrt(w.gamma);
                if (dm > 0.0) d = std::min(d, 0.5 / dm);
                const double growth = w.gamma * d * d + std::abs(y + delta_sum(w)) * d +
                                      static_cast<double>(w.deltas.size()) * std::log(2.0);
                real_line_trapezoid(m, y, d, growth, out);
            }
            return;
        }
        default:
            throw UsageError("fourier_inverse: " + to_string(w.family) + " is not an H2 family");
    }
}

void hankel_inverse_reduced(const WeightSpec& w, double y, std::span<double> out) {
    if (w.space != Space::M) throw UsageError("hankel_inverse: M-space weights only");
    const int count = static_cast<int>(out.size());
    if (count == 0) return;
    double rate = 0.0;
    if (w.family == Family::laguerre_m) rate = w.scale;
    if (w.family == Family::polya_product_m) rate = w.shift;
    if (!(rate > 0.0))
        throw UsageError("hankel_inverse: transform has no exponential decay (polya_product_m needs shift > 0)");
    const TransformModel m = transform_model(w);
    const double nu = w.nu;
    const double norm = std::exp(-2.0 * std::lgamma(nu + 1.0));
    auto f = [&](double z) {
        RVec v(count);
        double base = norm * std::pow(z, nu) * bessel_phi(nu, -y * z) * m.evaluate(z).real();
        for (int j = 0; j < count; ++j) {
            v[j] = base;
            base *= -z;
        }
        return v;
    };
    HalfLineOptions opt;
    opt.scale = 2.0 / rate;
    opt.endpoint = Endpoint::algebraic;
    const RVec r = half_line_integrate(f, opt).value;
    for (int j = 0; j < count; ++j) out[j] = r[j];
}

LaguerreMixture::LaguerreMixture(const WeightSpec& w) : nu_(w.nu) {
    if (w.family != Family::polya_product_m) throw UsageError("LaguerreMixture: needs a polya_product_m weight");
    std::vector<double> positive;
    for (double d : w.deltas)
        if (d > 0.0) positive.push_back(d);
    if (positive.empty()) throw UsageError("LaguerreMixture: needs a positive delta");
    // density of the scale variable u = shift + sum d_j E_j, E_j ~ Exp(1)
    auto density = [&](double t) {
        double g = 0.0;
        residue_inverse(positive, t, std::span<double>(&g, 1));
        return g;
    };
    Domain dom;
    dom.lower = 0.0;
    dom.scale = max_abs(positive);
    dom.endpoint = w.shift > 0.0 ? Endpoint::smooth : Endpoint::algebraic;
    const NodeSet table = tabulate_domain(dom, density, 64, 1e-15);
    const double lg = std::lgamma(nu_ + 1.0);
    for (std::size_t k = 0; k < table.size(); ++k) {
        const double u = w.shift + table.node[k];
        const double c = table.weight[k] * table.value[k];
        if (c == 0.0 || u <= 0.0) continue;
        scale_.push_back(u);
        coef_.push_back(c * std::exp(-lg - (nu_ + 1.0) * std::log(u)));
    }
}

void LaguerreMixture::reduced_weights(double y, std::span<double> out) const {
    const int count = static_cast<int>(out.size());
    if (count == 0) return;
    std::fill(out.begin(), out.end(), 0.0);
    if (y < 0.0) return;
    std::vector<double> lag(count);
    for (std::size_t k = 0; k < scale_.size(); ++k) {
        const double u = scale_[k];
        const double t = y / u;
        const double e = coef_[k] * std::exp(-t);
        if (e == 0.0) continue;
        laguerre_monic_all(count - 1, nu_, t, lag);
        double up = 1.0;
        for (int j = 0; j < count; ++j) {
            out[j] += e * up * lag[j];
            up /= u;
        }
    }
}

double LaguerreMixture::reduced(double y) const {
    double r = 0.0;
    reduced_weights(y, std::span<double>(&r, 1));
    return r;
}

double LaguerreMixture::fixed_shift(double x, double y) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < scale_.size(); ++k) acc += coef_[k] * laguerre_fixed_reduced(nu_, scale_[k], x, y);
    return acc;
}

cplx LaguerreMixture::transform(cplx z) const {
    const double g1 = std::tgamma(nu_ + 1.0);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < scale_.size(); ++k)
        acc += coef_[k] * g1 * std::pow(scale_[k], nu_ + 1.0) * std::exp(-scale_[k] * z);
    return acc;
}

const LaguerreMixture& laguerre_mixture(const WeightSpec& w) {
    static std::mutex mu;
    static std::vector<std::pair<WeightSpec, std::unique_ptr<LaguerreMixture>>> cache;
    WeightSpec key = w;
    key.n = 1;  // the density does not depend on n
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [spec, mix] : cache)
        if (spec == key) return *mix;
    cache.emplace_back(key, std::make_unique<LaguerreMixture>(key));
    return *cache.back().second;
}

}  // namespace polya
