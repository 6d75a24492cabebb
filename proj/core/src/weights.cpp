#include "polya/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polya/errors.hpp"
#include "polya/inverse_transform.hpp"
#include "polya/specfun.hpp"

namespace polya {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
const cplx I(0.0, 1.0);

int nonzero_count(const std::vector<double>& d) {
    return static_cast<int>(std::count_if(d.begin(), d.end(), [](double x) { return x != 0.0; }));
}

double max_abs(const std::vector<double>& d) {
    double m = 0.0;
    for (double x : d) m = std::max(m, std::abs(x));
    return m;
}

double sum_of(const std::vector<double>& d) {
    double s = 0.0;
    for (double x : d) s += x;
    return s;
}

bool on_h2(Family f) { return f == Family::gaussian || f == Family::laguerre_h2 || f == Family::polya_product; }

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

cplx pole_factor(cplx denom) {
    if (std::abs(denom) < 1e-12) throw DomainError("eval_transform: argument too close to a pole");
    return 1.0 / denom;
}

}  // namespace

std::string to_string(Space s) { return s == Space::H2 ? "H2" : "M"; }

std::string to_string(Family f) {
    switch (f) {
        case Family::gaussian: return "gaussian";
        case Family::laguerre_h2: return "laguerre_h2";
        case Family::laguerre_m: return "laguerre_m";
        case Family::polya_product: return "polya_product";
        case Family::polya_product_m: return "polya_product_m";
    }
    return "?";
}

std::string to_string(Support s) { return s == Support::real ? "real" : "positive"; }

WeightSpec WeightSpec::gaussian(int n, double variance) {
    WeightSpec w;
    w.n = n;
    w.family = Family::gaussian;
    w.variance = variance;
    return w;
}

WeightSpec WeightSpec::laguerre_h2(int n, double nu) {
    WeightSpec w;
    w.n = n;
    w.nu = nu;
    w.family = Family::laguerre_h2;
    return w;
}

WeightSpec WeightSpec::laguerre_m(int n, double nu, double scale) {
    WeightSpec w;
    w.space = Space::M;
    w.n = n;
    w.nu = nu;
    w.family = Family::laguerre_m;
    w.scale = scale;
    return w;
}

WeightSpec WeightSpec::polya_product(int n, double gamma, std::vector<double> deltas, Support support) {
    WeightSpec w;
    w.n = n;
    w.family = Family::polya_product;
    w.gamma = gamma;
    w.deltas = std::move(deltas);
    w.support = support;
    return w;
}

WeightSpec WeightSpec::polya_product_m(int n, double nu, std::vector<double> deltas, double shift) {
    WeightSpec w;
    w.space = Space::M;
    w.n = n;
    w.nu = nu;
    w.family = Family::polya_product_m;
    w.deltas = std::move(deltas);
    w.shift = shift;
    return w;
}

bool admissible_nu(double nu) {
    if (nu == -0.5 || nu == 0.5) return true;
    return nu >= 0.0 && nu == std::floor(nu) && nu < 1e6;
}

void validate(const WeightSpec& w) {
    require(w.n >= 1, "n must be >= 1");
    const bool h2_family = on_h2(w.family);
    require(h2_family == (w.space == Space::H2),
            "family " + to_string(w.family) + " does not live on space " + to_string(w.space));
    if (w.space == Space::M) require(admissible_nu(w.nu), "nu must be -0.5, 0.5, or a nonnegative integer");
    for (double d : w.deltas) require(std::isfinite(d), "deltas must be finite");
    const int nz = nonzero_count(w.deltas);
    std::ostringstream need;
    need << "at least n+1 = " << w.n + 1 << " nonzero deltas";
    switch (w.family) {
        case Family::gaussian:
            require(w.variance > 0.0 && std::isfinite(w.variance), "variance must be positive");
            break;
        case Family::laguerre_h2:
            require(w.nu > -1.0 && std::isfinite(w.nu), "laguerre_h2 needs nu > -1");
            break;
        case Family::laguerre_m:
            require(w.scale > 0.0 && std::isfinite(w.scale), "scale must be positive");
            break;
        case Family::polya_product:
            if (w.support == Support::real) {
                require(w.gamma >= 0.0 && std::isfinite(w.gamma), "gamma must be >= 0");
                require(w.gamma > 0.0 || nz >= w.n + 1, "polya_product needs gamma > 0 or " + need.str());
            } else {
                require(w.gamma == 0.0, "gamma is not allowed with positive support");
                for (double d : w.deltas) require(d >= 0.0, "deltas must be >= 0 with positive support");
                require(nz >= w.n + 1, "polya_product with positive support needs " + need.str());
            }
            break;
        case Family::polya_product_m:
            for (double d : w.deltas) require(d >= 0.0, "polya_product_m deltas must be >= 0");
            require(nz >= 1, "polya_product_m needs a positive delta");
            require(w.shift >= 0.0 && std::isfinite(w.shift), "shift must be >= 0");
            require(w.shift > 0.0 || nz >= w.n + 1, "polya_product_m needs shift > 0 or " + need.str());
            break;
    }
}

cplx TransformModel::evaluate(cplx z) const {
    const WeightSpec& w = spec;
    switch (w.family) {
        case Family::gaussian:
            return std::sqrt(2.0 * pi * w.variance) * std::exp(-0.5 * w.variance * z * z);
        case Family::laguerre_h2: {
            const double a = w.alpha();
            const cplx base = 1.0 - I * z;
            if (std::abs(base) < 1e-12) throw DomainError("eval_transform: argument too close to the branch point");
            return std::exp(std::lgamma(a + 1.0)) * std::pow(base, -(a + 1.0));
        }
        case Family::laguerre_m:
            return std::tgamma(w.nu + 1.0) * std::pow(w.scale, w.nu + 1.0) * std::exp(-w.scale * z);
        case Family::polya_product: {
            cplx r = w.support == Support::real ? std::exp(-w.gamma * z * z) : cplx(1.0);
            double shift = 0.0;
            for (double d : w.deltas) {
                if (d == 0.0) continue;
                r *= pole_factor(1.0 - I * d * z);
                shift += d;
            }
            if (w.support == Support::real) r *= std::exp(-I * shift * z);
            return r;
        }
        case Family::polya_product_m: {
            cplx r = std::exp(-w.shift * z);
            for (double d : w.deltas)
                if (d != 0.0) r *= pole_factor(1.0 + d * z);
            return r;
        }
    }
    return 0.0;
}

double TransformModel::holomorphy_radius() const {
    switch (spec.family) {
        case Family::gaussian:
        case Family::laguerre_m: return inf;
        case Family::laguerre_h2: return 1.0;
        case Family::polya_product:
        case Family::polya_product_m: {
            const double m = max_abs(spec.deltas);
            return m > 0.0 ? 1.0 / m : inf;
        }
    }
    return inf;
}

double TransformModel::value_at_zero() const {
    switch (spec.family) {
        case Family::gaussian: return std::sqrt(2.0 * pi * spec.variance);
        case Family::laguerre_h2: return std::exp(std::lgamma(spec.alpha() + 1.0));
        case Family::laguerre_m: return std::tgamma(spec.nu + 1.0) * std::pow(spec.scale, spec.nu + 1.0);
        case Family::polya_product:
        case Family::polya_product_m: return 1.0;
    }
    return 1.0;
}

std::vector<cplx> TransformModel::log_taylor(int order) const {
    std::vector<cplx> g(order + 1, 0.0);
    const WeightSpec& w = spec;
    switch (w.family) {
        case Family::gaussian:
            if (order >= 2) g[2] = -0.5 * w.variance;
            break;
        case Family::laguerre_h2: {
            cplx ik = 1.0;
            for (int k = 1; k <= order; ++k) {
                ik *= I;
                g[k] = (w.alpha() + 1.0) * ik / static_cast<double>(k);
            }
            break;
        }
        case Family::laguerre_m:
            if (order >= 1) g[1] = -w.scale;
            break;
        case Family::polya_product: {
            const int first = w.support == Support::real ? 2 : 1;
            if (w.support == Support::real && order >= 2) g[2] = -w.gamma;
            for (double d : w.deltas) {
                cplx p = 1.0;
                for (int k = 1; k <= order; ++k) {
                    p *= I * d;
                    if (k >= first) g[k] += p / static_cast<double>(k);
                }
            }
            break;
        }
        case Family::polya_product_m: {
            if (order >= 1) g[1] = -w.shift;
            for (double d : w.deltas) {
                double p = 1.0;
                for (int k = 1; k <= order; ++k) {
                    p *= -d;
                    g[k] += p / k;
                }
            }
            break;
        }
    }
    return g;
}

namespace {

// exp of a series with zero constant term, scaled by c0.
std::vector<cplx> exp_series(const std::vector<cplx>& g, int order, cplx c0) {
    std::vector<cplx> a(order + 1, 0.0);
    a[0] = 1.0;
    for (int m = 1; m <= order; ++m) {
        cplx s = 0.0;
        for (int k = 1; k <= m && k < static_cast<int>(g.size()); ++k) s += static_cast<double>(k) * g[k] * a[m - k];
        a[m] = s / static_cast<double>(m);
    }
    for (auto& x : a) x *= c0;
    return a;
}

}  // namespace

std::vector<cplx> TransformModel::taylor(int order) const {
    return exp_series(log_taylor(order), order, value_at_zero());
}

TransformModel transform_model(const WeightSpec& w) { return TransformModel{w}; }

ReciprocalSeries reciprocal_taylor(const WeightSpec& w, int order) {
    const TransformModel m = transform_model(w);
    const int top = std::max(order - 1, 0);
    std::vector<cplx> g = m.log_taylor(top);
    for (auto& x : g) x = -x;
    const std::vector<cplx> c = exp_series(g, top, 1.0 / m.value_at_zero());
    ReciprocalSeries r;
    r.space = w.space;
    r.b.resize(order);
    const cplx step = w.space == Space::H2 ? -I : cplx(-1.0);
    cplx sign = 1.0;
    double fact = 1.0;
    for (int l = 0; l < order; ++l) {
        if (l > 0) {
            sign *= step;
            fact *= l;
        }
        r.b[l] = sign * fact * c[l];
    }
    return r;
}

std::vector<cplx> series_inverse(const std::vector<cplx>& a, int order) {
    if (a.empty() || a[0] == 0.0) throw DomainError("series_inverse: zero constant term");
    std::vector<cplx> c(order, 0.0);
    if (order == 0) return c;
    c[0] = 1.0 / a[0];
    for (int m = 1; m < order; ++m) {
        cplx s = 0.0;
        for (int k = 1; k <= m && k < static_cast<int>(a.size()); ++k) s += a[k] * c[m - k];
        c[m] = -s * c[0];
    }
    return c;
}

std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b, int order) {
    std::vector<cplx> c(order, 0.0);
    for (int i = 0; i < order && i < static_cast<int>(a.size()); ++i)
        for (int j = 0; i + j < order && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
    return c;
}

cplx eval_transform(const WeightSpec& w, cplx z) { return transform_model(w).evaluate(z); }

double eval_weight_reduced(const WeightSpec& w, double x) {
    switch (w.family) {
        case Family::laguerre_m: return x < 0.0 ? 0.0 : std::exp(-x / w.scale);
        case Family::polya_product_m: return x < 0.0 ? 0.0 : laguerre_mixture(w).reduced(x);
        default: return eval_weight(w, x);
    }
}

double eval_weight(const WeightSpec& w, double x) {
    switch (w.family) {
        case Family::gaussian: return std::exp(-0.5 * x * x / w.variance);
        case Family::laguerre_h2: return x < 0.0 ? 0.0 : std::pow(x, w.alpha()) * std::exp(-x);
        case Family::laguerre_m:
        case Family::polya_product_m: return x < 0.0 ? 0.0 : std::pow(x, w.nu) * eval_weight_reduced(w, x);
        case Family::polya_product: {
            double q = 0.0;
            fourier_inverse(w, x, std::span<double>(&q, 1), Route::series);
            return q;
        }
    }
    return 0.0;
}

void one_point_weights_reduced(const WeightSpec& w, double x, std::span<double> out) {
    if (w.space != Space::M) throw UsageError("one_point_weights_reduced: M-space weights only");
    if (x < 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    if (w.family == Family::polya_product_m) {
        laguerre_mixture(w).reduced_weights(x, out);
        return;
    }
    const int count = static_cast<int>(out.size());
    if (count == 0) return;
    const double t = x / w.scale;
    laguerre_monic_all(count - 1, w.nu, t, out);
    const double e = std::exp(-t);
    double sp = 1.0;
    for (int j = 0; j < count; ++j) {
        out[j] *= sp * e;
        sp /= w.scale;
    }
}

void one_point_weights(const WeightSpec& w, double x, std::span<double> out) {
    const int count = static_cast<int>(out.size());
    if (count == 0) return;
    switch (w.family) {
        case Family::gaussian: {
            const double sv = std::sqrt(w.variance);
            const double t = x / sv;
            hermite_monic_all(count - 1, t, out);
            const double e = std::exp(-0.5 * t * t);
            double sp = 1.0;
            for (int j = 0; j < count; ++j) {
                out[j] *= sp * e;
                sp /= sv;
            }
            return;
        }
        case Family::laguerre_h2: {
            if (x < 0.0) {
                std::fill(out.begin(), out.end(), 0.0);
                return;
            }
            const double a = w.alpha();
            const double e = std::exp(-x);
            for (int j = 0; j < count; ++j) out[j] = laguerre_monic(j, a - j, x) * std::pow(x, a - j) * e;
            return;
        }
        case Family::polya_product:
            fourier_inverse(w, x, out, Route::series);
            return;
        case Family::laguerre_m:
        case Family::polya_product_m: {
            one_point_weights_reduced(w, x, out);
            const double p = x < 0.0 ? 0.0 : std::pow(x, w.nu);
            for (double& v : out) v *= p;
            return;
        }
    }
}

double one_point_weight(const WeightSpec& w, int j, double x) {
    if (j < 0) throw UsageError("one_point_weight: negative index");
    std::vector<double> buf(j + 1);
    one_point_weights(w, x, buf);
    return buf[j];
}

Domain support_domain(const WeightSpec& w) {
    Domain d;
    switch (w.family) {
        case Family::gaussian:
            d.scale = std::sqrt(w.variance);
            d.decay = Decay::gaussian;
            break;
        case Family::laguerre_h2:
            d.lower = 0.0;
            d.endpoint = Endpoint::algebraic;
            d.scale = std::max(1.0, w.alpha() + 1.0);
            break;
        case Family::laguerre_m:
            d.lower = 0.0;
            d.endpoint = Endpoint::algebraic;
            d.scale = w.scale * std::max(1.0, w.nu + 1.0);
            break;
        case Family::polya_product: {
            const double spread = std::max(max_abs(w.deltas), std::sqrt(w.gamma));
            d.scale = std::max(spread, 1e-3);
            if (w.support == Support::positive) {
                d.lower = 0.0;
                d.endpoint = Endpoint::algebraic;
            } else if (w.gamma > 0.0) {
                d.decay = Decay::gaussian;
            } else {
                const bool any_negative = std::any_of(w.deltas.begin(), w.deltas.end(), [](double x) { return x < 0.0; });
                const double edge = -sum_of(w.deltas);
                if (any_negative) {
                    d.breaks.push_back(edge);
                } else {
                    d.lower = edge;
                }
                d.endpoint = Endpoint::algebraic;
            }
            break;
        }
        case Family::polya_product_m:
            d.lower = 0.0;
            d.endpoint = Endpoint::algebraic;
            d.scale = std::max(w.shift + max_abs(w.deltas), 1e-3);
            break;
    }
    return d;
}

Domain convolution_domain(const Domain& d1, const Domain& d2, Space space) {
    auto anchor = [](const Domain& d) {
        if (std::isfinite(d.lower)) return d.lower;
        if (!d.breaks.empty()) return *std::min_element(d.breaks.begin(), d.breaks.end());
        return 0.0;
    };
    Domain d;
    d.scale = std::max(d1.scale, d2.scale);
    d.decay = (d1.decay == Decay::gaussian || d2.decay == Decay::gaussian) ? Decay::gaussian : Decay::exponential;
    if (space == Space::M) {
        d.lower = 0.0;
        d.endpoint = Endpoint::algebraic;
        return d;
    }
    if (std::isfinite(d1.lower) && std::isfinite(d2.lower)) {
        d.lower = d1.lower + d2.lower;
        d.endpoint = Endpoint::algebraic;
        return d;
    }
    d.breaks.push_back(anchor(d1) + anchor(d2));
    return d;
}

double convolve(const WeightSpec& w1, const WeightSpec& w2, double x) {
    if (w1.space != w2.space) throw UsageError("convolve: weights live on different spaces");
    if (w1.space == Space::M && w1.nu != w2.nu) throw UsageError("convolve: M-space weights need the same nu");
    Domain dom = support_domain(w1);
    if (w1.space == Space::H2) {
        const Domain d2 = support_domain(w2);
        if (std::isfinite(d2.lower)) dom.breaks.push_back(x - d2.lower);
        for (double b : d2.breaks) dom.breaks.push_back(x - b);
        if (!dom.breaks.empty() && dom.endpoint == Endpoint::smooth) dom.endpoint = Endpoint::algebraic;
        return integrate_domain(dom, [&](double t) { return eval_weight(w1, t) * eval_weight(w2, x - t); }).value;
    }
    const double len = support_domain(w2).scale;
    const double inner = integrate_domain(dom, [&](double u) {
        const double wu = eval_weight(w1, u);
        if (wu == 0.0) return 0.0;
        return wu * radial_average(w1.nu, u, x, [&](double r) { return eval_weight_reduced(w2, r); }, len);
    }).value;
    return (x == 0.0 && w1.nu != 0.0) ? (w1.nu > 0.0 ? 0.0 : inf) : std::pow(x, w1.nu) * inner;
}

std::optional<std::pair<WeightSpec, double>> combine(const WeightSpec& w1, const WeightSpec& w2) {
    if (w1.space != w2.space) return std::nullopt;
    if (w1.family == Family::gaussian && w2.family == Family::gaussian) {
        const double v = w1.variance + w2.variance;
        return std::pair{WeightSpec::gaussian(w1.n, v), std::sqrt(2.0 * pi * w1.variance * w2.variance / v)};
    }
    if (w1.family == Family::polya_product && w2.family == Family::polya_product && w1.support == w2.support) {
        WeightSpec r = w1;
        r.gamma += w2.gamma;
        r.deltas.insert(r.deltas.end(), w2.deltas.begin(), w2.deltas.end());
        return std::pair{r, 1.0};
    }
    auto gauss_product = [](const WeightSpec& g, const WeightSpec& p) -> std::optional<std::pair<WeightSpec, double>> {
        if (p.support != Support::real) return std::nullopt;
        WeightSpec r = p;
        r.n = g.n;
        r.gamma += 0.5 * g.variance;
        return std::pair{r, std::sqrt(2.0 * pi * g.variance)};
    };
    if (w1.family == Family::gaussian && w2.family == Family::polya_product) return gauss_product(w1, w2);
    if (w2.family == Family::gaussian && w1.family == Family::polya_product) {
        auto r = gauss_product(w2, w1);
        if (r) r->first.n = w1.n;
        return r;
    }
    if (w1.nu != w2.nu) return std::nullopt;
    // M transforms of laguerre_m are Gamma(nu+1) s^{nu+1} e^{-s z}
    const double g1 = std::tgamma(w1.nu + 1.0);
    if (w1.family == Family::laguerre_m && w2.family == Family::laguerre_m) {
        const double s = w1.scale + w2.scale;
        const double factor = g1 * std::pow(w1.scale * w2.scale / s, w1.nu + 1.0);
        return std::pair{WeightSpec::laguerre_m(w1.n, w1.nu, s), factor};
    }
    if (w1.family == Family::polya_product_m && w2.family == Family::polya_product_m) {
        WeightSpec r = w1;
        r.shift += w2.shift;
        r.deltas.insert(r.deltas.end(), w2.deltas.begin(), w2.deltas.end());
        return std::pair{r, 1.0};
    }
    auto absorb = [&](const WeightSpec& p, const WeightSpec& l) {
        WeightSpec r = p;
        r.n = w1.n;
        r.shift += l.scale;
        return std::pair{r, g1 * std::pow(l.scale, w1.nu + 1.0)};
    };
    if (w1.family == Family::polya_product_m && w2.family == Family::laguerre_m) return absorb(w1, w2);
    if (w2.family == Family::polya_product_m && w1.family == Family::laguerre_m) return absorb(w2, w1);
    return std::nullopt;
}

}  // namespace polya
