#include "weight_banks.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <valarray>

#include "polya/errors.hpp"
#include "polya/specfun.hpp"

namespace polya::detail {

namespace {

using RVec = std::valarray<double>;

bool smooth_on_line(const Domain& d) { return !std::isfinite(d.lower) && d.breaks.empty(); }

Domain fixed_domain(const WeightSpec& w, const std::vector<double>& x) {
    const Domain base = support_domain(w);
    Domain d = base;
    d.breaks.clear();
    if (w.space == Space::M) {
        d.lower = 0.0;
        d.endpoint = Endpoint::algebraic;
        for (double xj : x) d.breaks.push_back(xj);
        return d;
    }
    const double xmin = *std::min_element(x.begin(), x.end());
    if (std::isfinite(base.lower)) d.lower = base.lower + xmin;
    for (double xj : x) {
        if (std::isfinite(base.lower) && xj != xmin) d.breaks.push_back(base.lower + xj);
        for (double b : base.breaks) d.breaks.push_back(b + xj);
        if (!std::isfinite(base.lower) && base.breaks.empty()) d.breaks.push_back(xj);
    }
    return d;
}

}  // namespace

double weight_value(const WeightSpec& w, double x, Route route) {
    if (route == Route::series) return w.space == Space::M ? eval_weight_reduced(w, x) : eval_weight(w, x);
    double q = 0.0;
    if (w.space == Space::M) {
        if (x < 0.0) return 0.0;
        hankel_inverse_reduced(w, x, std::span<double>(&q, 1));
    } else {
        fourier_inverse(w, x, std::span<double>(&q, 1), Route::contour);
    }
    return q;
}

std::vector<Polynomial> unshifted_polys(const WeightSpec& w) {
    const int n = w.n;
    const ReciprocalSeries b = reciprocal_taylor(w, n);
    const double kappa = pair_scale(w);
    std::vector<Polynomial> out;
    double norm = 1.0;
    for (int j = 0; j < n; ++j) {
        if (j > 0) norm *= w.space == Space::H2 ? j : j * (w.nu + j);
        std::vector<double> mono(j + 1, 0.0);
        mono[j] = 1.0;
        out.push_back((kappa / norm) * apply_reciprocal_map(b, w.nu, Polynomial(mono)));
    }
    return out;
}

Bank unshifted_bank(const WeightSpec& w, Route route) {
    Bank bank;
    bank.domain = support_domain(w);
    const double inv_kappa = 1.0 / pair_scale(w);
    if (w.space == Space::H2) {
        bank.eval = [w, route, inv_kappa](double y, std::span<double> out) {
            if (route == Route::series)
                one_point_weights(w, y, out);
            else
                fourier_inverse(w, y, out, Route::contour);
            for (double& v : out) v *= inv_kappa;
        };
    } else {
        bank.eval = [w, route, inv_kappa](double y, std::span<double> out) {
            if (route == Route::series)
                one_point_weights_reduced(w, y, out);
            else
                hankel_inverse_reduced(w, y, out);
            for (double& v : out) v *= inv_kappa;
        };
    }
    return bank;
}

Bank fixed_bank(const WeightSpec& w, const std::vector<double>& x, Route route) {
    Bank bank;
    bank.domain = fixed_domain(w, x);
    if (w.space == Space::H2) {
        bank.eval = [w, x, route](double y, std::span<double> out) {
            for (std::size_t j = 0; j < x.size(); ++j) out[j] = weight_value(w, y - x[j], route);
        };
        return bank;
    }
    if (route == Route::series) {
        if (w.family == Family::laguerre_m) {
            bank.eval = [w, x](double y, std::span<double> out) {
                for (std::size_t j = 0; j < x.size(); ++j) out[j] = laguerre_fixed_reduced(w.nu, w.scale, x[j], y);
            };
        } else {
            const LaguerreMixture* mix = &laguerre_mixture(w);
            bank.eval = [mix, x](double y, std::span<double> out) {
                for (std::size_t j = 0; j < x.size(); ++j) out[j] = mix->fixed_shift(x[j], y);
            };
        }
        return bank;
    }
    const double len = support_domain(w).scale;
    bank.eval = [w, x, len](double y, std::span<double> out) {
        for (std::size_t j = 0; j < x.size(); ++j)
            out[j] = radial_average(w.nu, x[j], y, [&](double r) { return weight_value(w, r, Route::contour); }, len);
    };
    return bank;
}

Bank convolved_bank(const WeightSpec& w, const BiorthPair& second, Route route) {
    Bank bank;
    const Domain dom1 = support_domain(w);
    bank.domain = convolution_domain(dom1, second.domain, w.space);
    const int n = second.size();
    auto sec = std::make_shared<BiorthPair>(second);

    if (w.space == Space::H2 && !smooth_on_line(second.domain)) {
        // the second weights have kinks: integrate adaptively with the kinks as breakpoints
        const Domain d2 = second.domain;
        bank.eval = [w, sec, dom1, d2, n, route](double y, std::span<double> out) {
            Domain d = dom1;
            if (std::isfinite(d2.lower)) d.breaks.push_back(y - d2.lower);
            for (double b : d2.breaks) d.breaks.push_back(y - b);
            d.endpoint = Endpoint::algebraic;
            std::vector<double> buf(n);
            const RVec r = integrate_domain(d, [&](double t) {
                RVec v(0.0, n);
                if (std::isfinite(d2.lower) && y - t < d2.lower) return v;
                const double wt = weight_value(w, t, route);
                if (wt == 0.0) return v;
                sec->weights(y - t, buf);
                for (int j = 0; j < n; ++j) v[j] = wt * buf[j];
                return v;
            }, 48).value;
            for (int j = 0; j < n; ++j) out[j] = r[j];
        };
        return bank;
    }

    Domain grid = dom1;
    if (w.space == Space::H2) grid.max_width = 3.0 * second.domain.scale;  // resolve the narrower factor
    auto table = std::make_shared<NodeSet>(tabulate_domain(
        grid,
        [&](double t) {
            const double v = weight_value(w, t, route);
            return w.space == Space::M ? std::pow(t, w.nu) * v : v;
        },
        48, 1e-15));
    for (std::size_t k = 0; k < table->size(); ++k) table->weight[k] *= table->value[k];

    if (w.space == Space::H2) {
        bank.eval = [sec, table, n](double y, std::span<double> out) {
            std::fill(out.begin(), out.end(), 0.0);
            std::vector<double> buf(n);
            for (std::size_t k = 0; k < table->size(); ++k) {
                const double c = table->weight[k];
                if (c == 0.0) continue;
                sec->weights(y - table->node[k], buf);
                for (int j = 0; j < n; ++j) out[j] += c * buf[j];
            }
        };
        return bank;
    }
    const double nu = w.nu;
    const double len = second.domain.scale;
    bank.eval = [sec, table, n, nu, len](double y, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        std::vector<double> buf(n);
        auto inner = [&](double r) {
            sec->reduced_weights(r, buf);
            RVec v(n);
            for (int j = 0; j < n; ++j) v[j] = buf[j];
            return v;
        };
        for (std::size_t k = 0; k < table->size(); ++k) {
            const double c = table->weight[k];
            if (c == 0.0) continue;
            const RVec a = radial_average(nu, table->node[k], y, inner, len);
            for (int j = 0; j < n; ++j) out[j] += c * a[j];
        }
    };
    return bank;
}

bool closed_convolved_bank(const WeightSpec& w, const WeightSpec& sigma, Bank& out) {
    auto merged = combine(w, sigma);
    if (!merged) return false;
    WeightSpec combined = merged->first;
    combined.n = w.n;
    const double factor = merged->second / pair_scale(sigma);
    out.domain = support_domain(combined);
    if (w.space == Space::H2) {
        out.eval = [combined, factor](double y, std::span<double> q) {
            one_point_weights(combined, y, q);
            for (double& v : q) v *= factor;
        };
    } else {
        out.eval = [combined, factor](double y, std::span<double> q) {
            one_point_weights_reduced(combined, y, q);
            for (double& v : q) v *= factor;
        };
    }
    return true;
}

}  // namespace polya::detail
