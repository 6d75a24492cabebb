#include <cmath>
#include <memory>
#include <mutex>
#include <valarray>

#include "polya/ensembles.hpp"
#include "polya/errors.hpp"
#include "polya/specfun.hpp"
#include "weight_banks.hpp"

namespace polya {

namespace {

using CVec = std::valarray<cplx>;
const cplx I(0.0, 1.0);

// Everything the contour route needs, built once per evaluator.
struct ContourState {
    WeightSpec w;
    int n = 0;
    bool mapped = false;           // p_j = sum_m coef(j, m) T[y^m] instead of the direct formula
    RMatrix coef;
    std::vector<double> moments;   // mu_m
    CircleContour circle;
    detail::Bank bank;

    void p_values(double yp, std::span<double> out) const;
};

double moment(Space space, double nu, int m) {
    HalfLineOptions opt;
    if (space == Space::H2) {
        return half_line_integrate([m](double x) { return std::pow(x, m) * std::exp(-x); }, opt).value;
    }
    opt.endpoint = Endpoint::algebraic;
    opt.grade_levels = 24;
    return half_line_integrate([m, nu](double x) {
        if (x <= 0.0) return 0.0;
        return 2.0 * std::pow(x, 0.5 * nu + m) * bessel_k(nu, 2.0 * std::sqrt(x));
    }, opt).value;
}

void ContourState::p_values(double yp, std::span<double> out) const {
    const TransformModel model = transform_model(w);
    const bool h2 = w.space == Space::H2;
    const double g1 = h2 ? 1.0 : std::tgamma(w.nu + 1.0);
    // [z^m] E(yp z) / F(z) for m < n
    auto g = [&](cplx z) {
        cplx e = h2 ? std::exp(I * yp * z) / model.evaluate(z) : bessel_phi(w.nu, yp * z) / model.evaluate(-z);
        CVec v(n);
        cplx zp = 1.0 / z;
        for (int m = 0; m < n; ++m) {
            v[m] = e * zp;
            zp /= z;
        }
        return v;
    };
    const CVec c = contour_integrate(circle, g).value;
    std::vector<double> t(n);
    cplx phase = 1.0;
    for (int m = 0; m < n; ++m) {
        t[m] = (phase * c[m]).real();
        if (h2) phase *= -I;
    }
    if (!mapped) {
        const double kappa = pair_scale(w);
        for (int j = 0; j < n; ++j) out[j] = kappa * t[j];
        return;
    }
    for (int m = 0; m < n; ++m) t[m] *= moments[m] / g1;
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int m = 0; m < n; ++m) acc += coef(j, m) * t[m];
        out[j] = acc;
    }
}

std::shared_ptr<const ContourState> build_contour_state(const EnsembleConfig& cfg) {
    auto st = std::make_shared<ContourState>();
    st->w = cfg.weight;
    st->n = cfg.n();
    const double reach = transform_model(cfg.weight).holomorphy_radius();
    st->circle.radius = std::isfinite(reach) ? 0.5 * reach : 0.5;
    auto fill_coef = [&](const std::vector<Polynomial>& polys) {
        st->mapped = true;
        st->coef = RMatrix(st->n, st->n);
        for (int j = 0; j < st->n; ++j)
            for (int m = 0; m < st->n; ++m) st->coef(j, m) = polys[j][m];
        for (int m = 0; m < st->n; ++m) st->moments.push_back(moment(cfg.space(), cfg.nu(), m));
    };
    switch (cfg.shift.mode) {
        case ShiftConfig::Mode::none:
            st->bank = detail::unshifted_bank(cfg.weight, Route::contour);
            break;
        case ShiftConfig::Mode::fixed:
            fill_coef(lagrange_basis(cfg.shift.x));
            st->bank = detail::fixed_bank(cfg.weight, cfg.shift.x, Route::contour);
            break;
        case ShiftConfig::Mode::ensemble: {
            BiorthOptions inner;
            inner.verify = false;
            const BiorthPair second = biorth(*cfg.shift.second, inner);
            fill_coef(second.polys);
            st->bank = detail::convolved_bank(cfg.weight, second, Route::contour);
            break;
        }
    }
    return st;
}

std::mutex contour_mu;

std::shared_ptr<const ContourState> contour_state(const KernelEvaluator& k) {
    // keyed by config; evaluators are immutable so the state never goes stale
    static std::vector<std::pair<EnsembleConfig, std::shared_ptr<const ContourState>>> cache;
    std::lock_guard<std::mutex> lock(contour_mu);
    for (const auto& [cfg, st] : cache)
        if (cfg == k.config()) return st;
    auto st = build_contour_state(k.config());
    if (cache.size() > 64) cache.erase(cache.begin());
    cache.emplace_back(k.config(), st);
    return st;
}

}  // namespace

KernelEvaluator::KernelEvaluator(EnsembleConfig cfg, Strategy strategy, BiorthOptions opt)
    : cfg_(std::move(cfg)), strategy_(strategy) {
    opt.verify = false;
    pair_ = biorth(cfg_, opt);
}

double KernelEvaluator::operator()(double yp, double y) const {
    return strategy_ == Strategy::series ? kernel_eval(*this, yp, y) : kernel_contour_eval(*this, yp, y);
}

double kernel_eval(const KernelEvaluator& k, double yp, double y) {
    const BiorthPair& p = k.pair();
    const int n = p.size();
    std::vector<double> q(n);
    p.weights(y, q);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += p.polys[j](yp) * q[j];
    return acc;
}

std::vector<double> kernel_contour_eval(const KernelEvaluator& k, double yp, std::span<const double> ys) {
    const auto st = contour_state(k);
    const int n = st->n;
    std::vector<double> pv(n), q(n);
    st->p_values(yp, pv);
    std::vector<double> out;
    const bool m_space = k.config().space() == Space::M;
    const double nu = k.config().nu();
    for (double y : ys) {
        st->bank.eval(y, q);
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += pv[j] * q[j];
        if (m_space && nu != 0.0) acc *= std::pow(y, nu);
        out.push_back(acc);
    }
    return out;
}

double kernel_contour_eval(const KernelEvaluator& k, double yp, double y) {
    return kernel_contour_eval(k, yp, std::span<const double>(&y, 1))[0];
}

double correlation_rk(const KernelEvaluator& k, std::span<const double> points) {
    const std::size_t m = points.size();
    if (static_cast<int>(m) > k.config().n()) throw UsageError("correlation_rk: k must not exceed n");
    if (m == 0) return 1.0;
    RMatrix a(m, m);
    for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) a(b, c) = k(points[b], points[c]);
    const double d = determinant(a);
    if (d < -1e-10) throw AccuracyError("correlation_rk: negative correlation " + std::to_string(d));
    return d;
}

}  // namespace polya
