#include "polya/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <valarray>

#include "polya/errors.hpp"
#include "weight_banks.hpp"

namespace polya {

ShiftConfig ShiftConfig::fixed(std::vector<double> x) {
    ShiftConfig s;
    s.mode = Mode::fixed;
    s.x = std::move(x);
    return s;
}

ShiftConfig ShiftConfig::ensemble(EnsembleConfig second) {
    ShiftConfig s;
    s.mode = Mode::ensemble;
    s.second = std::make_shared<const EnsembleConfig>(std::move(second));
    return s;
}

bool ShiftConfig::operator==(const ShiftConfig& o) const {
    if (mode != o.mode || x != o.x) return false;
    if (mode != Mode::ensemble) return true;
    if (!second || !o.second) return second == o.second;
    return *second == *o.second;
}

void validate(const EnsembleConfig& cfg) {
    validate(cfg.weight);
    const int n = cfg.n();
    switch (cfg.shift.mode) {
        case ShiftConfig::Mode::none: break;
        case ShiftConfig::Mode::fixed: {
            const auto& x = cfg.shift.x;
            if (static_cast<int>(x.size()) != n)
                throw UsageError("fixed shift needs n = " + std::to_string(n) + " eigenvalues, got " +
                                 std::to_string(x.size()));
            std::vector<double> s = x;
            std::sort(s.begin(), s.end());
            for (double v : s)
                if (!std::isfinite(v)) throw UsageError("fixed shift eigenvalues must be finite");
            for (std::size_t k = 1; k < s.size(); ++k)
                if (s[k] - s[k - 1] <= 1e-8) throw UsageError("fixed shift eigenvalues must be distinct (gap > 1e-8)");
            if (cfg.space() == Space::M && s.front() <= 0.0)
                throw UsageError("fixed shift eigenvalues must be positive on M");
            break;
        }
        case ShiftConfig::Mode::ensemble: {
            if (!cfg.shift.second) throw UsageError("ensemble shift without a second ensemble");
            const EnsembleConfig& sec = *cfg.shift.second;
            if (sec.space() != cfg.space()) throw UsageError("second ensemble lives on a different space");
            if (sec.n() != n) throw UsageError("second ensemble has a different n");
            if (cfg.space() == Space::M && sec.nu() != cfg.nu()) throw UsageError("second ensemble has a different nu");
            validate(sec);
            break;
        }
    }
}

void BiorthPair::weights(double y, std::span<double> out) const {
    weight_fn(y, out);
    if (space != Space::M || nu == 0.0) return;
    const double p = y > 0.0 ? std::pow(y, nu) : (y == 0.0 && nu < 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    for (double& v : out) v *= p;
}

double BiorthPair::weight(int j, double y) const {
    std::vector<double> buf(size());
    weights(y, buf);
    return buf.at(j);
}

double vandermonde(std::span<const double> a) {
    double r = 1.0;
    for (std::size_t c = 0; c < a.size(); ++c)
        for (std::size_t b = 0; b < c; ++b) r *= a[c] - a[b];
    return r;
}

NormalizationConstants normalization_constants(int n, double nu) {
    if (n < 1) throw UsageError("normalization_constants: n must be >= 1");
    const double pi = std::numbers::pi;
    double log_c = -std::lgamma(n + 1.0);
    double log_star = log_c;
    for (int j = 0; j < n; ++j) {
        log_c += j * std::log(pi) - std::lgamma(j + 1.0);
        log_star += (2.0 * j + nu + 1.0) * std::log(pi) - std::lgamma(j + nu + 1.0) - std::lgamma(j + 1.0);
    }
    return {std::exp(log_c), std::exp(log_star)};
}

double pair_scale(const WeightSpec& w) {
    return w.family == Family::gaussian ? transform_model(w).value_at_zero() : 1.0;
}

Polynomial apply_reciprocal_map(const ReciprocalSeries& b, double nu, const Polynomial& f) {
    const int deg = f.degree();
    if (deg < 0) return f;
    if (static_cast<int>(b.b.size()) < deg + 1) throw UsageError("apply_reciprocal_map: series too short");
    std::vector<double> out(deg + 1, 0.0);
    for (int k = 0; k <= deg; ++k) {
        const double fk = f.coeffs[k];
        if (fk == 0.0) continue;
        double fall = 1.0;   // k!/(k-l)! times Gamma(nu+k+1)/Gamma(nu+k-l+1) on M
        double lfact = 1.0;  // l!
        for (int l = 0; l <= k; ++l) {
            if (l > 0) {
                fall *= (k - l + 1);
                if (b.space == Space::M) fall *= nu + k - l + 1;
                lfact *= l;
            }
            out[k - l] += fk * b.b[l].real() / lfact * fall;
        }
    }
    return Polynomial(out);
}

namespace {

void check_gram(const BiorthPair& pair, const BiorthOptions& opt) {
    if (!opt.verify) return;
    const RMatrix g = gram_matrix(pair);
    const double dev = gram_deviation(g);
    if (dev < opt.gram_tolerance) return;
    std::ostringstream msg;
    msg << "Gram matrix deviates from identity by " << dev << ":\n";
    msg.precision(6);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) msg << ' ' << g(r, c);
        msg << '\n';
    }
    throw AccuracyError(msg.str());
}

BiorthPair from_bank(const EnsembleConfig& cfg, std::vector<Polynomial> polys, detail::Bank bank, const BiorthOptions& opt) {
    BiorthPair p;
    p.space = cfg.space();
    p.nu = cfg.nu();
    p.polys = std::move(polys);
    p.weight_fn = std::move(bank.eval);
    p.domain = bank.domain;
    p.gram_tolerance = opt.gram_tolerance;
    check_gram(p, opt);
    return p;
}

}  // namespace

BiorthPair biorth_unshifted(const EnsembleConfig& cfg, const BiorthOptions& opt) {
    if (cfg.shift.mode != ShiftConfig::Mode::none) throw UsageError("biorth_unshifted: config has a shift");
    validate(cfg);
    return from_bank(cfg, detail::unshifted_polys(cfg.weight), detail::unshifted_bank(cfg.weight, Route::series), opt);
}

BiorthPair biorth_fixed(const EnsembleConfig& cfg, const BiorthOptions& opt) {
    if (cfg.shift.mode != ShiftConfig::Mode::fixed) throw UsageError("biorth_fixed: config has no fixed shift");
    validate(cfg);
    const ReciprocalSeries b = reciprocal_taylor(cfg.weight, cfg.n());
    std::vector<Polynomial> polys;
    for (const Polynomial& lam : lagrange_basis(cfg.shift.x)) polys.push_back(apply_reciprocal_map(b, cfg.nu(), lam));
    return from_bank(cfg, std::move(polys), detail::fixed_bank(cfg.weight, cfg.shift.x, Route::series), opt);
}

BiorthPair biorth_polyshift(const EnsembleConfig& cfg, const BiorthOptions& opt) {
    if (cfg.shift.mode != ShiftConfig::Mode::ensemble) throw UsageError("biorth_polyshift: config has no second ensemble");
    validate(cfg);
    const EnsembleConfig& sec = *cfg.shift.second;
    BiorthOptions inner = opt;
    inner.verify = false;
    const BiorthPair second = biorth(sec, inner);
    const ReciprocalSeries b = reciprocal_taylor(cfg.weight, cfg.n());
    std::vector<Polynomial> polys;
    for (const Polynomial& p : second.polys) polys.push_back(apply_reciprocal_map(b, cfg.nu(), p));
    detail::Bank bank;
    const bool closed = opt.closed_form_convolution && sec.shift.mode == ShiftConfig::Mode::none &&
                        detail::closed_convolved_bank(cfg.weight, sec.weight, bank);
    if (!closed) bank = detail::convolved_bank(cfg.weight, second, Route::series);
    return from_bank(cfg, std::move(polys), std::move(bank), opt);
}

BiorthPair biorth(const EnsembleConfig& cfg, const BiorthOptions& opt) {
    switch (cfg.shift.mode) {
        case ShiftConfig::Mode::none: return biorth_unshifted(cfg, opt);
        case ShiftConfig::Mode::fixed: return biorth_fixed(cfg, opt);
        case ShiftConfig::Mode::ensemble: return biorth_polyshift(cfg, opt);
    }
    return {};
}

RMatrix gram_matrix(const BiorthPair& pair) {
    const int n = pair.size();
    std::vector<double> q(n);
    const auto g = integrate_domain(pair.domain, [&](double y) {
        pair.weights(y, q);
        std::valarray<double> v(n * n);
        for (int l = 0; l < n; ++l) {
            const double pl = pair.polys[l](y);
            for (int m = 0; m < n; ++m) v[l * n + m] = pl * q[m];
        }
        return v;
    });
    RMatrix out(n, n);
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) out(l, m) = g.value[l * n + m];
    return out;
}

double gram_deviation(const RMatrix& g) {
    double d = 0.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) d = std::max(d, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
    return d;
}

}  // namespace polya
