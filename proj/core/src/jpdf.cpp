#include <algorithm>
#include <cmath>
#include <numeric>
#include <valarray>

#include "polya/ensembles.hpp"
#include "polya/errors.hpp"
#include "weight_banks.hpp"

namespace polya {

JointDensity::JointDensity(EnsembleConfig cfg) : cfg_(std::move(cfg)) {
    validate(cfg_);
    const int n = cfg_.n();
    const WeightSpec& w = cfg_.weight;
    const double f0 = transform_model(w).value_at_zero();
    double log_c = -std::lgamma(n + 1.0);
    switch (cfg_.shift.mode) {
        case ShiftConfig::Mode::none: {
            // Delta(x) det[D^j omega(x_k)] / (n! prod_j N_j F(0)^n)
            for (int j = 0; j < n; ++j) {
                log_c -= std::lgamma(j + 1.0) + std::log(f0);
                if (w.space == Space::M) log_c -= std::lgamma(w.nu + j + 1.0) - std::lgamma(w.nu + 1.0);
            }
            const WeightSpec ws = w;
            pair_.space = w.space;
            pair_.nu = w.nu;
            pair_.domain = support_domain(w);
            pair_.weight_fn = [ws](double y, std::span<double> out) {
                if (ws.space == Space::M)
                    one_point_weights_reduced(ws, y, out);
                else
                    one_point_weights(ws, y, out);
            };
            pair_.polys.resize(n);
            constant_ = std::exp(log_c);
            return;
        }
        case ShiftConfig::Mode::fixed: {
            // Delta(y) det[q_j(y_k)] / (n! Delta(x) F(0)^n)
            BiorthOptions opt;
            opt.verify = false;
            pair_ = biorth(cfg_, opt);
            log_c -= n * std::log(f0);
            constant_ = std::exp(log_c) / vandermonde(cfg_.shift.x);
            return;
        }
        case ShiftConfig::Mode::ensemble: {
            // Andreief: \int Delta(y) det[q_k(y_l)] dy = n! det[\int y^j q_k]
            BiorthOptions opt;
            opt.verify = false;
            pair_ = biorth(cfg_, opt);
            std::vector<double> q(n);
            const auto mom = integrate_domain(pair_.domain, [&](double y) {
                pair_.weights(y, q);
                std::valarray<double> v(n * n);
                double yj = 1.0;
                for (int j = 0; j < n; ++j) {
                    for (int k = 0; k < n; ++k) v[j * n + k] = yj * q[k];
                    yj *= y;
                }
                return v;
            }).value;
            RMatrix m(n, n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) m(j, k) = mom[j * n + k];
            constant_ = std::exp(log_c) / determinant(m);
            return;
        }
    }
}

double JointDensity::operator()(std::span<const double> x) const {
    const int n = cfg_.n();
    if (static_cast<int>(x.size()) != n) throw UsageError("jpdf_eval: need n points");
    const double delta = vandermonde(x);
    if (delta == 0.0) return 0.0;
    RMatrix a(n, n);
    std::vector<double> q(n);
    for (int k = 0; k < n; ++k) {
        pair_.weights(x[k], q);
        for (int j = 0; j < n; ++j) a(j, k) = q[j];
    }
    const double p = constant_ * delta * determinant(a);
    if (p < -1e-10) throw AccuracyError("jpdf_eval: negative density " + std::to_string(p) + " (weight not admissible?)");
    return p;
}

double jpdf_eval(const EnsembleConfig& cfg, std::span<const double> x) { return JointDensity(cfg)(x); }

double andreief_check(const std::vector<ScalarFn>& phi, const std::vector<ScalarFn>& psi, const Domain& dom) {
    const int n = static_cast<int>(phi.size());
    if (n == 0 || psi.size() != phi.size()) throw UsageError("andreief_check: need two families of equal size");
    if (n > 4) throw UsageError("andreief_check: n <= 4");

    RMatrix g(n, n);
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            g(b, c) = integrate_domain(dom, [&](double x) { return phi[b](x) * psi[c](x); }).value;
    const double rhs = determinant(g);

    const int per_panel[] = {64, 48, 24, 10};
    const NodeSet rule = tabulate_domain(dom, [&](double x) {
        double s = 0.0;
        for (int b = 0; b < n; ++b) s += std::abs(phi[b](x) * psi[b](x));
        return s;
    }, per_panel[n - 1], 1e-14);
    const std::size_t m = rule.size();
    std::vector<double> fp(n * m), fq(n * m);
    for (std::size_t i = 0; i < m; ++i)
        for (int b = 0; b < n; ++b) {
            fp[b * m + i] = phi[b](rule.node[i]);
            fq[b * m + i] = psi[b](rule.node[i]);
        }
    std::vector<std::size_t> idx(n, 0);
    RMatrix a(n, n), c(n, n);
    double lhs = 0.0;
    while (true) {
        double w = 1.0;
        for (int k = 0; k < n; ++k) {
            w *= rule.weight[idx[k]];
            for (int b = 0; b < n; ++b) {
                a(b, k) = fp[b * m + idx[k]];
                c(b, k) = fq[b * m + idx[k]];
            }
        }
        lhs += w * determinant(a) * determinant(c);
        int k = 0;
        while (k < n && ++idx[k] == m) idx[k++] = 0;
        if (k == n) break;
    }
    lhs /= std::tgamma(n + 1.0);
    return std::abs(lhs - rhs);
}

}  // namespace polya
