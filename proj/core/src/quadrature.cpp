#include "polya/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "polya/linalg.hpp"

namespace polya {

namespace {

QuadratureRule build_legendre(int n) {
    QuadratureRule r;
    r.kind = RuleKind::gauss_legendre;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                // one more derivative at the converged point
                p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

// Golub-Welsch for the weight (1 - t^2)^{nu - 1/2}.
QuadratureRule build_gegenbauer(int n, double nu) {
    std::vector<double> d(n, 0.0), e(n > 1 ? n - 1 : 1, 0.0);
    for (int k = 1; k < n; ++k) {
        const double beta = k == 1 ? 1.0 / (2.0 * (nu + 1.0))
                                   : k * (k + 2.0 * nu - 1.0) / (4.0 * (k + nu) * (k + nu - 1.0));
        e[k - 1] = std::sqrt(beta);
    }
    const double mu0 = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(nu + 0.5) - std::lgamma(nu + 1.0));
    RMatrix z = RMatrix::identity(n);
    tridiagonal_ql(d, e, &z);
    QuadratureRule r;
    r.kind = RuleKind::gauss_gegenbauer;
    r.nu = nu;
    r.nodes = d;
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) r.weights[i] = mu0 * z(0, i) * z(0, i);
    // Symmetrize against rounding.
    for (int i = 0; i < n / 2; ++i) {
        const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
        const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

std::mutex cache_mutex;
std::map<int, std::unique_ptr<QuadratureRule>> legendre_cache;
std::map<std::pair<int, double>, std::unique_ptr<QuadratureRule>> gegenbauer_cache;

}  // namespace

const QuadratureRule& legendre_rule(int n) {
    if (n < 1) throw DomainError("legendre_rule: need at least one node");
    std::lock_guard lock(cache_mutex);
    auto& slot = legendre_cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_legendre(n));
    return *slot;
}

const QuadratureRule& gegenbauer_rule(int n, double nu) {
    if (n < 1) throw DomainError("gegenbauer_rule: need at least one node");
    if (!(nu > -0.5)) throw DomainError("gegenbauer_rule: requires nu > -1/2");
    std::lock_guard lock(cache_mutex);
    auto& slot = gegenbauer_cache[{n, nu}];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_gegenbauer(n, nu));
    return *slot;
}

}  // namespace polya
