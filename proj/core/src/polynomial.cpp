#include "polya/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "polya/errors.hpp"

namespace polya {

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) c[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) c[k] += b.coeffs[k];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
    Polynomial r = a;
    for (auto& c : r.coeffs) c *= s;
    return r;
}

Polynomial derivative(const Polynomial& p) {
    if (p.coeffs.size() <= 1) return Polynomial({0.0});
    std::vector<double> c(p.coeffs.size() - 1);
    for (std::size_t k = 1; k < p.coeffs.size(); ++k) c[k - 1] = static_cast<double>(k) * p.coeffs[k];
    return Polynomial(std::move(c));
}

double eval_termwise(const Polynomial& p, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.coeffs.size(); ++k) s += p.coeffs[k] * std::pow(x, static_cast<double>(k));
    return s;
}

std::vector<Polynomial> lagrange_basis(const std::vector<double>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<Polynomial> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        Polynomial p({1.0});
        for (std::size_t l = 0; l < n; ++l) {
            if (l == j) continue;
            const double gap = nodes[l] - nodes[j];
            if (gap == 0.0) throw UsageError("lagrange_basis: repeated node");
            p = p * Polynomial({nodes[l] / gap, -1.0 / gap});
        }
        basis.push_back(std::move(p));
    }
    return basis;
}

}  // namespace polya
