#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polya {

// Coefficients in ascending degree.
template <class T>
struct PolynomialCoeffs {
    std::vector<T> coeffs;

    PolynomialCoeffs() = default;
    explicit PolynomialCoeffs(std::vector<T> c) : coeffs(std::move(c)) {}

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool empty() const { return coeffs.empty(); }
    T operator[](std::size_t k) const { return k < coeffs.size() ? coeffs[k] : T{}; }

    template <class X>
    auto operator()(X x) const {
        using R = decltype(T{} * x);
        R acc{};
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    }

    bool operator==(const PolynomialCoeffs&) const = default;
};

using Polynomial = PolynomialCoeffs<double>;
using ComplexPolynomial = PolynomialCoeffs<std::complex<double>>;

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(double s, const Polynomial& a);
Polynomial derivative(const Polynomial& p);
double eval_termwise(const Polynomial& p, double x);

// Lagrange-type basis: Lambda_j(y) = prod_{l != j} (x_l - y) / (x_l - x_j).
std::vector<Polynomial> lagrange_basis(const std::vector<double>& nodes);

}  // namespace polya
