#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <valarray>
#include <vector>

#include "polya/errors.hpp"

namespace polya {

enum class RuleKind { gauss_legendre, gauss_gegenbauer };

struct QuadratureRule {
    std::vector<double> nodes;    // ascending on [-1, 1]
    std::vector<double> weights;  // positive
    RuleKind kind = RuleKind::gauss_legendre;
    double nu = 0.5;              // Gegenbauer index; weight (1-t^2)^{nu-1/2}
};

// Rules are built once per (kind, N, nu) and kept for the life of the process.
const QuadratureRule& legendre_rule(int n);
const QuadratureRule& gegenbauer_rule(int n, double nu);

template <class T>
struct QuadResult {
    T value;
    double error = 0.0;
};

// Magnitude used by the adaptive stopping rules.
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
template <class T>
double magnitude(const std::valarray<T>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

template <class T>
struct is_valarray : std::false_type {};
template <class T>
struct is_valarray<std::valarray<T>> : std::true_type {};

// s * v without valarray expression templates escaping.
template <class V>
V scaled(double s, V v) {
    if constexpr (is_valarray<V>::value) {
        v *= typename V::value_type(s);
        return v;
    } else {
        return s * v;
    }
}

template <class F>
auto apply_rule(const QuadratureRule& r, F&& f) {
    using V = std::decay_t<decltype(f(0.0))>;
    V acc = scaled(r.weights[0], V(f(r.nodes[0])));
    for (std::size_t i = 1; i < r.nodes.size(); ++i) acc += scaled(r.weights[i], V(f(r.nodes[i])));
    return acc;
}

template <class F>
auto gauss_legendre(int n, F&& f) {
    return apply_rule(legendre_rule(n), f);
}

template <class F>
auto gauss_gegenbauer(int n, double nu, F&& f) {
    if (!(nu > -0.5)) throw DomainError("gauss_gegenbauer: requires nu > -1/2");
    return apply_rule(gegenbauer_rule(n, nu), f);
}

// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
template <class F>
auto gl_panel(F&& f, double a, double b, int n) {
    using V = std::decay_t<decltype(f(0.0))>;
    const QuadratureRule& r = legendre_rule(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    V acc = scaled(half * r.weights[0], V(f(mid + half * r.nodes[0])));
    for (std::size_t i = 1; i < r.nodes.size(); ++i) acc += scaled(half * r.weights[i], V(f(mid + half * r.nodes[i])));
    return acc;
}

struct CircleContour {
    double radius = 0.5;
    int node_count = 256;
    std::complex<double> center = 0.0;
};

struct ContourOptions {
    double rel_tol = 1e-12;
    int max_nodes = 1 << 14;
};

// (1/(2 pi i)) \oint g(z) dz on the circle |z - center| = radius, trapezoid rule with node doubling.
// g may return a complex scalar or a std::valarray of complex values.
template <class G>
auto contour_integrate(const CircleContour& c, G&& g, ContourOptions opt = {}) {
    using V = std::decay_t<decltype(g(std::complex<double>{}))>;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto sample = [&](int k, int m) {
        const std::complex<double> dz = std::polar(c.radius, two_pi * k / m);
        V gz = g(c.center + dz);
        if constexpr (is_valarray<V>::value) {
            gz *= typename V::value_type(dz);
            return gz;
        } else {
            return V(gz * dz);
        }
    };
    int m = std::max(8, c.node_count);
    V sum = sample(0, m);
    double scale = magnitude(sum);
    for (int k = 1; k < m; ++k) {
        V s = sample(k, m);
        scale += magnitude(s);
        sum += s;
    }
    V prev = scaled(1.0 / m, sum);
    scale /= m;
    while (true) {
        if (2 * m > opt.max_nodes) break;
        V extra = sample(1, 2 * m);
        for (int k = 3; k < 2 * m; k += 2) extra += sample(k, 2 * m);
        sum += extra;
        m *= 2;
        V cur = scaled(1.0 / m, sum);
        V diff = cur - prev;
        const double d = magnitude(diff);
        const double ref = std::max(std::max(magnitude(cur), magnitude(prev)), 0.1 * scale);
        if (d <= opt.rel_tol * ref) return QuadResult<V>{cur, d};
        prev = std::move(cur);
    }
    throw AccuracyError("contour_integrate: no convergence with " + std::to_string(m) + " nodes");
}

enum class Decay { exponential, gaussian };
enum class Endpoint { smooth, algebraic };

struct HalfLineOptions {
    Decay decay = Decay::exponential;
    Endpoint endpoint = Endpoint::smooth;
    double scale = 1.0;        // first panel width
    int panel_nodes = 64;
    double rel_tol = 1e-13;
    int max_panels = 80;
    double max_width = std::numeric_limits<double>::infinity();
    double min_extent = 0.0;   // never stop before reaching this abscissa
    int grade_levels = 8;      // geometric refinement toward an algebraic endpoint
};

namespace detail {

// Integral over [0, L] of f near an endpoint with x^{p} behaviour: x = u^2, graded in u.
template <class F>
auto algebraic_head(F&& f, double length, int nodes, int levels) {
    const double top = std::sqrt(length);
    using V = std::decay_t<decltype(f(0.0))>;
    auto mapped = [&](double u) { return scaled(2.0 * u, V(f(u * u))); };
    double hi = top;
    double lo = top * 0.5;
    V acc = gl_panel(mapped, lo, hi, nodes);
    for (int k = 1; k < levels; ++k) {
        hi = lo;
        lo *= 0.5;
        acc += gl_panel(mapped, lo, hi, nodes);
    }
    acc += gl_panel(mapped, 0.0, lo, nodes);
    return acc;
}

}  // namespace detail

// \int_0^\infty f(x) dx on doubling panels [0,L],[L,2L],[2L,4L],... until two consecutive
// panels contribute less than rel_tol of the running total.
template <class F>
auto half_line_integrate(F&& f, HalfLineOptions opt = {}) {
    using V = std::decay_t<decltype(f(0.0))>;
    const double L = opt.scale;
    V total = opt.endpoint == Endpoint::algebraic ? V(detail::algebraic_head(f, L, opt.panel_nodes, opt.grade_levels))
                                                  : V(gl_panel(f, 0.0, L, opt.panel_nodes));
    double a = L;
    double width = L;
    int quiet = 0;
    double last = 0.0;
    for (int panel = 1; panel < opt.max_panels; ++panel) {
        const double w = std::min(width, opt.max_width);
        V piece = gl_panel(f, a, a + w, opt.panel_nodes);
        last = magnitude(piece);
        total += piece;
        a += w;
        width *= 2.0;
        const double ref = magnitude(total);
        if (a >= opt.min_extent && (last <= opt.rel_tol * ref || (ref == 0.0 && last == 0.0 && a > 64.0 * L))) {
            if (++quiet >= 2) return QuadResult<V>{total, last};
        } else {
            quiet = 0;
        }
    }
    throw AccuracyError(std::string("half_line_integrate: slow decay (") +
                        (opt.decay == Decay::gaussian ? "gaussian" : "exponential") +
                        " hint), tail panel still " + std::to_string(last));
}

// Two half-line integrals on center+x and center-x.
template <class F>
auto real_line_integrate(F&& f, HalfLineOptions opt = {}, double center = 0.0) {
    auto right = half_line_integrate([&](double x) { return f(center + x); }, opt);
    auto left = half_line_integrate([&](double x) { return f(center - x); }, opt);
    using V = decltype(right.value);
    return QuadResult<V>{V(right.value + left.value), right.error + left.error};
}

// Finite segment; algebraic endpoints get the square-root map from both sides.
template <class F>
auto segment_integrate(F&& f, double a, double b, Endpoint endpoint, int nodes, int levels = 8, double scale = 1.0) {
    using V = std::decay_t<decltype(f(a))>;
    if (endpoint == Endpoint::algebraic) {
        const double half = 0.5 * (b - a);
        V left = detail::algebraic_head([&](double x) { return f(a + x); }, half, nodes, levels);
        left += detail::algebraic_head([&](double x) { return f(b - x); }, half, nodes, levels);
        return left;
    }
    const int panels = std::clamp(static_cast<int>(std::ceil((b - a) / scale)), 1, 32);
    const double w = (b - a) / panels;
    V acc = gl_panel(f, a, a + w, nodes);
    for (int k = 1; k < panels; ++k) acc += gl_panel(f, a + k * w, a + (k + 1) * w, nodes);
    return acc;
}

// Support of an integrand: [lower, inf) (lower may be -inf) with interior points where the
// integrand is not smooth.
struct Domain {
    double lower = -std::numeric_limits<double>::infinity();
    std::vector<double> breaks;
    double scale = 1.0;
    Endpoint endpoint = Endpoint::smooth;
    Decay decay = Decay::exponential;
    double max_width = std::numeric_limits<double>::infinity();  // cap on tail panel width
};

template <class F>
auto integrate_domain(const Domain& dom, F&& f, int nodes = 64, double rel_tol = 1e-13) {
    std::vector<double> pts;
    const bool bounded = std::isfinite(dom.lower);
    if (bounded) pts.push_back(dom.lower);
    for (double b : dom.breaks)
        if (!bounded || b > dom.lower) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) pts.push_back(0.0);

    HalfLineOptions opt;
    opt.decay = dom.decay;
    opt.scale = std::min(dom.scale, dom.max_width);
    opt.panel_nodes = nodes;
    opt.rel_tol = rel_tol;
    opt.max_width = dom.max_width;
    if (std::isfinite(dom.max_width)) opt.max_panels = 400;
    const Endpoint inner = dom.breaks.empty() ? Endpoint::smooth : dom.endpoint;

    HalfLineOptions right = opt;
    right.endpoint = pts.size() > 1 || bounded ? dom.endpoint : Endpoint::smooth;
    if (!bounded && pts.size() == 1) right.endpoint = inner;
    const double last = pts.back();
    auto res = half_line_integrate([&](double x) { return f(last + x); }, right);
    auto total = res.value;
    double err = res.error;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        total += segment_integrate(f, pts[k], pts[k + 1], dom.endpoint, nodes, opt.grade_levels, dom.scale);
    if (!bounded) {
        HalfLineOptions left = opt;
        left.endpoint = inner;
        const double first = pts.front();
        auto lres = half_line_integrate([&](double x) { return f(first - x); }, left);
        total += lres.value;
        err += lres.error;
    }
    using V = decltype(total);
    return QuadResult<V>{total, err};
}

// Nodes and weights of a composite rule, recorded by running the integrators on a wrapper
// integrand. value[k] is the integrand at node[k].
struct NodeSet {
    std::vector<double> node, weight, value;
    double integral = 0.0;

    NodeSet() = default;
    NodeSet(double x, double fx) : node{x}, weight{1.0}, value{fx}, integral(fx) {}

    NodeSet& operator+=(const NodeSet& o) {
        node.insert(node.end(), o.node.begin(), o.node.end());
        weight.insert(weight.end(), o.weight.begin(), o.weight.end());
        value.insert(value.end(), o.value.begin(), o.value.end());
        integral += o.integral;
        return *this;
    }
    std::size_t size() const { return node.size(); }
};

inline NodeSet operator*(double s, NodeSet v) {
    for (double& w : v.weight) w *= s;
    v.integral *= s;
    return v;
}
inline NodeSet operator+(NodeSet a, const NodeSet& b) { return a += b; }
inline double magnitude(const NodeSet& v) { return std::abs(v.integral); }

// The rule integrate_domain would use for f, with f tabulated on it.
template <class F>
NodeSet tabulate_domain(const Domain& dom, F&& f, int nodes = 64, double rel_tol = 1e-13) {
    return integrate_domain(dom, [&](double x) { return NodeSet(x, f(x)); }, nodes, rel_tol).value;
}

}  // namespace polya
