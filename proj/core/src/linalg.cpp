#include "polya/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polya/errors.hpp"

namespace polya {

namespace {

template <class T>
T lu_determinant(Matrix<T> a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw UsageError("determinant: matrix not square");
    T det{1};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > best) best = std::abs(a(piv = i, k));
        if (best == 0.0) return T{0};
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T f = a(i, k) / a(k, k);
            if (f == T{0}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

}  // namespace

double determinant(RMatrix a) { return lu_determinant(std::move(a)); }
std::complex<double> determinant(CMatrix a) { return lu_determinant(std::move(a)); }

RMatrix solve(RMatrix a, RMatrix b) {
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) throw AccuracyError("solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(b(k, j), b(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            double s = b(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
            b(k, j) = s / a(k, k);
        }
    }
    return b;
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, RMatrix* z) {
    const int n = static_cast<int>(d.size());
    e.resize(std::max(n, 1), 0.0);
    if (n > 0) e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw AccuracyError("tridiagonal_ql: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = (r = std::hypot(f, g));
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    if (z) {
                        for (std::size_t k = 0; k < z->rows(); ++k) {
                            f = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                            (*z)(k, i) = c * (*z)(k, i) - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> sorted(n);
    for (int i = 0; i < n; ++i) sorted[i] = d[order[i]];
    d = std::move(sorted);
    if (z) {
        RMatrix zs(z->rows(), z->cols());
        for (std::size_t k = 0; k < z->rows(); ++k)
            for (int i = 0; i < n; ++i) zs(k, i) = (*z)(k, order[i]);
        *z = std::move(zs);
    }
}

HermitianEigen hermitian_eigen(const CMatrix& input, bool want_vectors) {
    using C = std::complex<double>;
    const std::size_t n = input.rows();
    if (n != input.cols()) throw UsageError("hermitian_eigen: matrix not square");
    CMatrix a = input;
    CMatrix q = want_vectors ? CMatrix::identity(n) : CMatrix();
    std::vector<C> v(n), p(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha += std::norm(a(i, k));
        alpha = std::sqrt(alpha);
        const C x0 = a(k + 1, k);
        const double tail = alpha * alpha - std::norm(x0);
        if (tail <= 0.0) continue;  // already tridiagonal in this column
        const C phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : C(1.0);
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] += phase * alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        const double tau = 2.0 / vnorm2;

        for (std::size_t i = k + 1; i < n; ++i) {
            C s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            p[i] = tau * s;
        }
        C vp = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        const double kk = 0.5 * tau * vp.real();
        for (std::size_t i = k + 1; i < n; ++i) p[i] -= kk * v[i];
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]);

        a(k + 1, k) = -phase * alpha;
        a(k, k + 1) = std::conj(a(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = a(k, i) = 0.0;

        if (want_vectors) {
            for (std::size_t r = 0; r < n; ++r) {
                C s = 0.0;
                for (std::size_t j = k + 1; j < n; ++j) s += q(r, j) * v[j];
                s *= tau;
                for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= s * std::conj(v[j]);
            }
        }
    }

    std::vector<double> d(n), e(n, 0.0);
    std::vector<C> phases(n, C(1.0));
    for (std::size_t k = 0; k < n; ++k) d[k] = a(k, k).real();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const C sub = a(k + 1, k);
        e[k] = std::abs(sub);
        phases[k + 1] = e[k] > 0.0 ? phases[k] * sub / e[k] : phases[k];
    }

    HermitianEigen out;
    if (!want_vectors) {
        tridiagonal_ql(d, std::move(e), nullptr);
        out.values = std::move(d);
        return out;
    }
    RMatrix z = RMatrix::identity(n);
    tridiagonal_ql(d, std::move(e), &z);
    out.values = std::move(d);
    out.vectors = CMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            C s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += q(r, j) * phases[j] * z(j, c);
            out.vectors(r, c) = s;
        }
    return out;
}

}  // namespace polya
