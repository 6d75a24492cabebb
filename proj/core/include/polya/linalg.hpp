#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace polya {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<std::complex<double>>;

// LU with partial pivoting; the argument is consumed.
double determinant(RMatrix a);
std::complex<double> determinant(CMatrix a);

// Solve A X = B for square A (partial pivoting).
RMatrix solve(RMatrix a, RMatrix b);

// Implicit QL on a symmetric tridiagonal matrix.
// d: diagonal (n), e: subdiagonal in e[0..n-2]. On return d holds ascending eigenvalues.
// If z is non-null it must hold an n x n matrix (identity for plain eigenvectors); its columns
// are rotated into eigenvectors.
void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, RMatrix* z);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns; empty unless requested
};

// Householder reduction to real tridiagonal form followed by implicit QL.
HermitianEigen hermitian_eigen(const CMatrix& a, bool want_vectors);

}  // namespace polya
