#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace incoh {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major order. Values are immutable in spirit:
/// all operations below return new matrices, so instances can be shared
/// freely between threads.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Complex& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return at(r, c); }

    /// Rejects non-finite values; NaN/Inf never enter a matrix.
    void set(std::size_t r, std::size_t c, Complex value);

    const std::vector<Complex>& entries() const { return entries_; }

    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex factor, const ComplexMatrix& a);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix& a) { return scale(factor, a); }

Complex trace(const ComplexMatrix& a);
double frob_norm(const ComplexMatrix& a);
double frob_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_entry(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

/// Count of singular values above tol * sigma_max * max(rows, cols).
/// Zero matrix has rank 0. The threshold is relative so that matrices with
/// uniformly small entries (e.g. Choi states, entries ~ 1/d^2) are ranked
/// correctly.
int numeric_rank(const ComplexMatrix& a, double tol = 1e-10);

/// Smallest eigenvalue of a Hermitian matrix; used for PSD checks.
double min_hermitian_eigenvalue(const ComplexMatrix& a);

}  // namespace incoh
