#include "incoh/complex_matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace incoh {

namespace {

void check_finite(const std::vector<Complex>& entries) {
    for (const auto& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a.at(r, c);
    return m;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: empty dimension");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: empty dimension");
    if (entries_.size() != rows * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    check_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Complex(1.0, 0.0));
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

void ComplexMatrix::set(std::size_t r, std::size_t c, Complex value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
    entries_[r * cols_ + c] = value;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.set(i, j, out.at(i, j) + aik * b.at(k, j));
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(c, r, std::conj(a.at(r, c)));
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a.at(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.at(k, l));
        }
    return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: dimension mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c) + b.at(r, c));
    return out;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("sub: dimension mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.at(r, c) - b.at(r, c));
    return out;
}

ComplexMatrix scale(Complex factor, const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.set(r, c, factor * a.at(r, c));
    return out;
}

Complex trace(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("trace: non-square matrix");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a.at(i, i);
    return t;
}

double frob_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double frob_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("frob_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c)
            if (std::abs(a.at(r, c) - std::conj(a.at(c, r))) > tol) return false;
    return true;
}

int numeric_rank(const ComplexMatrix& a, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("numeric_rank: tol must be positive");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double sigma_max = sv(0);
    const double threshold = tol * sigma_max * static_cast<double>(std::max(a.rows(), a.cols()));
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > threshold) ++rank;
    return rank;
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("min_hermitian_eigenvalue: non-square matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace incoh
