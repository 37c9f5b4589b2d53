#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <vector>

#include "svdkit/errors.hpp"

namespace svdkit {

using Complex = std::complex<double>;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

// conj / |x|^2 that work uniformly for double and std::complex<double>
inline double conj_value(double x) { return x; }
inline Complex conj_value(const Complex& x) { return std::conj(x); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const Complex& x) { return std::norm(x); }

// |x| without squaring first (abs_sq underflows below ~1e-154)
inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const Complex& x) { return std::abs(x); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
}

} // namespace detail

/// Dense row-major matrix over double or std::complex<double>.
/// Immutable by convention once handed to an operation; all svdkit
/// operations take it by const reference and return fresh values.
template <typename T>
class Matrix {
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, Complex>,
                  "Matrix supports double and std::complex<double>");

public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols, T value = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> data_;
};

template <typename T>
bool all_finite(const Matrix<T>& a) {
    for (const T& x : a.data())
        if (!detail::is_finite(x)) return false;
    return true;
}

/// Hermitian transpose (plain transpose over the reals).
template <typename T>
Matrix<T> conj_transpose(const Matrix<T>& a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = detail::conj_value(a(i, j));
    return t;
}

template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: inner dimensions disagree (" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("matrix addition: shape mismatch");
    Matrix<T> c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("matrix subtraction: shape mismatch");
    Matrix<T> c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

template <typename T, typename S>
Matrix<T> operator*(S scalar, const Matrix<T>& a) {
    Matrix<T> c = a;
    for (T& x : c.data()) x *= scalar;
    return c;
}

template <typename T>
double frobenius_norm(const Matrix<T>& a) {
    double s = 0.0;
    for (const T& x : a.data()) s += detail::abs_sq(x);
    return std::sqrt(s);
}

/// ||A^H A - I||_F, the column-orthonormality residual.
template <typename T>
double orthogonality_residual(const Matrix<T>& a) {
    const Matrix<T> g = matmul(conj_transpose(a), a);
    double s = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const T expected = (i == j) ? T{1} : T{};
            s += detail::abs_sq(g(i, j) - expected);
        }
    return std::sqrt(s);
}

} // namespace svdkit
