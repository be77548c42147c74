#pragma once

#include "schurfit/numeric.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace schurfit {

using numeric::Field;

/// Dense row-major matrix over a scalar field.
template <Field T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<T> data() { return data_; }
    std::span<const T> data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Field T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (numeric::is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <Field T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector product: dimensions differ");
    std::vector<T> out(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

template <Field T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    return a * std::span<const T>(v);
}

/// Conjugate transpose.
template <Field T>
Matrix<T> adjoint(const Matrix<T>& a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = numeric::conj(a(i, j));
    return t;
}

template <Field T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shapes differ");
    Matrix<T> c = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

/// Determinant of the n x n row-major matrix stored in `a`, destroying it.
///
/// Exact mode runs fraction-free Bareiss elimination, so on integer input
/// every intermediate is an integer minor. Float mode is LU with partial
/// pivoting. Orders 0..2 are expanded directly.
template <Field T>
T determinant_in_place(std::span<T> a, std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("determinant: buffer is not n x n");
    switch (n) {
    case 0: return T(1);
    case 1: return a[0];
    case 2: return a[0] * a[3] - a[1] * a[2];
    default: break;
    }
    auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };
    bool negate = false;
    if constexpr (numeric::is_exact_v<T>) {
        T previous(1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            std::size_t pivot = k;
            while (pivot < n && numeric::is_zero(at(pivot, k))) ++pivot;
            if (pivot == n) return T(0);
            if (pivot != k) {
                for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(pivot, j));
                negate = !negate;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    T v = at(i, j) * at(k, k);
                    v -= at(i, k) * at(k, j);
                    v /= previous;
                    at(i, j) = std::move(v);
                }
                at(i, k) = T(0);
            }
            previous = at(k, k);
        }
        T det = at(n - 1, n - 1);
        return negate ? -det : det;
    } else {
        T det(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pivot = k;
            double best = std::abs(at(k, k));
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(at(i, k)) > best) {
                    best = std::abs(at(i, k));
                    pivot = i;
                }
            if (best == 0.0) return T(0);
            if (pivot != k) {
                for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(pivot, j));
                negate = !negate;
            }
            const T diag = at(k, k);
            det *= diag;
            for (std::size_t i = k + 1; i < n; ++i) {
                const T factor = at(i, k) / diag;
                for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= factor * at(k, j);
            }
        }
        return negate ? -det : det;
    }
}

template <Field T>
T determinant(Matrix<T> a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    return determinant_in_place<T>(a.data(), a.rows());
}

} // namespace schurfit
