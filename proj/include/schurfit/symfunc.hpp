#pragma once

#include "schurfit/matrix.hpp"
#include "schurfit/numeric.hpp"
#include "schurfit/partitions.hpp"

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurfit::symfunc {

using numeric::Field;

/// (e_0, ..., e_r) of z = (z_1, ..., z_r), obtained by multiplying out
/// prod_j (X + z_j) one linear factor at a time: step i costs i-1
/// multiplications and i-1 additions.
template <Field T>
std::vector<T> elem_sym_all(std::span<const T> z) {
    std::vector<T> e(z.size() + 1, T(0));
    e[0] = T(1);
    for (std::size_t i = 0; i < z.size(); ++i) {
        e[i + 1] = e[i] * z[i];
        for (std::size_t k = i; k >= 1; --k) e[k] += e[k - 1] * z[i];
    }
    return e;
}

/// V(z) = prod_{i<j} (z_i - z_j); 1 for fewer than two variables.
template <Field T>
T vandermonde(std::span<const T> z) {
    T v(1);
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) v *= z[i] - z[j];
    return v;
}

/// a_mu(z) = det(z_i^{mu_j}) for a strictly decreasing exponent tuple mu of
/// the same length as z.
template <Field T>
T alternating(std::span<const int> mu, std::span<const T> z) {
    const std::size_t r = z.size();
    if (mu.size() != r) throw std::invalid_argument("alternating: exponent count differs from variable count");
    for (std::size_t j = 0; j < r; ++j) {
        if (mu[j] < 0) throw std::invalid_argument("alternating: negative exponent");
        if (j > 0 && mu[j] >= mu[j - 1]) throw std::invalid_argument("alternating: exponents must be strictly decreasing");
    }
    std::vector<T> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i * r + j] = numeric::scalar_pow(z[i], static_cast<unsigned>(mu[j]));
    return determinant_in_place<T>(m, r);
}

/// Point evaluation of one Schur polynomial through the dual Jacobi-Trudi
/// identity s_lambda = det(e_{lambda'_i - i + j}), a lambda_1 x lambda_1
/// determinant in elementary symmetric polynomials (e_k = 0 for k < 0 or
/// k > r). The conjugate partition is computed once at construction.
template <Field T>
class SchurEvaluator {
public:
    explicit SchurEvaluator(Partition lambda) : lambda_(std::move(lambda)), conjugate_(conjugate(lambda_)) {}

    const Partition& partition() const { return lambda_; }

    T operator()(std::span<const T> z) const {
        const std::size_t order = conjugate_.size();
        if (order == 0) return T(1);
        // More rows than variables: the first column of the matrix is all zero.
        if (static_cast<std::size_t>(conjugate_[0]) > z.size()) return T(0);
        return evaluate(elem_sym_all(z), order);
    }

    /// Same value from precomputed (e_0, ..., e_r).
    T from_elementary(std::span<const T> e) const {
        const std::size_t order = conjugate_.size();
        if (order == 0) return T(1);
        if (static_cast<std::size_t>(conjugate_[0]) + 1 > e.size()) return T(0);
        return evaluate(e, order);
    }

private:
    T evaluate(std::span<const T> e, std::size_t order) const {
        const long r = static_cast<long>(e.size()) - 1;
        auto entry = [&](std::size_t i, std::size_t j) {
            const long k = static_cast<long>(conjugate_[i]) - static_cast<long>(i) + static_cast<long>(j);
            return (k < 0 || k > r) ? T(0) : e[static_cast<std::size_t>(k)];
        };
        if (order == 1) return entry(0, 0);
        std::vector<T> m(order * order);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; j < order; ++j) m[i * order + j] = entry(i, j);
        return determinant_in_place<T>(m, order);
    }

    Partition lambda_;
    Partition conjugate_;
};

template <Field T>
T schur(const Partition& lambda, std::span<const T> z) {
    return SchurEvaluator<T>(lambda)(z);
}

/// s_lambda(z) = a_{lambda + delta(r)}(z) / V(z). Requires pairwise distinct
/// entries; a repeated entry throws std::domain_error naming the pair.
template <Field T>
T schur_bialternant(const Partition& lambda, std::span<const T> z) {
    const std::size_t r = z.size();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (z[i] == z[j])
                throw std::domain_error("bialternant: z_" + std::to_string(i + 1) + " == z_" + std::to_string(j + 1) +
                                        ", the Vandermonde denominator vanishes");
    if (lambda.length() > r) return T(0);
    std::vector<int> mu(r);
    for (std::size_t j = 0; j < r; ++j) mu[j] = lambda[j] + static_cast<int>(r - 1 - j);
    return alternating<T>(mu, z) / vandermonde(z);
}

inline constexpr int kTableauxMaxWeight = 12;
inline constexpr std::size_t kTableauxMaxVariables = 6;

/// Content multiset of every semistandard Young tableau of shape lambda with
/// entries in {1..r}: maps each exponent vector to its number of tableaux.
inline std::map<std::vector<int>, std::uint64_t> tableau_contents(const Partition& lambda, std::size_t r) {
    std::map<std::vector<int>, std::uint64_t> contents;
    const std::size_t rows = lambda.length();
    if (rows > r) return contents;
    std::vector<std::vector<int>> filling(rows);
    for (std::size_t i = 0; i < rows; ++i) filling[i].assign(static_cast<std::size_t>(lambda[i]), 0);
    std::vector<int> content(r, 0);

    std::function<void(std::size_t, std::size_t)> place = [&](std::size_t row, std::size_t col) {
        if (row == rows) {
            ++contents[content];
            return;
        }
        if (col == filling[row].size()) {
            place(row + 1, 0);
            return;
        }
        int low = 1;
        if (col > 0) low = std::max(low, filling[row][col - 1]);
        if (row > 0) low = std::max(low, filling[row - 1][col] + 1);
        for (int v = low; v <= static_cast<int>(r); ++v) {
            filling[row][col] = v;
            ++content[static_cast<std::size_t>(v - 1)];
            place(row, col + 1);
            --content[static_cast<std::size_t>(v - 1)];
        }
    };
    place(0, 0);
    return contents;
}

/// Brute-force oracle: sum over all semistandard Young tableaux T of shape
/// lambda with entries in [r] of prod_cells z_{T(cell)}. Desk scale only;
/// refuses |lambda| > 12 or r > 6 with std::length_error.
template <Field T>
T schur_tableaux(const Partition& lambda, std::span<const T> z) {
    if (lambda.weight() > kTableauxMaxWeight || z.size() > kTableauxMaxVariables)
        throw std::length_error("schur_tableaux: shape or variable count beyond brute-force limits");
    T total(0);
    for (const auto& [content, count] : tableau_contents(lambda, z.size())) {
        T term(static_cast<long>(count));
        for (std::size_t i = 0; i < content.size(); ++i)
            if (content[i] > 0) term *= numeric::scalar_pow(z[i], static_cast<unsigned>(content[i]));
        total += term;
    }
    return total;
}

} // namespace schurfit::symfunc
