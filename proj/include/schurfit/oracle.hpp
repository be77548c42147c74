#pragma once

// Classical least squares by direct elimination on the normal equation. Used
// to validate the closed form; shares no code with regress beyond the data
// and matrix containers.

#include "schurfit/errors.hpp"
#include "schurfit/matrix.hpp"
#include "schurfit/numeric.hpp"
#include "schurfit/partitions.hpp"
#include "schurfit/regress.hpp"

#include <cmath>
#include <complex>
#include <type_traits>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace schurfit::oracle {

using numeric::Field;

template <Field T>
struct LinearSystem {
    Matrix<T> gram;  ///< (WA)*WA, Hermitian
    std::vector<T> rhs;  ///< (WA)*Wy
};

namespace detail {

// Working precision for normal_equations and solve: exact stays exact; float
// mode accumulates and eliminates in long double.
template <Field T>
using Work = std::conditional_t<numeric::is_exact_v<T>, T, std::complex<long double>>;

template <Field T>
Work<T> widen(const T& v) {
    if constexpr (numeric::is_exact_v<T>)
        return v;
    else
        return {v.real(), v.imag()};
}

template <Field T>
T narrow(const Work<T>& v) {
    if constexpr (numeric::is_exact_v<T>)
        return v;
    else
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

template <class W>
W conj_work(const W& v) {
    if constexpr (std::is_same_v<W, std::complex<long double>>)
        return std::conj(v);
    else
        return numeric::conj(v);
}

template <class W>
bool exactly_zero(const W& v) {
    if constexpr (std::is_same_v<W, std::complex<long double>>)
        return v == W(0);
    else
        return numeric::is_zero(v);
}

template <Field T>
struct WideSystem {
    std::size_t n = 0;
    std::vector<Work<T>> g;  // row-major n x n
    std::vector<Work<T>> b;
};

template <Field T>
WideSystem<T> wide_normal_equations(const Exponents& d, const regress::DataSet<T>& data) {
    using W = Work<T>;
    const std::size_t n = d.size(), m = data.size();
    // Rows of WA, built column by column with plain repeated multiplication.
    std::vector<W> wa(m * n), wy(m);
    for (std::size_t k = 0; k < m; ++k) {
        const W xk = widen(data.x()[k]);
        for (std::size_t j = 0; j < n; ++j) {
            W p(1);
            for (int e = 0; e < d[j]; ++e) p *= xk;
            wa[k * n + j] = p;
        }
        wy[k] = widen(data.y()[k]);
        if (data.weighted()) {
            const W wk = widen(data.weights()[k]);
            for (std::size_t j = 0; j < n; ++j) wa[k * n + j] *= wk;
            wy[k] *= wk;
        }
    }
    WideSystem<T> sys{n, std::vector<W>(n * n, W(0)), std::vector<W>(n, W(0))};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k) sys.g[i * n + j] += conj_work(wa[k * n + i]) * wa[k * n + j];
        for (std::size_t k = 0; k < m; ++k) sys.b[i] += conj_work(wa[k * n + i]) * wy[k];
    }
    return sys;
}

template <Field T>
std::vector<T> wide_solve(WideSystem<T> sys) {
    using W = Work<T>;
    const std::size_t n = sys.n;
    auto g = [&](std::size_t i, std::size_t j) -> W& { return sys.g[i * n + j]; };
    std::vector<W>& b = sys.b;
    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        for (std::size_t j = 0; j < n; ++j) std::swap(g(r1, j), g(r2, j));
        std::swap(b[r1], b[r2]);
    };
    if constexpr (numeric::is_exact_v<T>) {
        // Fraction-free (Bareiss) forward elimination.
        W previous(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pivot = k;
            while (pivot < n && exactly_zero(g(pivot, k))) ++pivot;
            if (pivot == n) throw NonUniqueSolution("normal equation is singular (rank-deficient design matrix)");
            if (pivot != k) swap_rows(k, pivot);
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) g(i, j) = (g(i, j) * g(k, k) - g(i, k) * g(k, j)) / previous;
                b[i] = (b[i] * g(k, k) - g(i, k) * b[k]) / previous;
                g(i, k) = W(0);
            }
            previous = g(k, k);
        }
    } else {
        // A pivot that is rounding noise relative to its original column counts as zero.
        std::vector<long double> column_scale(n, 0.0L);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) column_scale[j] = std::max(column_scale[j], std::abs(g(i, j)));
        const long double tolerance =
            64.0L * static_cast<long double>(n) * std::numeric_limits<long double>::epsilon();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pivot = k;
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(g(i, k)) > std::abs(g(pivot, k))) pivot = i;
            if (std::abs(g(pivot, k)) <= tolerance * column_scale[k])
                throw NonUniqueSolution("normal equation is numerically singular (rank-deficient design matrix)");
            if (pivot != k) swap_rows(k, pivot);
            for (std::size_t i = k + 1; i < n; ++i) {
                const W factor = g(i, k) / g(k, k);
                for (std::size_t j = k + 1; j < n; ++j) g(i, j) -= factor * g(k, j);
                b[i] -= factor * b[k];
                g(i, k) = W(0);
            }
        }
    }
    std::vector<T> a(n);
    std::vector<W> wide(n, W(0));
    for (std::size_t i = n; i-- > 0;) {
        W sum = b[i];
        for (std::size_t j = i + 1; j < n; ++j) sum -= g(i, j) * wide[j];
        wide[i] = sum / g(i, i);
        a[i] = narrow<T>(wide[i]);
    }
    return a;
}

} // namespace detail

template <Field T>
LinearSystem<T> normal_equations(const Exponents& d, const regress::DataSet<T>& data) {
    const auto wide = detail::wide_normal_equations(d, data);
    const std::size_t n = wide.n;
    LinearSystem<T> sys{Matrix<T>(n, n), std::vector<T>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sys.gram(i, j) = detail::narrow<T>(wide.g[i * n + j]);
        sys.rhs[i] = detail::narrow<T>(wide.b[i]);
    }
    return sys;
}

/// Solves G a = rhs. Exact mode: fraction-free (Bareiss) forward elimination
/// on the augmented matrix, then back substitution. Float mode: Gaussian
/// elimination with partial pivoting in long double. Singular G throws
/// NonUniqueSolution.
template <Field T>
std::vector<T> solve(const LinearSystem<T>& sys) {
    const std::size_t n = sys.rhs.size();
    detail::WideSystem<T> wide{n, {}, {}};
    for (const T& v : sys.gram.data()) wide.g.push_back(detail::widen(v));
    for (const T& v : sys.rhs) wide.b.push_back(detail::widen(v));
    return detail::wide_solve(std::move(wide));
}

/// Least-squares coefficients from the normal equation. Exact data: formed
/// and solved exactly. Float data: formed and solved exactly on the binary
/// values of the doubles, then rounded once, so the reference carries no
/// conditioning error of its own.
template <Field T>
std::vector<T> solve_normal(const Exponents& d, const regress::DataSet<T>& data) {
    if constexpr (numeric::is_exact_v<T>) {
        return detail::wide_solve(detail::wide_normal_equations(d, data));
    } else {
        auto widen = [](std::span<const T> v) {
            std::vector<numeric::GaussRational> out;
            out.reserve(v.size());
            for (const T& s : v) out.push_back(numeric::GaussRational::from_double(s.real(), s.imag()));
            return out;
        };
        const regress::DataSet<numeric::GaussRational> exact =
            data.weighted() ? regress::DataSet<numeric::GaussRational>(widen(data.x()), widen(data.y()), widen(data.weights()))
                            : regress::DataSet<numeric::GaussRational>(widen(data.x()), widen(data.y()));
        std::vector<T> a;
        for (const auto& v : solve_normal(d, exact)) a.push_back(numeric::to_complex(v));
        return a;
    }
}

/// Determinant by ordinary Gaussian elimination with field division.
template <Field T>
T determinant(Matrix<T> g) {
    if (g.rows() != g.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = g.rows();
    T det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        if constexpr (numeric::is_exact_v<T>) {
            while (pivot < n && numeric::is_zero(g(pivot, k))) ++pivot;
            if (pivot == n) return T(0);
        } else {
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(g(i, k)) > std::abs(g(pivot, k))) pivot = i;
            if (numeric::is_zero(g(pivot, k))) return T(0);
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(g(k, j), g(pivot, j));
            det = -det;
        }
        det *= g(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T factor = g(i, k) / g(k, k);
            for (std::size_t j = k; j < n; ++j) g(i, j) -= factor * g(k, j);
        }
    }
    return det;
}

/// Axis-aligned search box for brute_force_min, one [low, high] per coefficient.
struct SearchBox {
    std::vector<std::pair<double, double>> bounds;
    double resolution = 1e-4;
    int points_per_axis = 21;
};

/// Coarse-to-fine grid minimizer of sum_k |w_k|^2 |f(x_k) - y_k|^2 for n <= 2
/// and real data. Each round keeps the best grid point and shrinks the box to
/// two cells around it until the cell width drops below the resolution.
template <Field T>
std::vector<double> brute_force_min(const Exponents& d, const regress::DataSet<T>& data, SearchBox box) {
    const std::size_t n = d.size();
    if (n > 2) throw std::invalid_argument("brute_force_min supports at most two coefficients");
    if (box.bounds.size() != n) throw std::invalid_argument("search box dimension differs from model size");
    if (box.points_per_axis < 3) throw std::invalid_argument("search grid needs at least three points per axis");
    std::vector<double> x, y, wsq;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const auto xk = numeric::to_complex(data.x()[k]);
        const auto yk = numeric::to_complex(data.y()[k]);
        if (xk.imag() != 0.0 || yk.imag() != 0.0) throw std::invalid_argument("brute_force_min needs real data");
        x.push_back(xk.real());
        y.push_back(yk.real());
        wsq.push_back(data.weighted() ? std::norm(numeric::to_complex(data.weights()[k])) : 1.0);
    }
    auto objective = [&](const std::vector<double>& a) {
        double total = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            double f = 0.0;
            for (std::size_t j = 0; j < n; ++j) f += a[j] * std::pow(x[k], d[j]);
            total += wsq[k] * (f - y[k]) * (f - y[k]);
        }
        return total;
    };

    const int g = box.points_per_axis;
    std::vector<double> best(n);
    for (;;) {
        std::vector<double> step(n);
        double widest = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            step[j] = (box.bounds[j].second - box.bounds[j].first) / (g - 1);
            widest = std::max(widest, step[j]);
        }
        double best_value = std::numeric_limits<double>::infinity();
        std::vector<double> a(n);
        const int total = n == 1 ? g : g * g;
        for (int idx = 0; idx < total; ++idx) {
            a[0] = box.bounds[0].first + step[0] * (idx % g);
            if (n == 2) a[1] = box.bounds[1].first + step[1] * (idx / g);
            const double v = objective(a);
            if (v < best_value) {
                best_value = v;
                best = a;
            }
        }
        if (widest < box.resolution) break;
        for (std::size_t j = 0; j < n; ++j) box.bounds[j] = {best[j] - 2 * step[j], best[j] + 2 * step[j]};
    }
    return best;
}

} // namespace schurfit::oracle
