#pragma once

#include "schurfit/errors.hpp"
#include "schurfit/matrix.hpp"
#include "schurfit/numeric.hpp"
#include "schurfit/partitions.hpp"
#include "schurfit/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace schurfit::regress {

using numeric::Field;

/// Paired samples x, y with optional nonzero weights w, all of one numeric
/// mode (the type parameter).
template <Field T>
class DataSet {
public:
    DataSet(std::vector<T> x, std::vector<T> y) : x_(std::move(x)), y_(std::move(y)) { validate(); }
    DataSet(std::vector<T> x, std::vector<T> y, std::vector<T> w)
        : x_(std::move(x)), y_(std::move(y)), w_(std::move(w)), weighted_(true) {
        validate();
    }

    std::size_t size() const { return x_.size(); }
    std::span<const T> x() const { return x_; }
    std::span<const T> y() const { return y_; }
    bool weighted() const { return weighted_; }
    /// Empty when unweighted.
    std::span<const T> weights() const { return w_; }

    /// |w_k|^2 per point; empty when unweighted.
    std::vector<T> weight_sq() const {
        std::vector<T> out;
        out.reserve(w_.size());
        for (const T& w : w_) out.push_back(numeric::magnitude_sq(w));
        return out;
    }

    /// Points reordered so that point k of the result is point order[k] of this set.
    DataSet permuted(std::span<const std::size_t> order) const {
        if (order.size() != size()) throw std::invalid_argument("permutation length differs from data size");
        std::vector<T> x, y, w;
        for (std::size_t k : order) {
            x.push_back(x_.at(k));
            y.push_back(y_.at(k));
            if (weighted_) w.push_back(w_.at(k));
        }
        return weighted_ ? DataSet(std::move(x), std::move(y), std::move(w)) : DataSet(std::move(x), std::move(y));
    }

    /// The first `count` points.
    DataSet prefix(std::size_t count) const {
        if (count == 0 || count > size()) throw std::out_of_range("prefix length out of range");
        std::vector<T> x(x_.begin(), x_.begin() + count), y(y_.begin(), y_.begin() + count);
        if (!weighted_) return DataSet(std::move(x), std::move(y));
        return DataSet(std::move(x), std::move(y), std::vector<T>(w_.begin(), w_.begin() + count));
    }

private:
    void validate() const {
        if (x_.empty()) throw std::invalid_argument("data set needs at least one point");
        if (x_.size() != y_.size()) throw std::invalid_argument("x and y differ in length");
        if (weighted_) {
            if (w_.size() != x_.size()) throw std::invalid_argument("weights differ in length from x");
            for (std::size_t k = 0; k < w_.size(); ++k)
                if (numeric::is_zero(w_[k])) throw std::invalid_argument("weight " + std::to_string(k + 1) + " is zero");
        }
    }

    std::vector<T> x_;
    std::vector<T> y_;
    std::vector<T> w_;
    bool weighted_ = false;
};

/// Work counters for the subset sums. A subset visit evaluates every Schur
/// polynomial it needs once; a term is one summand accumulated into a sum.
struct EvaluationCount {
    std::uint64_t subsets = 0;
    std::uint64_t terms = 0;

    EvaluationCount& operator+=(const EvaluationCount& o) {
        subsets += o.subsets;
        terms += o.terms;
        return *this;
    }
    bool operator==(const EvaluationCount&) const = default;
};

/// The partitions lambda and lambda[i] of a model signature together with
/// their Schur evaluators, built once per signature.
template <Field T>
class Model {
public:
    explicit Model(Exponents d) : d_(std::move(d)), full_(lambda_from_degrees(d_)) {
        for (std::size_t i = 0; i < d_.size(); ++i) dropped_.emplace_back(schurfit::lambda_drop(d_, i));
    }

    const Exponents& degrees() const { return d_; }
    std::size_t size() const { return d_.size(); }
    const Partition& lambda() const { return full_.partition(); }
    const Partition& lambda_drop(std::size_t i) const { return dropped_.at(i).partition(); }

    /// s_lambda(z) for an n-variable point.
    T schur_full(std::span<const T> z) const { return full_(z); }

    /// s_{lambda[i]}(z) for every i, sharing the elementary symmetric
    /// polynomials of the (n-1)-variable point z.
    void schur_dropped(std::span<const T> z, std::span<T> out) const {
        const std::vector<T> e = symfunc::elem_sym_all(z);
        for (std::size_t i = 0; i < dropped_.size(); ++i) out[i] = dropped_[i].from_elementary(e);
    }

    T schur_dropped(std::size_t i, std::span<const T> z) const { return dropped_.at(i)(z); }

    /// Exponent 2|lambda| + n(n-1): the total degree of each denominator term.
    int denominator_degree() const {
        const int n = static_cast<int>(d_.size());
        return 2 * lambda().weight() + n * (n - 1);
    }

private:
    Exponents d_;
    symfunc::SchurEvaluator<T> full_;
    std::vector<symfunc::SchurEvaluator<T>> dropped_;
};

namespace detail {

/// Calls f(points, subset, weight) for every r-subset of {0..m-1} in
/// lexicographic order, where points = (x_subset..., tail_x...) and weight is
/// the product of the matching |w|^2 entries (1 when wsq is empty).
template <Field T, class F>
void for_each_subset(std::span<const T> x, std::span<const T> wsq, std::size_t r, std::span<const T> tail_x,
                     std::span<const T> tail_wsq, F&& f) {
    std::vector<T> points(r + tail_x.size());
    std::copy(tail_x.begin(), tail_x.end(), points.begin() + static_cast<std::ptrdiff_t>(r));
    const bool weighted = !wsq.empty();
    T tail_weight(1);
    for (const T& w : tail_wsq) tail_weight *= w;
    T weight = tail_weight;
    for (std::span<const std::size_t> subset : Combinations(x.size(), r)) {
        for (std::size_t i = 0; i < r; ++i) points[i] = x[subset[i]];
        if (weighted) {
            weight = tail_weight;
            for (std::size_t i = 0; i < r; ++i) weight *= wsq[subset[i]];
        }
        f(std::span<const T>(points), subset, weight);
    }
}

/// sum over subsets of |w|^2 |s_lambda(z) V(z)|^2 with z an r-subset of x
/// followed by tail_x; r + |tail_x| must equal n.
///
/// Float mode can also accumulate into `magnitude` the first-order
/// sensitivity of that sum to relative perturbations of the points:
///   |w|^2 (|s|^2 |V| sum_{i<j} (|z_i| + |z_j|) |V / (z_i - z_j)| + |s| s_lambda(|z|) |V|^2),
/// the reference size for the degeneracy test.
template <Field T>
T denominator_sum(const Model<T>& model, std::span<const T> x, std::span<const T> wsq, std::size_t r,
                  std::span<const T> tail_x, std::span<const T> tail_wsq, EvaluationCount& count,
                  double* magnitude = nullptr) {
    const bool weighted = !wsq.empty() || !tail_wsq.empty();
    T total(0);
    std::vector<T> abs_z(r + tail_x.size());
    std::vector<double> gaps;
    for_each_subset<T>(x, wsq, r, tail_x, tail_wsq, [&](std::span<const T> z, auto, const T& weight) {
        const T s = model.schur_full(z);
        const T v = symfunc::vandermonde(z);
        T term = numeric::magnitude_sq(T(s * v));
        if (weighted) term *= weight;
        total += term;
        if constexpr (!numeric::is_exact_v<T>) {
            if (magnitude != nullptr) {
                for (std::size_t i = 0; i < z.size(); ++i) abs_z[i] = std::abs(z[i]);
                gaps.clear();
                for (std::size_t i = 0; i < z.size(); ++i)
                    for (std::size_t j = i + 1; j < z.size(); ++j) gaps.push_back(std::abs(z[i] - z[j]));
                double spread = 0.0;
                for (std::size_t i = 0, p = 0; i < z.size(); ++i)
                    for (std::size_t j = i + 1; j < z.size(); ++j, ++p) {
                        double others = abs_z[i].real() + abs_z[j].real();
                        for (std::size_t q = 0; q < gaps.size(); ++q)
                            if (q != p) others *= gaps[q];
                        spread += others;
                    }
                const double as = std::abs(s), av = std::abs(v);
                const double sensitivity = as * as * av * spread + as * std::abs(model.schur_full(abs_z)) * av * av;
                *magnitude += sensitivity * (weighted ? weight.real() : 1.0);
            }
        }
        ++count.subsets;
        ++count.terms;
    });
    return total;
}

/// n x n matrix of sums over subsets of |w|^2 s_{lambda[i]}(z) conj(s_{lambda[j]}(z)) |V(z)|^2,
/// z an r-subset of x followed by tail_x; r + |tail_x| must equal n - 1.
/// Entry (j, i) is formed as the conjugate of the (i, j) summand, so the
/// result is Hermitian in both modes.
template <Field T>
Matrix<T> minor_sums(const Model<T>& model, std::span<const T> x, std::span<const T> wsq, std::size_t r,
                     std::span<const T> tail_x, std::span<const T> tail_wsq, EvaluationCount& count) {
    const std::size_t n = model.size();
    const bool weighted = !wsq.empty() || !tail_wsq.empty();
    Matrix<T> sums(n, n);
    std::vector<T> s(n), scaled(n), conj_s(n);
    for_each_subset<T>(x, wsq, r, tail_x, tail_wsq, [&](std::span<const T> z, auto, const T& weight) {
        model.schur_dropped(z, s);
        T c = numeric::magnitude_sq(symfunc::vandermonde(z));
        if (weighted) c *= weight;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = s[i] * c;
            conj_s[i] = numeric::conj(s[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            sums(i, i) += scaled[i] * conj_s[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                const T term = scaled[i] * conj_s[j];
                sums(i, j) += term;
                sums(j, i) += numeric::conj(term);
            }
        }
        ++count.subsets;
        count.terms += n * n;
    });
    return sums;
}

/// T_j = sum_k |w_k|^2 conj(x_k)^{d_j} y_k.
template <Field T>
std::vector<T> moments(const Exponents& d, std::span<const T> x, std::span<const T> y, std::span<const T> wsq,
                       EvaluationCount& count) {
    std::vector<T> out(d.size(), T(0));
    for (std::size_t k = 0; k < x.size(); ++k) {
        const T xc = numeric::conj(x[k]);
        T yk = y[k];
        if (!wsq.empty()) yk *= wsq[k];
        for (std::size_t j = 0; j < d.size(); ++j) out[j] += numeric::scalar_pow(xc, static_cast<unsigned>(d[j])) * yk;
    }
    count.terms += d.size() * x.size();
    return out;
}

/// sum_k |w_k|^2 |y_k|^2.
template <Field T>
T weighted_norm_sq(std::span<const T> y, std::span<const T> wsq) {
    T total(0);
    for (std::size_t k = 0; k < y.size(); ++k) {
        T term = numeric::magnitude_sq(y[k]);
        if (!wsq.empty()) term *= wsq[k];
        total += term;
    }
    return total;
}

template <Field T>
T alternating_sign(std::size_t i, std::size_t j) {
    return ((i + j) % 2 == 0) ? T(1) : T(-1);
}

/// ||y||_W^2 - <A*W*Wy | a>, clamped at zero.
template <Field T>
T residual_sq(const T& norm_sq, std::span<const T> moments, std::span<const T> a) {
    T value = norm_sq;
    for (std::size_t j = 0; j < a.size(); ++j) value -= numeric::conj(moments[j]) * a[j];
    value = numeric::real_part(value);
    if constexpr (numeric::is_exact_v<T>) {
        return value;
    } else {
        return value.real() < 0.0 ? T(0) : value;
    }
}

template <Field T>
double to_distance(const T& residual_sq) {
    return std::sqrt(std::max(0.0, numeric::to_complex(residual_sq).real()));
}

inline std::string non_unique_message(const Exponents& d) {
    const std::string n = std::to_string(d.size());
    if (d.is_staircase())
        return "no unique least-squares solution: the denominator vanishes; polynomial regression with " + n +
               " coefficients needs at least " + n + " distinct x values";
    return "no unique least-squares solution: the denominator vanishes, so the design matrix is not injective (at "
           "least " + n + " distinct positive real x values guarantee uniqueness)";
}

} // namespace detail

/// N_i = sum_j (-1)^{i+j} S_{i,j} T_j.
template <Field T>
std::vector<T> numerators(const Matrix<T>& minors, std::span<const T> moments) {
    const std::size_t n = moments.size();
    std::vector<T> out(n, T(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const T term = minors(i, j) * moments[j];
            if ((i + j) % 2 == 0)
                out[i] += term;
            else
                out[i] -= term;
        }
    return out;
}

/// True when D certifies no unique solution: exactly zero in exact mode; in
/// float mode zero or below 1e-12 * magnitude, with magnitude the sensitivity
/// accumulated by denominator_sum. Both sides are homogeneous of degree
/// 2|lambda| + n(n-1) in x, so the test is scale-free; it fires when the
/// relative uncertainty of D from rounding the points exceeds about 2e-4.
template <Field T>
bool is_degenerate(const T& denominator, double magnitude) {
    if (numeric::is_zero(denominator)) return true;
    if constexpr (numeric::is_exact_v<T>) {
        return false;
    } else {
        return std::abs(denominator) < 1e-12 * magnitude;
    }
}

/// A[k][j] = x_k^{d_j}.
template <Field T>
Matrix<T> design_matrix(const Exponents& d, std::span<const T> x) {
    Matrix<T> a(x.size(), d.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        for (std::size_t j = 0; j < d.size(); ++j) a(k, j) = numeric::scalar_pow(x[k], static_cast<unsigned>(d[j]));
    return a;
}

/// (WA)*WA: entry (i, j) = sum_k |w_k|^2 conj(x_k)^{d_i} x_k^{d_j}.
template <Field T>
Matrix<T> gram(const Exponents& d, const DataSet<T>& data) {
    const std::size_t n = d.size();
    const std::vector<T> wsq = data.weight_sq();
    Matrix<T> g(n, n);
    for (std::size_t k = 0; k < data.size(); ++k) {
        std::vector<T> powers(n);
        for (std::size_t j = 0; j < n; ++j) powers[j] = numeric::scalar_pow(data.x()[k], static_cast<unsigned>(d[j]));
        for (std::size_t i = 0; i < n; ++i) {
            T left = numeric::conj(powers[i]);
            if (!wsq.empty()) left *= wsq[k];
            for (std::size_t j = 0; j < n; ++j) g(i, j) += left * powers[j];
        }
    }
    return g;
}

/// D = sum over n-subsets k of |w_k|^2 |s_lambda(x_k) V(x_k)|^2, which equals
/// det of the Gram matrix. Throws InsufficientData when m < n.
template <Field T>
T denominator(const Exponents& d, const DataSet<T>& data) {
    if (data.size() < d.size())
        throw InsufficientData("need at least " + std::to_string(d.size()) + " data points, got " +
                               std::to_string(data.size()));
    const Model<T> model(d);
    const std::vector<T> wsq = data.weight_sq();
    EvaluationCount count;
    return detail::denominator_sum<T>(model, data.x(), wsq, d.size(), {}, {}, count);
}

/// S_{i,j} = sum over (n-1)-subsets l of |w_l|^2 s_{lambda[i]}(x_l) conj(s_{lambda[j]}(x_l)) |V(x_l)|^2,
/// the minor of the Gram matrix with row j and column i deleted (0-based i, j).
template <Field T>
T minor_sum(const Exponents& d, const DataSet<T>& data, std::size_t i, std::size_t j) {
    const std::size_t n = d.size();
    if (i >= n || j >= n) throw std::out_of_range("minor_sum: index out of range");
    if (data.size() + 1 < n)
        throw InsufficientData("minor sums need at least " + std::to_string(n - 1) + " data points");
    const Model<T> model(d);
    const std::vector<T> wsq = data.weight_sq();
    const bool weighted = !wsq.empty();
    T total(0);
    detail::for_each_subset<T>(data.x(), wsq, n - 1, {}, {}, [&](std::span<const T> z, auto, const T& weight) {
        T term = model.schur_dropped(i, z) * numeric::conj(model.schur_dropped(j, z)) *
                 numeric::magnitude_sq(symfunc::vandermonde(z));
        if (weighted) term *= weight;
        total += term;
    });
    return total;
}

/// All cached aggregates of the closed form: S (minors), T (moments), D.
template <Field T>
struct Aggregates {
    Matrix<T> minors;
    std::vector<T> moments;
    T denominator;
    double magnitude = 0.0;  ///< degeneracy reference, float mode only
    EvaluationCount evaluations;
};

template <Field T>
Aggregates<T> aggregates(const Model<T>& model, const DataSet<T>& data) {
    const std::size_t n = model.size();
    const std::vector<T> wsq = data.weight_sq();
    Aggregates<T> agg;
    agg.denominator = data.size() >= n ? detail::denominator_sum<T>(model, data.x(), wsq, n, {}, {}, agg.evaluations,
                                                                    &agg.magnitude)
                                       : T(0);
    agg.minors = data.size() + 1 >= n ? detail::minor_sums<T>(model, data.x(), wsq, n - 1, {}, {}, agg.evaluations)
                                      : Matrix<T>(n, n);
    agg.moments = detail::moments<T>(model.degrees(), data.x(), data.y(), wsq, agg.evaluations);
    return agg;
}

template <Field T>
struct FitResult {
    std::vector<T> coefficients;  ///< a, ordered as d
    T denominator;                ///< D > 0
    std::vector<T> numerators;    ///< N_i, with a_i = N_i / D
    T residual_sq;                ///< squared minimal distance, real
    double residual = 0.0;        ///< minimal distance d(Aa, y)
    EvaluationCount evaluations;
};

/// Closed-form least-squares fit of f(x) = sum_i a_i x^{d_i}, weighted when
/// the data carries weights:
///   a_i = sum_j (-1)^{i+j} S_{i,j} T_j / D.
/// All sums are division-free; the only division is the final one by D.
///
/// Throws InsufficientData when m < n and NonUniqueSolution when D vanishes.
template <Field T>
FitResult<T> fit(const Exponents& d, const DataSet<T>& data) {
    const std::size_t n = d.size();
    if (data.size() < n)
        throw InsufficientData("need at least " + std::to_string(n) + " data points, got " +
                               std::to_string(data.size()));
    const Model<T> model(d);
    const std::vector<T> wsq = data.weight_sq();

    FitResult<T> result;
    double magnitude = 0.0;
    result.denominator = detail::denominator_sum<T>(model, data.x(), wsq, n, {}, {}, result.evaluations, &magnitude);
    if (is_degenerate(result.denominator, magnitude)) throw NonUniqueSolution(detail::non_unique_message(d));

    const Matrix<T> minors = detail::minor_sums<T>(model, data.x(), wsq, n - 1, {}, {}, result.evaluations);
    const std::vector<T> moments = detail::moments<T>(d, data.x(), data.y(), wsq, result.evaluations);
    result.numerators = numerators<T>(minors, moments);
    result.coefficients.reserve(n);
    for (const T& num : result.numerators) result.coefficients.push_back(num / result.denominator);

    result.residual_sq =
        detail::residual_sq<T>(detail::weighted_norm_sq<T>(data.y(), wsq), moments, result.coefficients);
    result.residual = detail::to_distance(result.residual_sq);
    return result;
}

/// Weighted fit; identical to fit() on a data set carrying the weights.
template <Field T>
FitResult<T> fit_weighted(const Exponents& d, std::vector<T> x, std::vector<T> y, std::vector<T> w) {
    return fit(d, DataSet<T>(std::move(x), std::move(y), std::move(w)));
}

/// B with its shared normalizer deferred: B = scaled / sqrt(scale_sq).
///
/// Column c belongs to the (n-1)-subset columns[c]; scaled(i, c) equals
/// (-1)^{i+1} w_l s_{lambda[i]}(x_l) V(x_l) for 0-based row i, which is the
/// (-1)^i of the 1-based convention. scale_sq is D. Exact mode never takes the
/// root; float mode exposes the normalized entries through values().
template <Field T>
struct BMatrix {
    Matrix<T> scaled;
    T scale_sq;
    std::vector<std::vector<std::size_t>> columns;

    Matrix<T> values() const requires(!numeric::is_exact_v<T>) {
        const double root = std::sqrt(scale_sq.real());
        Matrix<T> out = scaled;
        for (T& v : out.data()) v /= root;
        return out;
    }
};

namespace detail {

template <Field T>
T weight_product(std::span<const T> w, std::span<const std::size_t> subset) {
    T p(1);
    for (std::size_t k : subset) p *= w[k];
    return p;
}

/// One column of scaled B for the variables z with weight product wl.
template <Field T>
void b_column(const Model<T>& model, std::span<const T> z, const T* wl, std::span<T> out) {
    model.schur_dropped(z, out);
    T common = symfunc::vandermonde(z);
    if (wl != nullptr) common *= *wl;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= common;
        if (i % 2 == 0) out[i] = -out[i];
    }
}

template <Field T>
void require_unique(const Exponents& d, const T& D, double magnitude) {
    if (is_degenerate(D, magnitude)) throw NonUniqueSolution(non_unique_message(d));
}

} // namespace detail

template <Field T>
BMatrix<T> b_matrix(const Exponents& d, const DataSet<T>& data) {
    const std::size_t n = d.size();
    if (data.size() < n)
        throw InsufficientData("need at least " + std::to_string(n) + " data points, got " +
                               std::to_string(data.size()));
    const Model<T> model(d);
    const std::vector<T> wsq = data.weight_sq();
    EvaluationCount count;
    BMatrix<T> b;
    double magnitude = 0.0;
    b.scale_sq = detail::denominator_sum<T>(model, data.x(), wsq, n, {}, {}, count, &magnitude);
    detail::require_unique(d, b.scale_sq, magnitude);

    const Combinations columns(data.size(), n - 1);
    b.scaled = Matrix<T>(n, columns.size());
    std::vector<T> column(n);
    std::size_t c = 0;
    detail::for_each_subset<T>(data.x(), {}, n - 1, {}, {}, [&](std::span<const T> z, auto subset, const T&) {
        if (data.weighted()) {
            const T wl = detail::weight_product(data.weights(), subset);
            detail::b_column(model, z, &wl, std::span<T>(column));
        } else {
            detail::b_column<T>(model, z, nullptr, std::span<T>(column));
        }
        for (std::size_t i = 0; i < n; ++i) b.scaled(i, c) = column[i];
        b.columns.emplace_back(subset.begin(), subset.end());
        ++c;
    });
    return b;
}

/// (B B*) = (A*W*WA)^{-1}, formed from the deferred-root B so the root
/// factors combine into a single division by D.
template <Field T>
Matrix<T> b_gram(const BMatrix<T>& b) {
    Matrix<T> out = b.scaled * adjoint(b.scaled);
    for (T& v : out.data()) v /= b.scale_sq;
    return out;
}

/// A+ = B B* A* W*W (n x m), with A+ A = 1.
template <Field T>
Matrix<T> pseudoinverse(const Exponents& d, const DataSet<T>& data) {
    const BMatrix<T> b = b_matrix(d, data);
    Matrix<T> a_star = adjoint(design_matrix(d, data.x()));
    if (data.weighted()) {
        const std::vector<T> wsq = data.weight_sq();
        for (std::size_t i = 0; i < a_star.rows(); ++i)
            for (std::size_t k = 0; k < a_star.cols(); ++k) a_star(i, k) *= wsq[k];
    }
    return b_gram(b) * a_star;
}

template <Field T>
struct Projection {
    Matrix<T> projector;  ///< P = A A+, the projection onto the image of A
    T residual_sq;        ///< <y | W*W (1 - P) y>
    double residual = 0.0;
};

/// P = A A+ (= AB(AB)* when unweighted) and the minimal distance
/// sqrt(<y | P-perp y>) in the (weighted) inner product.
template <Field T>
Projection<T> projection_residual(const Exponents& d, const DataSet<T>& data) {
    const Matrix<T> a = design_matrix(d, data.x());
    Projection<T> out;
    out.projector = a * pseudoinverse(d, data);
    const std::vector<T> wsq = data.weight_sq();
    const std::vector<T> py = out.projector * data.y();
    T value(0);
    for (std::size_t k = 0; k < data.size(); ++k) {
        T term = numeric::conj(data.y()[k]) * (data.y()[k] - py[k]);
        if (!wsq.empty()) term *= wsq[k];
        value += term;
    }
    value = numeric::real_part(value);
    if constexpr (!numeric::is_exact_v<T>) {
        if (value.real() < 0.0) value = T(0);
    }
    out.residual_sq = value;
    out.residual = detail::to_distance(value);
    return out;
}

} // namespace schurfit::regress
