#pragma once

#include "schurfit/errors.hpp"
#include "schurfit/matrix.hpp"
#include "schurfit/numeric.hpp"
#include "schurfit/partitions.hpp"
#include "schurfit/regress.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace schurfit::incremental {

using numeric::Field;
using regress::EvaluationCount;

/// Recursive coefficient update for one appended point:
///   a'_i = (D a_i + sum_j (-1)^{i+j} ((S_ij + R_ij) q_j + R_ij T_j)) / D'
/// where q_j = |w|^2 conj(x_new)^{d_j} y_new and S, T, D are the values before
/// the update. Requires D != 0 (a must exist).
template <Field T>
std::vector<T> recursive_coefficients(const T& D, std::span<const T> a, const Matrix<T>& S, const Matrix<T>& R,
                                      std::span<const T> T_old, std::span<const T> q, const T& D_new) {
    const std::size_t n = a.size();
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        T num = D * a[i];
        for (std::size_t j = 0; j < n; ++j) {
            T term = (S(i, j) + R(i, j)) * q[j] + R(i, j) * T_old[j];
            if ((i + j) % 2 == 0)
                num += term;
            else
                num -= term;
        }
        out[i] = num / D_new;
    }
    return out;
}

/// Cached aggregates of the closed-form fit: S_{i,j} (minor sums), T_j
/// (moments), N_i (numerators), D (denominator) plus the data seen so far.
/// Appending one point costs C(m, n-2) + C(m, n-1) subset visits instead of
/// the C(m+1, n) + C(m+1, n-1) of a refit.
///
/// A state has a single writer; copies are independent.
template <Field T>
class RegressionState {
public:
    /// Empty state: S and T are the empty sums (S is 1 for n = 1, the sum over
    /// the single empty subset), D = 0, no coefficients.
    explicit RegressionState(Exponents d, bool weighted = false)
        : model_(std::move(d)), weighted_(weighted), S_(model_.size(), model_.size()),
          T_(model_.size(), T(0)), N_(model_.size(), T(0)), D_(0), norm_sq_(0) {
        if (model_.size() == 1) {
            S_(0, 0) = T(1);
            N_ = regress::numerators<T>(S_, T_);
        }
    }

    /// init_state: batch aggregates of `data`; coefficients are present iff D is
    /// nondegenerate.
    RegressionState(Exponents d, const regress::DataSet<T>& data)
        : RegressionState(std::move(d), data.weighted()) {
        const auto agg = regress::aggregates(model_, data);
        S_ = agg.minors;
        T_ = agg.moments;
        D_ = agg.denominator;
        magnitude_ = agg.magnitude;
        N_ = regress::numerators<T>(S_, T_);
        evaluations_ = agg.evaluations;
        x_.assign(data.x().begin(), data.x().end());
        y_.assign(data.y().begin(), data.y().end());
        w_.assign(data.weights().begin(), data.weights().end());
        wsq_ = data.weight_sq();
        norm_sq_ = regress::detail::weighted_norm_sq<T>(y_, wsq_);
        refresh_coefficients();
    }

    const Exponents& degrees() const { return model_.degrees(); }
    std::size_t size() const { return x_.size(); }
    bool weighted() const { return weighted_; }
    std::span<const T> x() const { return x_; }
    std::span<const T> y() const { return y_; }
    std::span<const T> w() const { return w_; }

    const Matrix<T>& minors() const { return S_; }
    std::span<const T> moments() const { return T_; }
    std::span<const T> numerators() const { return N_; }
    const T& denominator() const { return D_; }
    const T& norm_sq() const { return norm_sq_; }
    /// Float-mode degeneracy reference for D (see regress::denominator_sum).
    double magnitude() const { return magnitude_; }

    /// Work of every init/update so far, and of the most recent update alone.
    const EvaluationCount& evaluations() const { return evaluations_; }
    const EvaluationCount& last_update() const { return last_update_; }

    /// R of the most recent update (zero before any update).
    const Matrix<T>& last_increment() const { return R_; }

    bool has_coefficients() const { return a_.has_value(); }

    /// Throws NonUniqueSolution while D is degenerate (in particular m < n).
    const std::vector<T>& coefficients() const {
        if (!a_) {
            if (size() < model_.size())
                throw NonUniqueSolution("only " + std::to_string(size()) + " points seen; " +
                                        std::to_string(model_.size()) + " coefficients need at least as many");
            throw NonUniqueSolution(regress::detail::non_unique_message(model_.degrees()));
        }
        return *a_;
    }

    T residual_sq() const { return regress::detail::residual_sq<T>(norm_sq_, T_, coefficients()); }

    /// Appends (x, y) to an unweighted state.
    void update(const T& x, const T& y) {
        if (weighted_) throw std::invalid_argument("weighted state: update needs a weight");
        append(x, y, std::nullopt);
    }

    /// Appends (x, y) with nonzero weight w to a weighted state.
    void update(const T& x, const T& y, const T& w) {
        if (!weighted_) throw std::invalid_argument("unweighted state: update takes no weight");
        if (numeric::is_zero(w)) throw std::invalid_argument("weight must be nonzero");
        append(x, y, w);
    }

    [[noreturn]] void remove_point(std::size_t) const {
        throw UnsupportedOperation("point removal is not supported; states only grow");
    }

    /// New denominator terms: sum over (n-1)-subsets k of the stored points of
    /// |w_k w|^2 |s_lambda(x_k, x) V(x_k, x)|^2.
    T denominator_increment(const T& x, const std::optional<T>& w, EvaluationCount& count,
                            double* magnitude = nullptr) const {
        const std::size_t n = model_.size();
        if (size() + 1 < n) return T(0);
        const T x_tail[1] = {x};
        std::vector<T> w_tail;
        if (w) w_tail.push_back(numeric::magnitude_sq(*w));
        return regress::detail::denominator_sum<T>(model_, x_, wsq_, n - 1, x_tail, w_tail, count, magnitude);
    }

    /// R_{i,j} = sum over (n-2)-subsets l of the stored points of
    /// |w_l w|^2 s_{lambda[i]}(x_l, x) conj(s_{lambda[j]}(x_l, x)) |V(x_l, x)|^2.
    Matrix<T> minor_increment(const T& x, const std::optional<T>& w, EvaluationCount& count) const {
        const std::size_t n = model_.size();
        if (n < 2 || size() + 2 < n) return Matrix<T>(n, n);
        const T x_tail[1] = {x};
        std::vector<T> w_tail;
        if (w) w_tail.push_back(numeric::magnitude_sq(*w));
        return regress::detail::minor_sums<T>(model_, x_, wsq_, n - 2, x_tail, w_tail, count);
    }

    const regress::Model<T>& model() const { return model_; }

    /// Rebuilds a state from stored aggregates (snapshot restore). Validates
    /// shapes and the numerator identity N = sum_j (-1)^{i+j} S_ij T_j.
    static RegressionState restore(Exponents d, bool weighted, std::vector<T> x, std::vector<T> y, std::vector<T> w,
                                   Matrix<T> S, std::vector<T> moments, T D, T norm_sq, double magnitude,
                                   std::optional<std::vector<T>> a) {
        RegressionState s(std::move(d), weighted);
        const std::size_t n = s.model_.size();
        if (x.size() != y.size() || (weighted && w.size() != x.size()) || (!weighted && !w.empty()))
            throw std::invalid_argument("snapshot: point vectors differ in length");
        if (S.rows() != n || S.cols() != n || moments.size() != n)
            throw std::invalid_argument("snapshot: aggregate shapes do not match the degrees");
        s.x_ = std::move(x);
        s.y_ = std::move(y);
        s.w_ = std::move(w);
        for (const T& wk : s.w_) s.wsq_.push_back(numeric::magnitude_sq(wk));
        s.S_ = std::move(S);
        s.T_ = std::move(moments);
        s.N_ = regress::numerators<T>(s.S_, s.T_);
        s.D_ = std::move(D);
        s.norm_sq_ = std::move(norm_sq);
        s.magnitude_ = magnitude;
        s.refresh_coefficients();
        if (a) {
            if (!s.a_ || a->size() != n) throw std::invalid_argument("snapshot: coefficients stored for a degenerate state");
            s.a_ = std::move(a);
        }
        return s;
    }

private:
    void refresh_coefficients() {
        if (x_.size() < model_.size() || regress::is_degenerate(D_, magnitude_)) {
            a_.reset();
            return;
        }
        std::vector<T> a;
        a.reserve(N_.size());
        for (const T& num : N_) a.push_back(num / D_);
        a_ = std::move(a);
    }

    void append(const T& x, const T& y, const std::optional<T>& w) {
        const std::size_t n = model_.size();
        EvaluationCount count;
        R_ = minor_increment(x, w, count);
        double magnitude_new = magnitude_;
        const T D_new = D_ + denominator_increment(x, w, count, &magnitude_new);

        const T wsq = w ? numeric::magnitude_sq(*w) : T(1);
        std::vector<T> q(n);
        const T xc = numeric::conj(x);
        for (std::size_t j = 0; j < n; ++j) {
            q[j] = numeric::scalar_pow(xc, static_cast<unsigned>(model_.degrees()[j])) * y;
            if (w) q[j] *= wsq;
        }
        count.terms += n;

        std::vector<T> delta(n, T(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const T term = (S_(i, j) + R_(i, j)) * q[j] + R_(i, j) * T_[j];
                if ((i + j) % 2 == 0)
                    delta[i] += term;
                else
                    delta[i] -= term;
            }
        count.terms += n * n;

        std::optional<std::vector<T>> float_update;
        if constexpr (!numeric::is_exact_v<T>) {
            if (a_) float_update = recursive_coefficients<T>(D_, *a_, S_, R_, T_, q, D_new);
        }

        for (std::size_t i = 0; i < n; ++i) {
            N_[i] += delta[i];
            T_[i] += q[i];
            for (std::size_t j = 0; j < n; ++j) S_(i, j) += R_(i, j);
        }
        D_ = D_new;
        magnitude_ = magnitude_new;
        T yy = numeric::magnitude_sq(y);
        if (w) yy *= wsq;
        norm_sq_ += yy;
        x_.push_back(x);
        y_.push_back(y);
        if (w) {
            w_.push_back(*w);
            wsq_.push_back(wsq);
        }

        refresh_coefficients();
        if (a_ && float_update) a_ = std::move(float_update);
        last_update_ = count;
        evaluations_ += count;
    }

    regress::Model<T> model_;
    bool weighted_;
    std::vector<T> x_, y_, w_, wsq_;
    Matrix<T> S_;
    std::vector<T> T_;
    std::vector<T> N_;
    T D_;
    double magnitude_ = 0.0;
    T norm_sq_;
    std::optional<std::vector<T>> a_;
    Matrix<T> R_;
    EvaluationCount evaluations_;
    EvaluationCount last_update_;
};

/// init_state
template <Field T>
RegressionState<T> init_state(const Exponents& d, const regress::DataSet<T>& data) {
    return RegressionState<T>(d, data);
}

/// B' for the data extended by x_new, given B for the m points of `state`.
/// Columns for the new (n-1)-subsets (those containing the new index m) are
/// appended after the existing ones; existing scaled entries are unchanged and
/// the shared normalizer becomes D' = D + new denominator terms.
template <Field T>
regress::BMatrix<T> extend_b_matrix(const RegressionState<T>& state, const regress::BMatrix<T>& prior, const T& x_new,
                                    const std::optional<T>& w_new = std::nullopt) {
    const std::size_t n = state.degrees().size();
    const std::size_t m = state.size();
    if (prior.columns.size() != binomial(m, n - 1) || prior.scaled.rows() != n)
        throw std::invalid_argument("extend_b_matrix: prior B does not match the state's points");
    if (state.weighted() != w_new.has_value())
        throw std::invalid_argument("extend_b_matrix: weight presence must match the state");

    EvaluationCount count;
    regress::BMatrix<T> out;
    out.scale_sq = state.denominator() + state.denominator_increment(x_new, w_new, count);

    const std::size_t added = n >= 2 ? binomial(m, n - 2) : 0;
    const std::size_t old_cols = prior.columns.size();
    out.scaled = Matrix<T>(n, old_cols + added);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < old_cols; ++c) out.scaled(i, c) = prior.scaled(i, c);
    out.columns = prior.columns;
    if (added == 0) return out;

    std::vector<T> column(n);
    const T x_tail[1] = {x_new};
    std::size_t c = old_cols;
    regress::detail::for_each_subset<T>(
        state.x(), {}, n - 2, x_tail, {}, [&](std::span<const T> z, std::span<const std::size_t> subset, const T&) {
            if (w_new) {
                const T wl = regress::detail::weight_product(state.w(), subset) * *w_new;
                regress::detail::b_column(state.model(), z, &wl, std::span<T>(column));
            } else {
                regress::detail::b_column<T>(state.model(), z, nullptr, std::span<T>(column));
            }
            for (std::size_t i = 0; i < n; ++i) out.scaled(i, c) = column[i];
            std::vector<std::size_t> index(subset.begin(), subset.end());
            index.push_back(m);
            out.columns.push_back(std::move(index));
            ++c;
        });
    return out;
}

// Snapshot schema (all scalars as literal strings, see numeric::format_scalar):
// {"format": "schurfit-state/1", "mode": "exact"|"float", "degrees": [...],
//  "weighted": bool, "x": [...], "y": [...], "w": [...], "S": [[...]...],
//  "T": [...], "N": [...], "D": "...", "norm_sq": "...", "magnitude": number,
//  "a": [...] | null}
inline constexpr const char* kSnapshotFormat = "schurfit-state/1";

template <Field T>
nlohmann::json to_json(const RegressionState<T>& state) {
    using nlohmann::json;
    auto scalars = [](std::span<const T> v) {
        json arr = json::array();
        for (const T& s : v) arr.push_back(numeric::format_scalar(s));
        return arr;
    };
    json S = json::array();
    for (std::size_t i = 0; i < state.minors().rows(); ++i) S.push_back(scalars(state.minors().row(i)));
    json j = {{"format", kSnapshotFormat},
              {"mode", std::string(numeric::mode_name<T>())},
              {"degrees", std::vector<int>(state.degrees().begin(), state.degrees().end())},
              {"weighted", state.weighted()},
              {"x", scalars(state.x())},
              {"y", scalars(state.y())},
              {"w", scalars(state.w())},
              {"S", S},
              {"T", scalars(state.moments())},
              {"N", scalars(state.numerators())},
              {"D", numeric::format_scalar(state.denominator())},
              {"norm_sq", numeric::format_scalar(state.norm_sq())},
              {"magnitude", state.magnitude()},
              {"a", nullptr}};
    if (state.has_coefficients()) j["a"] = scalars(state.coefficients());
    return j;
}

/// Restores a snapshot written by to_json. Throws std::invalid_argument on a
/// format or mode mismatch or when the stored numerators disagree with S, T.
template <Field T>
RegressionState<T> state_from_json(const nlohmann::json& j) {
    if (j.value("format", std::string()) != kSnapshotFormat)
        throw std::invalid_argument("snapshot: unknown format");
    if (j.at("mode").get<std::string>() != numeric::mode_name<T>())
        throw std::invalid_argument("snapshot: stored in " + j.at("mode").get<std::string>() + " mode");
    auto scalars = [](const nlohmann::json& arr) {
        std::vector<T> v;
        for (const auto& s : arr) v.push_back(numeric::parse_scalar<T>(s.get<std::string>()));
        return v;
    };
    Exponents d(j.at("degrees").get<std::vector<int>>());
    const std::size_t n = d.size();
    const auto& rows = j.at("S");
    if (rows.size() != n) throw std::invalid_argument("snapshot: S has the wrong number of rows");
    Matrix<T> S(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<T> row = scalars(rows.at(i));
        if (row.size() != n) throw std::invalid_argument("snapshot: S row has the wrong length");
        for (std::size_t k = 0; k < n; ++k) S(i, k) = row[k];
    }
    std::optional<std::vector<T>> a;
    if (!j.at("a").is_null()) a = scalars(j.at("a"));
    auto state = RegressionState<T>::restore(std::move(d), j.at("weighted").get<bool>(), scalars(j.at("x")),
                                             scalars(j.at("y")), scalars(j.at("w")), std::move(S), scalars(j.at("T")),
                                             numeric::parse_scalar<T>(j.at("D").get<std::string>()),
                                             numeric::parse_scalar<T>(j.at("norm_sq").get<std::string>()),
                                             j.at("magnitude").get<double>(), std::move(a));
    const std::vector<T> stored_n = scalars(j.at("N"));
    const auto recomputed = state.numerators();
    bool consistent = stored_n.size() == recomputed.size();
    for (std::size_t i = 0; consistent && i < n; ++i) {
        if constexpr (numeric::is_exact_v<T>) {
            consistent = stored_n[i] == recomputed[i];
        } else {
            // N accumulates update by update; allow rounding against the S, T product
            double scale = 0;
            for (std::size_t k = 0; k < n; ++k) scale += std::abs(state.minors()(i, k)) * std::abs(state.moments()[k]);
            consistent = std::abs(stored_n[i] - recomputed[i]) <= 1e-9 * scale;
        }
    }
    if (!consistent)
        throw std::invalid_argument("snapshot: numerators inconsistent with S and T");
    return state;
}

} // namespace schurfit::incremental
