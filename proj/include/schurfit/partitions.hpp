#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace schurfit {

/// Model signature d = (d_1 > d_2 > ... > d_n >= 0) of f(x) = sum_i a_i x^{d_i}.
class Exponents {
public:
    /// Throws std::invalid_argument unless `d` is non-empty, strictly
    /// decreasing and non-negative.
    explicit Exponents(std::vector<int> d);

    /// (k, k-1, ..., 0): ordinary polynomial regression of degree k.
    static Exponents descending(int degree);

    std::size_t size() const { return d_.size(); }
    int operator[](std::size_t i) const { return d_[i]; }
    std::span<const int> values() const { return d_; }
    long total() const;

    auto begin() const { return d_.begin(); }
    auto end() const { return d_.end(); }

    bool operator==(const Exponents&) const = default;

    /// True for (n-1, ..., 1, 0).
    bool is_staircase() const;

private:
    std::vector<int> d_;
};

/// Weakly decreasing tuple of non-negative integers. Trailing zeros are kept
/// as given but ignored by equality.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    std::span<const int> parts() const { return parts_; }
    /// Stored length, trailing zeros included.
    std::size_t size() const { return parts_.size(); }
    /// Number of nonzero parts.
    std::size_t length() const;
    int weight() const;
    /// Largest part, 0 for the empty partition.
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    /// i-th part, 0 past the stored length.
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    friend bool operator==(const Partition& a, const Partition& b);

private:
    std::vector<int> parts_;
};

/// lambda = d - delta(n).
Partition lambda_from_degrees(const Exponents& d);

/// lambda[i] = d<i> - delta(n-1): drop d_i (0-based index) and subtract the
/// staircase of length n-1.
Partition lambda_drop(const Exponents& d, std::size_t i);

/// Transpose of the Young diagram; the result has no trailing zeros.
Partition conjugate(const Partition& lambda);

std::uint64_t binomial(std::size_t n, std::size_t k);

/// All r-element subsets of {0, ..., m-1} as strictly increasing index tuples,
/// in lexicographic order. This order is the fixed total order used for the
/// columns of B and for every floating-point summation.
///
/// The span yielded by the iterator refers to storage owned by the iterator
/// and is only valid until the next increment.
class Combinations {
public:
    /// Throws std::invalid_argument when r > m.
    Combinations(std::size_t m, std::size_t r);

    class iterator {
    public:
        using value_type = std::span<const std::size_t>;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(std::size_t m, std::size_t r);

        value_type operator*() const { return current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return done_; }

    private:
        std::size_t m_ = 0;
        std::vector<std::size_t> current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(m_, r_); }
    std::default_sentinel_t end() const { return {}; }

    std::size_t universe() const { return m_; }
    std::size_t subset_size() const { return r_; }
    std::uint64_t size() const { return binomial(m_, r_); }

private:
    std::size_t m_;
    std::size_t r_;
};

inline Combinations enumerate_subsets(std::size_t m, std::size_t r) { return Combinations(m, r); }

/// Position of `subset` in the lexicographic enumeration of r-subsets of [m].
std::uint64_t subset_rank(std::size_t m, std::span<const std::size_t> subset);

/// Inverse of subset_rank; lets an enumeration be split into index ranges.
std::vector<std::size_t> subset_unrank(std::size_t m, std::size_t r, std::uint64_t rank);

} // namespace schurfit
