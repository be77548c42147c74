#include "schurfit/partitions.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace schurfit {

Exponents::Exponents(std::vector<int> d) : d_(std::move(d)) {
    if (d_.empty()) throw std::invalid_argument("exponent tuple must be non-empty");
    if (d_.back() < 0) throw std::invalid_argument("exponents must be non-negative");
    for (std::size_t i = 1; i < d_.size(); ++i)
        if (d_[i - 1] <= d_[i])
            throw std::invalid_argument("exponents must be strictly decreasing (d_" + std::to_string(i) +
                                        " = " + std::to_string(d_[i - 1]) + ", d_" + std::to_string(i + 1) +
                                        " = " + std::to_string(d_[i]) + ")");
}

Exponents Exponents::descending(int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    std::vector<int> d(static_cast<std::size_t>(degree) + 1);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = degree - static_cast<int>(i);
    return Exponents(std::move(d));
}

long Exponents::total() const { return std::accumulate(d_.begin(), d_.end(), 0L); }

bool Exponents::is_staircase() const { return d_.back() == 0 && d_.front() == static_cast<int>(d_.size()) - 1; }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw std::invalid_argument("partition parts must be non-negative");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

std::size_t Partition::length() const {
    std::size_t n = 0;
    while (n < parts_.size() && parts_[n] > 0) ++n;
    return n;
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool operator==(const Partition& a, const Partition& b) {
    const std::size_t n = a.length();
    if (n != b.length()) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (a.parts_[i] != b.parts_[i]) return false;
    return true;
}

Partition lambda_from_degrees(const Exponents& d) {
    const std::size_t n = d.size();
    std::vector<int> parts(n);
    for (std::size_t k = 0; k < n; ++k) parts[k] = d[k] - static_cast<int>(n - 1 - k);
    return Partition(std::move(parts));
}

Partition lambda_drop(const Exponents& d, std::size_t i) {
    const std::size_t n = d.size();
    if (i >= n) throw std::out_of_range("lambda_drop: index out of range");
    std::vector<int> parts;
    parts.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        if (k != i) parts.push_back(d[k]);
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] -= static_cast<int>(parts.size() - 1 - k);
    return Partition(std::move(parts));
}

Partition conjugate(const Partition& lambda) {
    std::vector<int> parts(static_cast<std::size_t>(lambda.largest()), 0);
    for (int part : lambda.parts())
        for (int j = 0; j < part; ++j) ++parts[static_cast<std::size_t>(j)];
    return Partition(std::move(parts));
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return result;
}

Combinations::Combinations(std::size_t m, std::size_t r) : m_(m), r_(r) {
    if (r > m)
        throw std::invalid_argument("cannot choose " + std::to_string(r) + " elements from " + std::to_string(m));
}

Combinations::iterator::iterator(std::size_t m, std::size_t r) : m_(m), current_(r), done_(false) {
    std::iota(current_.begin(), current_.end(), std::size_t{0});
}

Combinations::iterator& Combinations::iterator::operator++() {
    const std::size_t r = current_.size();
    std::size_t i = r;
    while (i > 0 && current_[i - 1] == m_ - r + (i - 1)) --i;
    if (i == 0) {
        done_ = true;
        return *this;
    }
    ++current_[i - 1];
    for (std::size_t j = i; j < r; ++j) current_[j] = current_[j - 1] + 1;
    return *this;
}

std::uint64_t subset_rank(std::size_t m, std::span<const std::size_t> subset) {
    const std::size_t r = subset.size();
    std::uint64_t rank = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (subset[i] < next || subset[i] >= m) throw std::invalid_argument("subset_rank: not a strictly increasing subset of [m]");
        for (std::size_t v = next; v < subset[i]; ++v) rank += binomial(m - 1 - v, r - 1 - i);
        next = subset[i] + 1;
    }
    return rank;
}

std::vector<std::size_t> subset_unrank(std::size_t m, std::size_t r, std::uint64_t rank) {
    if (r > m || rank >= binomial(m, r)) throw std::out_of_range("subset_unrank: rank out of range");
    std::vector<std::size_t> subset(r);
    std::size_t v = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (;; ++v) {
            const std::uint64_t block = binomial(m - 1 - v, r - 1 - i);
            if (rank < block) break;
            rank -= block;
        }
        subset[i] = v++;
    }
    return subset;
}

} // namespace schurfit
