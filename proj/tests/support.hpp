#pragma once

// Seeded random instances shared by the unit and acceptance tests.

#include "schurfit/numeric.hpp"
#include "schurfit/partitions.hpp"
#include "schurfit/regress.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testing_support {

using schurfit::Exponents;
using schurfit::numeric::Complex;
using schurfit::numeric::GaussRational;
using Rng = std::mt19937_64;

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// p/q with |p| <= num, 1 <= q <= den.
inline GaussRational rational(Rng& rng, long num = 9, long den = 5) {
    return GaussRational(mpq_class(uniform_int(rng, -num, num), uniform_int(rng, 1, den)));
}

inline GaussRational gaussian_rational(Rng& rng, long num = 5, long den = 3) {
    return GaussRational(mpq_class(uniform_int(rng, -num, num), uniform_int(rng, 1, den)),
                         mpq_class(uniform_int(rng, -num, num), uniform_int(rng, 1, den)));
}

/// `count` pairwise distinct rationals.
inline std::vector<GaussRational> distinct_rationals(Rng& rng, std::size_t count, long num = 9, long den = 5) {
    std::vector<GaussRational> out;
    while (out.size() < count) {
        GaussRational v = rational(rng, num, den);
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<GaussRational> rationals(Rng& rng, std::size_t count, long num = 9, long den = 5) {
    std::vector<GaussRational> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(rational(rng, num, den));
    return out;
}

/// Random strictly decreasing exponents with n entries and d_1 <= max_degree.
inline Exponents exponents(Rng& rng, std::size_t n, int max_degree) {
    std::vector<int> pool(static_cast<std::size_t>(max_degree) + 1);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> d(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(d.rbegin(), d.rend());
    return Exponents(std::move(d));
}

/// Exact instance with m >= n pairwise distinct positive x (so the fit is unique).
inline schurfit::regress::DataSet<GaussRational> positive_data(Rng& rng, std::size_t m) {
    std::vector<GaussRational> x;
    while (x.size() < m) {
        GaussRational v(mpq_class(uniform_int(rng, 1, 12), uniform_int(rng, 1, 4)));
        if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(std::move(v));
    }
    return {std::move(x), rationals(rng, m)};
}

inline std::vector<Complex> to_float(std::span<const GaussRational> v) {
    std::vector<Complex> out;
    for (const auto& s : v) out.push_back(schurfit::numeric::to_complex(s));
    return out;
}

} // namespace testing_support
