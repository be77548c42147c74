#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schurfit/partitions.hpp"

#include <set>

using namespace schurfit;

TEST_CASE("exponent validation") {
    CHECK_NOTHROW(Exponents({4, 2, 0}));
    CHECK_NOTHROW(Exponents({7}));
    CHECK_THROWS_AS(Exponents({}), std::invalid_argument);
    CHECK_THROWS_AS(Exponents({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Exponents({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(Exponents({3, -1}), std::invalid_argument);
    CHECK(Exponents::descending(3) == Exponents({3, 2, 1, 0}));
    CHECK(Exponents::descending(0) == Exponents({0}));
    CHECK(Exponents::descending(2).is_staircase());
    CHECK_FALSE(Exponents({4, 2, 0}).is_staircase());
    CHECK_FALSE(Exponents({2, 1}).is_staircase());
    CHECK(Exponents({4, 2, 0}).total() == 6);
}

TEST_CASE("partition validation and equality") {
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({1, -1}), std::invalid_argument);
    const Partition p({3, 2, 0});
    CHECK(p.length() == 2);
    CHECK(p.size() == 3);
    CHECK(p.weight() == 5);
    CHECK(p.largest() == 3);
    CHECK(p[5] == 0);
    CHECK(p == Partition({3, 2}));
    CHECK_FALSE(p == Partition({3, 2, 1}));
    CHECK(Partition() == Partition({0, 0}));
}

TEST_CASE("lambda from degrees") {
    const Exponents d({4, 2, 0});
    CHECK(lambda_from_degrees(d) == Partition({2, 1, 0}));
    CHECK(lambda_drop(d, 0) == Partition({1, 0}));
    CHECK(lambda_drop(d, 1) == Partition({3, 0}));
    CHECK(lambda_drop(d, 2) == Partition({3, 2}));
    CHECK_THROWS_AS(lambda_drop(d, 3), std::out_of_range);

    // Ordinary regression: lambda is empty and lambda[i] is the column (1^{i}).
    const Exponents poly = Exponents::descending(4);
    CHECK(lambda_from_degrees(poly) == Partition());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Partition li = lambda_drop(poly, i);
        CHECK(li.length() == i);
        CHECK(li.largest() == (i == 0 ? 0 : 1));
    }
    CHECK(lambda_drop(Exponents({5}), 0) == Partition());
}

TEST_CASE("conjugate") {
    CHECK(conjugate(Partition({3, 2})) == Partition({2, 2, 1}));
    CHECK(conjugate(Partition({1, 1, 1})) == Partition({3}));
    CHECK(conjugate(Partition()) == Partition());
    CHECK(conjugate(Partition({4, 2, 2, 1})).parts().size() == 4);
    for (const auto& parts : std::vector<std::vector<int>>{{5, 3, 3, 1}, {2, 2}, {6}, {1, 1, 1, 1}})
        CHECK(conjugate(conjugate(Partition(parts))) == Partition(parts));
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(200, 3) == 1313400);
    CHECK(binomial(60, 30) == 118264581564861424ULL);
}

TEST_CASE("combinations enumerate lexicographically") {
    std::vector<std::vector<std::size_t>> seen;
    for (auto s : Combinations(5, 3)) seen.emplace_back(s.begin(), s.end());
    REQUIRE(seen.size() == 10);
    CHECK(seen.front() == std::vector<std::size_t>{0, 1, 2});
    CHECK(seen[1] == std::vector<std::size_t>{0, 1, 3});
    CHECK(seen.back() == std::vector<std::size_t>{2, 3, 4});
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::set(seen.begin(), seen.end()).size() == 10);

    int empties = 0;
    for (auto s : Combinations(4, 0)) {
        CHECK(s.empty());
        ++empties;
    }
    CHECK(empties == 1);
    int full = 0;
    for (auto s : Combinations(3, 3)) full += static_cast<int>(s.size());
    CHECK(full == 3);
    CHECK_THROWS_AS(Combinations(2, 3), std::invalid_argument);
    CHECK(Combinations(7, 4).size() == 35);
}

TEST_CASE("rank and unrank invert each other") {
    for (std::size_t m = 0; m <= 8; ++m)
        for (std::size_t r = 0; r <= m; ++r) {
            std::uint64_t expected = 0;
            for (auto s : Combinations(m, r)) {
                CHECK(subset_rank(m, s) == expected);
                const auto back = subset_unrank(m, r, expected);
                CHECK(std::equal(back.begin(), back.end(), s.begin(), s.end()));
                ++expected;
            }
            CHECK(expected == binomial(m, r));
        }
    CHECK_THROWS_AS(subset_unrank(5, 2, 10), std::out_of_range);
    const std::size_t unordered[] = {2, 1};
    CHECK_THROWS_AS(subset_rank(5, unordered), std::invalid_argument);
}
