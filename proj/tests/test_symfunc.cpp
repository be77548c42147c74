#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schurfit/symfunc.hpp"
#include "support.hpp"

using namespace schurfit;
using numeric::Complex;
using numeric::GaussRational;
using testing_support::Rng;

namespace {

GaussRational q(long p, long d = 1) { return GaussRational(mpq_class(p, d)); }

// e_k by summing products over k-subsets.
GaussRational elementary_by_subsets(std::span<const GaussRational> z, std::size_t k) {
    GaussRational total(0);
    for (auto s : Combinations(z.size(), k)) {
        GaussRational p(1);
        for (std::size_t i : s) p *= z[i];
        total += p;
    }
    return total;
}

std::vector<Partition> partitions_up_to(int max_weight, std::size_t max_parts) {
    std::vector<Partition> out;
    std::vector<int> parts;
    auto grow = [&](auto&& self, int remaining, int cap) -> void {
        out.emplace_back(parts);
        if (parts.size() == max_parts) return;
        for (int p = std::min(cap, remaining); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    grow(grow, max_weight, max_weight);
    return out;
}

} // namespace

TEST_CASE("elementary symmetric polynomials") {
    Rng rng(1);
    for (std::size_t r = 0; r <= 6; ++r) {
        const auto z = testing_support::distinct_rationals(rng, r);
        const auto e = symfunc::elem_sym_all<GaussRational>(z);
        REQUIRE(e.size() == r + 1);
        for (std::size_t k = 0; k <= r; ++k) CHECK(e[k] == elementary_by_subsets(z, k));
    }
}

TEST_CASE("vandermonde is the staircase alternant") {
    Rng rng(2);
    for (std::size_t r = 1; r <= 5; ++r) {
        const auto z = testing_support::distinct_rationals(rng, r);
        std::vector<int> delta(r);
        for (std::size_t j = 0; j < r; ++j) delta[j] = static_cast<int>(r - 1 - j);
        CHECK(symfunc::alternating<GaussRational>(delta, z) == symfunc::vandermonde<GaussRational>(z));
    }
    const GaussRational z[] = {q(1), q(2), q(4)};
    CHECK(symfunc::vandermonde<GaussRational>(z) == q((1 - 2) * (1 - 4) * (2 - 4)));
    CHECK(symfunc::vandermonde<GaussRational>(std::span<const GaussRational>()) == q(1));
    const int bad[] = {1, 1, 0};
    CHECK_THROWS_AS(symfunc::alternating<GaussRational>(bad, z), std::invalid_argument);
}

TEST_CASE("tableau counts") {
    // s_(2,1)(x1,x2,x3): 8 tableaux, x1 x2 x3 appearing twice.
    const auto contents = symfunc::tableau_contents(Partition({2, 1}), 3);
    std::uint64_t total = 0;
    for (const auto& [c, n] : contents) total += n;
    CHECK(total == 8);
    CHECK(contents.at({1, 1, 1}) == 2);
    CHECK(symfunc::tableau_contents(Partition({1, 1, 1}), 2).empty());
    CHECK(symfunc::tableau_contents(Partition(), 3).size() == 1);
}

TEST_CASE("schur evaluations agree") {
    Rng rng(3);
    for (const Partition& lambda : partitions_up_to(6, 4)) {
        for (std::size_t r = 1; r <= 4; ++r) {
            const auto z = testing_support::distinct_rationals(rng, r);
            const GaussRational jt = symfunc::schur<GaussRational>(lambda, z);
            CHECK(jt == symfunc::schur_bialternant<GaussRational>(lambda, z));
            CHECK(jt == symfunc::schur_tableaux<GaussRational>(lambda, z));
        }
    }
}

TEST_CASE("schur on complex points and shared elementaries") {
    Rng rng(4);
    const Partition lambda({3, 1, 1});
    for (int t = 0; t < 20; ++t) {
        std::vector<GaussRational> z;
        for (int i = 0; i < 3; ++i) z.push_back(testing_support::gaussian_rational(rng));
        const symfunc::SchurEvaluator<GaussRational> s(lambda);
        CHECK(s(z) == symfunc::schur_tableaux<GaussRational>(lambda, z));
        CHECK(s.from_elementary(symfunc::elem_sym_all<GaussRational>(z)) == s(z));
        // conj commutes with evaluation (integer coefficients)
        std::vector<GaussRational> zc;
        for (const auto& v : z) zc.push_back(numeric::conj(v));
        CHECK(s(zc) == numeric::conj(s(z)));
    }
}

TEST_CASE("schur edge cases") {
    const GaussRational z[] = {q(2), q(3)};
    CHECK(symfunc::schur<GaussRational>(Partition(), z) == q(1));
    CHECK(symfunc::schur<GaussRational>(Partition({1, 1, 1}), z) == q(0));
    CHECK(symfunc::schur_bialternant<GaussRational>(Partition({1, 1, 1}), z) == q(0));
    CHECK(symfunc::schur<GaussRational>(Partition({2}), std::span<const GaussRational>()) == q(0));
    CHECK(symfunc::schur<GaussRational>(Partition(), std::span<const GaussRational>()) == q(1));
    // one variable: s_(k)(x) = x^k
    const GaussRational one[] = {q(-3, 2)};
    CHECK(symfunc::schur<GaussRational>(Partition({5}), one) == numeric::scalar_pow(q(-3, 2), 5));

    const GaussRational repeated[] = {q(1), q(5), q(1)};
    CHECK_THROWS_WITH_AS(symfunc::schur_bialternant<GaussRational>(Partition({1}), repeated),
                         doctest::Contains("z_1 == z_3"), std::domain_error);
    // Jacobi-Trudi needs no distinctness: s_(1)(1,5,1) = 7.
    CHECK(symfunc::schur<GaussRational>(Partition({1}), repeated) == q(7));

    const GaussRational seven[] = {q(1), q(2), q(3), q(4), q(5), q(6), q(7)};
    CHECK_THROWS_AS(symfunc::schur_tableaux<GaussRational>(Partition({1}), seven), std::length_error);
    const GaussRational two[] = {q(1), q(2)};
    CHECK_THROWS_AS(symfunc::schur_tableaux<GaussRational>(Partition({13}), two), std::length_error);
}

TEST_CASE("alternant divisibility") {
    // a_{lambda+delta} / V is a polynomial: at integer points it is an integer.
    Rng rng(5);
    for (const Partition& lambda : partitions_up_to(5, 3)) {
        std::vector<GaussRational> z;
        while (z.size() < 3) {
            GaussRational v(testing_support::uniform_int(rng, -6, 6));
            if (std::find(z.begin(), z.end(), v) == z.end()) z.push_back(v);
        }
        const GaussRational s = symfunc::schur_bialternant<GaussRational>(lambda, z);
        CHECK(s.real().get_den() == 1);
    }
}

TEST_CASE("float evaluation tracks exact") {
    Rng rng(6);
    for (const Partition& lambda : partitions_up_to(6, 3)) {
        const auto z = testing_support::distinct_rationals(rng, 3, 4, 3);
        const auto zf = testing_support::to_float(z);
        const Complex exact = numeric::to_complex(symfunc::schur<GaussRational>(lambda, z));
        const Complex approx = symfunc::schur<Complex>(lambda, zf);
        CHECK(std::abs(approx - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
    }
}
