#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "twistcube/cube.hpp"

using namespace twistcube;

namespace {

const CubeSpec ex1(2, {3, 5}, {{1, 2, 1}});    // c12 = 1, l = (3,5)
const CubeSpec ex2(2, {-7, 5}, {{1, 2, -1}});  // c12 = -1, l = (-7,5)
const CubeSpec bad(2, {4, 3}, {{1, 2, 2}});    // c12 = 2, l = (4,3)
const CubeSpec good(2, {2, 3}, {{1, 2, -1}});  // c12 = -1, l = (2,3)

LatticePoint pt(std::initializer_list<Int> v) { return LatticePoint(v); }

} // namespace

TEST_CASE("CubeSpec stores only the strict upper triangle") {
    CHECK(ex1.c(1, 2) == 1);
    CHECK_THROWS_AS((void)ex1.c(2, 1), UsageError);
    CHECK_THROWS_AS((void)ex1.c(1, 1), UsageError);
    CHECK_THROWS_AS((void)ex1.c(1, 3), UsageError);
    CHECK_THROWS_AS(CubeSpec(2, {1}), UsageError);
    CHECK_THROWS_AS(CubeSpec(2, {1, 2}, {{2, 1, 5}}), UsageError);
}

TEST_CASE("eval_A") {
    CHECK(eval_A(ex1, 2, LatticePoint{}) == 5);
    CHECK(eval_A(ex1, 1, pt({5})) == -2);
    CHECK(eval_A(CubeSpec(1, {0}), 1, LatticePoint{}) == 0);

    CHECK_THROWS_AS(eval_A(ex1, 1, LatticePoint{}), UsageError);
    CHECK_THROWS_AS(eval_A(ex1, 3, LatticePoint{}), UsageError);
    CHECK_THROWS_AS(eval_A(ex1, 0, pt({1, 2})), UsageError);

    const CubeSpec huge(2, {INT64_MAX, 0}, {{1, 2, -1}});
    CHECK_THROWS_AS(eval_A(huge, 1, pt({1})), OverflowError);
}

TEST_CASE("sgn") {
    CHECK(sgn(-3) == 1);
    CHECK(sgn(0) == -1);
    CHECK(sgn(7) == -1);
}

TEST_CASE("satisfies_S on integer and rational points") {
    CHECK(satisfies_S(ex1, 1, pt({1, 1})));
    CHECK_FALSE(satisfies_S(ex1, 1, pt({0, 4})));
    CHECK_FALSE(satisfies_S(CubeSpec(1, {-7}), 1, pt({-7})));

    // the slit x_1 = 0, 3 < x_2 < 5 is missing at every rational height
    const RationalPoint slit{Rational(0), Rational(7, 2)};
    CHECK_FALSE(satisfies_S(ex1, 1, slit));
    const RationalPoint just_left{Rational(-1, 4), Rational(7, 2)};
    CHECK(satisfies_S(ex1, 1, just_left)); // A_1 = -1/2 < -1/4 < 0
}

TEST_CASE("member") {
    CHECK(member(ex2, pt({-3, 2})));
    CHECK_FALSE(member(ex2, pt({0, 0})));
    CHECK(member(ex1, pt({0, 0})));
    CHECK_THROWS_AS(member(ex1, pt({0})), UsageError);
}

TEST_CASE("density") {
    CHECK(density(ex1, pt({1, 1})) == 1);
    CHECK(density(ex1, pt({-1, 5})) == -1);
    CHECK(density(ex1, pt({10, 10})) == 0);
}

TEST_CASE("enumerate_lattice: first example") {
    const auto pts = enumerate_lattice(ex1);
    REQUIRE(pts.size() == 11);
    int neg = 0;
    for (const auto& p : pts) {
        if (p.sign < 0) {
            ++neg;
            CHECK(p.x == pt({-1, 5}));
        } else {
            CHECK(p.x[0] >= 0);
            CHECK(p.x[0] <= 3 - p.x[1]);
        }
    }
    CHECK(neg == 1);
    // lexicographic in (x_2, x_1)
    CHECK(pts.front().x == pt({0, 0}));
    CHECK(pts[1].x == pt({1, 0}));
    CHECK(pts.back().x == pt({-1, 5}));
}

TEST_CASE("enumerate_lattice: single point and second example") {
    const auto one = enumerate_lattice(CubeSpec(1, {0}));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == SignedPoint{pt({0}), 1});

    // frozen from the box-scan oracle: 21 points, all sign -1
    const auto pts = enumerate_lattice(ex2);
    CHECK(pts.size() == 21);
    for (const auto& p : pts) CHECK(p.sign == -1);

    CHECK(enumerate_lattice(CubeSpec(1, {-1})).empty());
}

TEST_CASE("enumerate_lattice honours the point cap") {
    const CubeSpec big(2, {50, 50});
    CHECK_THROWS_AS(enumerate_lattice(big, {100}), CapacityError);
    CHECK(enumerate_lattice(big, {51 * 51}).size() == 51 * 51);
}

TEST_CASE("truncated") {
    CHECK(truncated(ex1, 1) == CubeSpec(1, {5}));
    CHECK(truncated(ex1, 2) == ex1);
    CHECK_THROWS_AS(truncated(ex1, 0), UsageError);
    CHECK_THROWS_AS(truncated(ex1, 3), UsageError);

    CubeSpec six(6, {0, 0, 0, 2, 0, 0});
    const Int table[5][5] = {{-1, 2, -1, 2, -1}, {-1, 0, -1, 2}, {-1, 2, -1}, {-1, 0}, {-1}};
    for (std::size_t i = 1; i <= 5; ++i) {
        for (std::size_t j = i + 1; j <= 6; ++j) six.set_c(i, j, table[i - 1][j - i - 1]);
    }
    CHECK(truncated(six, 3) == CubeSpec(3, {2, 0, 0}, {{1, 2, -1}, {1, 3, 0}, {2, 3, -1}}));
}

TEST_CASE("lattice projection can miss points where A_j = -1") {
    const CubeSpec s(2, {-1, 2});
    CHECK(enumerate_lattice(s).empty());
    CHECK(enumerate_lattice(truncated(s, 1)).size() == 3);
}

TEST_CASE("check_condition_P") {
    const auto r = check_condition_P(bad);
    CHECK_FALSE(r.holds);
    CHECK(r.failing_k == 1);
    CHECK(r.vertex == pt({3}));
    CHECK(r.value == -2);

    CHECK(check_condition_P(CubeSpec(1, {5})).holds);
    CHECK_FALSE(check_condition_P(CubeSpec(1, {-1})).holds);
    CHECK(check_condition_P(good).holds);

    // half-integer sweep of (P-1) for the good spec: A_1(x_2) = 2 + x_2 >= 0 on [0, 3]
    for (int twice = 0; twice <= 6; ++twice) {
        const RationalPoint tail{Rational(twice, 2)};
        CHECK(eval_A(good, 1, tail) >= Rational(0));
    }
}

TEST_CASE("property: enumeration equals box scan; density support; projections") {
    oracle::SpecGen gen(20240611);
    for (int trial = 0; trial < 150; ++trial) {
        const CubeSpec s = gen.next(1, 4, 2, -3, 3);
        const auto expected = oracle::box_scan(s);
        const auto got = enumerate_lattice(s);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            const auto it = expected.find(got[i].x);
            REQUIRE(it != expected.end());
            CHECK(it->second == got[i].sign);
            CHECK(density(s, got[i].x) == got[i].sign);
            if (i > 0) {
                // lexicographic in (x_n, ..., x_1)
                const auto& a = got[i - 1].x;
                const auto& b = got[i].x;
                CHECK(std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend()));
            }
            const bool all_nonneg = std::all_of(got[i].x.begin(), got[i].x.end(), [](Int v) { return v >= 0; });
            if (all_nonneg) CHECK(got[i].sign == 1);
        }

        // pi_k(C ∩ Z^n) ⊆ C(k) ∩ Z^k, with equality when every fibre contains 0
        for (std::size_t k = 1; k <= s.n(); ++k) {
            std::set<LatticePoint> image;
            for (const auto& p : got) image.emplace(p.x.end() - static_cast<std::ptrdiff_t>(k), p.x.end());
            std::set<LatticePoint> sub;
            for (const auto& p : enumerate_lattice(truncated(s, k))) sub.insert(p.x);
            // integer fibres can be empty (A_j = -1), so on the lattice the image is
            // only a subset; surjectivity holds for rational lifts
            for (const auto& y : image) CHECK(sub.count(y) == 1);
            if (check_condition_P(s).holds) CHECK(image == sub);
            for (const auto& y : sub) {
                RationalPoint x(s.n(), Rational(0));
                for (std::size_t j = 0; j < k; ++j) x[s.n() - k + j] = Rational(y[j]);
                for (std::size_t j = s.n() - k; j-- > 0;) {
                    const Rational a = eval_A(s, j + 1, std::span<const Rational>(x).subspan(j + 1));
                    x[j] = a < Rational(0) ? a / Rational(2) : Rational(0);
                }
                CHECK(member(s, x));
            }
        }

        if (check_condition_P(s)) {
            for (const auto& p : got) {
                CHECK(p.sign == 1);
                for (Int v : p.x) CHECK(v >= 0);
            }
        }
    }
}

TEST_CASE("property: density vanishes exactly off C inside the box") {
    oracle::SpecGen gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const CubeSpec s = gen.next(1, 3, 2, -3, 3);
        const auto box = bounding_box(s);
        LatticePoint x = box.lo;
        for (auto& v : x) v -= 1;
        while (true) {
            CHECK((density(s, x) != 0) == member(s, x));
            std::size_t j = 0;
            while (j < s.n() && x[j] == box.hi[j] + 1) {
                x[j] = box.lo[j] - 1;
                ++j;
            }
            if (j == s.n()) break;
            ++x[j];
        }
    }
}

TEST_CASE("bounding_box contains every lattice point") {
    oracle::SpecGen gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        const CubeSpec s = gen.next(1, 4, 3, -5, 5);
        const auto box = bounding_box(s);
        for_each_lattice_point(s, [&](std::span<const Int> x, int) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                CHECK(x[j] >= box.lo[j]);
                CHECK(x[j] <= box.hi[j]);
            }
            return true;
        });
    }
}
