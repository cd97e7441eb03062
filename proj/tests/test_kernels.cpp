#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "twistcube/kernels.hpp"
#include "twistcube/toric.hpp"

using namespace twistcube;
namespace k = twistcube::kernels;

namespace {

struct IsaGuard {
    explicit IsaGuard(std::optional<k::Isa> isa) { k::force_isa(isa); }
    ~IsaGuard() { k::force_isa(std::nullopt); }
};

bool have_avx2() { return k::detected_isa() == k::Isa::avx2; }

} // namespace

TEST_CASE("cartier_bound and fits_narrow") {
    const CubeSpec s(2, {3, 5}, {{1, 2, 1}});
    CHECK(k::cartier_bound(s) == std::optional<Int>{8});
    CHECK(k::fits_narrow(s));

    const CubeSpec wide(2, {Int{1} << 40, 1});
    CHECK_FALSE(k::fits_narrow(wide));

    const CubeSpec huge(2, {INT64_MAX, 0}, {{1, 2, 2}});
    CHECK(k::cartier_bound(huge) == std::optional<Int>{INT64_MAX});
    const CubeSpec over(2, {INT64_MAX, 1}, {{1, 2, 2}});
    CHECK_FALSE(k::cartier_bound(over).has_value());
}

TEST_CASE("scalar block matches the per-cone recursion") {
    oracle::SpecGen gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        const CubeSpec s = gen.next(1, 8, 4, -9, 9);
        const std::size_t count = std::size_t{1} << s.n();
        std::vector<Int> m(count * s.n());
        k::cartier_block_scalar(s, 0, count, m);
        for (std::size_t i = 0; i < count; ++i) {
            const auto cp = cartier_point(s, SignVector(s.n(), i));
            for (std::size_t j = 0; j < s.n(); ++j) CHECK(m[j * count + i] == cp.m[j]);
        }
    }
}

TEST_CASE("AVX2 kernels are bit-identical to scalar") {
    if (!have_avx2()) {
        MESSAGE("AVX2 not available; equivalence test skipped");
        return;
    }
    oracle::SpecGen gen(2718);
    for (int trial = 0; trial < 400; ++trial) {
        const CubeSpec s = gen.next(1, 12, 1000, -100000, 100000);
        if (!k::fits_narrow(s)) continue;
        const std::uint64_t total = std::uint64_t{1} << s.n();
        // odd offsets and counts exercise the scalar tails
        const std::uint64_t first = total > 7 ? static_cast<std::uint64_t>(gen.uniform(0, 5)) : 0;
        const std::size_t count = static_cast<std::size_t>(total - first);
        std::vector<Int> a(count * s.n()), b(count * s.n());
        k::cartier_block_scalar(s, first, count, a);
        k::cartier_block_avx2(s, first, count, b);
        CHECK(a == b);

        std::vector<std::int32_t> va(count), vb(count);
        k::pd_violation_block_scalar(s, count, a, va);
        k::pd_violation_block_avx2(s, count, a, vb);
        CHECK(va == vb);
    }
}

TEST_CASE("boundary magnitudes near 2^31") {
    if (!have_avx2()) return;
    const Int big = (Int{1} << 31) - 1;
    const CubeSpec s(3, {big / 8, -big / 4, big / 8}, {{1, 2, -1}, {1, 3, 1}, {2, 3, 1}});
    REQUIRE(k::fits_narrow(s));
    std::vector<Int> a(8 * 3), b(8 * 3);
    k::cartier_block_scalar(s, 0, 8, a);
    k::cartier_block_avx2(s, 0, 8, b);
    CHECK(a == b);
}

TEST_CASE("dispatch: forced ISA gives the same answers") {
    oracle::SpecGen gen(55);
    for (int trial = 0; trial < 200; ++trial) {
        const CubeSpec s = gen.next(1, 10, 3, -6, 8);
        std::vector<CartierPoint> ref, vec;
        BasepointFreeResult rs, rv;
        {
            IsaGuard g(k::Isa::scalar);
            CHECK(k::active_isa() == k::Isa::scalar);
            ref = all_cartier_points(s);
            rs = is_basepoint_free(s);
        }
        {
            IsaGuard g(k::Isa::avx2);
            vec = all_cartier_points(s);
            rv = is_basepoint_free(s);
        }
        CHECK(ref == vec);
        CHECK(rs.holds == rv.holds);
        CHECK(rs.witness == rv.witness);
        CHECK(rs.violated_inequality == rv.violated_inequality);
    }
}

TEST_CASE("wide specs fall back to scalar") {
    IsaGuard g(k::Isa::avx2);
    const CubeSpec s(2, {Int{1} << 40, 3}, {{1, 2, 5}});
    const auto pts = all_cartier_points(s);
    CHECK(pts[3].m == LatticePoint{(Int{1} << 40) - 15, 3});
}
