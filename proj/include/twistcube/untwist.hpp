#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistcube/cube.hpp"
#include "twistcube/toric.hpp"

namespace twistcube {

struct Limits {
    std::uint64_t point_cap = 10'000'000;
    unsigned cone_cap = 24;
    std::uint64_t grid_denominator = 4;
    std::uint64_t grid_point_cap = 20'000;

    EnumerationOptions enumeration() const { return {point_cap}; }
    ToricOptions toric() const { return {cone_cap}; }
};

/// Where a condition failed. `tag` is "b", "c", "d", "e" or "bpf".
struct Witness {
    std::string tag;
    std::optional<SignVector> sigma; // cone-based conditions
    std::size_t k = 0;               // offending slot, 1-based (0 if none)
    LatticePoint vector;             // m_sigma, a vertex tail, or a lattice point
    std::string detail;
};

struct ConditionResult {
    bool holds = true;
    std::optional<Witness> witness;

    explicit operator bool() const noexcept { return holds; }
};

ConditionResult check_b(const CubeSpec& spec, const Limits& limits = {});
ConditionResult check_c(const CubeSpec& spec, const Limits& limits = {});
ConditionResult check_d(const CubeSpec& spec, const Limits& limits = {});
ConditionResult check_e(const CubeSpec& spec, const Limits& limits = {});

/// Outcome of the unanimous cross-check. Condition (a), closedness of C, is
/// not decided on its own; it equals the common verdict.
class UntwistReport {
public:
    // Throws InternalInconsistency unless b, c, d, e and bpf agree.
    UntwistReport(ConditionResult b, ConditionResult c, ConditionResult d, ConditionResult e,
                  ConditionResult bpf, bool ell_nonneg);

    bool verdict() const noexcept { return b_.holds; }
    bool closed() const noexcept { return verdict(); }
    bool ell_nonneg() const noexcept { return ell_nonneg_; }

    const ConditionResult& b() const noexcept { return b_; }
    const ConditionResult& c() const noexcept { return c_; }
    const ConditionResult& d() const noexcept { return d_; }
    const ConditionResult& e() const noexcept { return e_; }
    const ConditionResult& basepoint_free() const noexcept { return bpf_; }

    /// The basepoint-freeness witness when untwistedness fails.
    const std::optional<Witness>& witness() const noexcept { return bpf_.witness; }

private:
    ConditionResult b_, c_, d_, e_, bpf_;
    bool ell_nonneg_;
};

UntwistReport is_untwisted(const CubeSpec& spec, const Limits& limits = {});

/// A point of C within max-norm distance < epsilon of m_sigma.
///
/// Built slot by slot from n down to 1. Each slot gets a tolerance t_j
/// (a power of two, t_1 <= epsilon/2) and a tail budget small enough that the
/// Lipschitz drift of A_j plus the local perturbation stays below t_j. At a
/// slot the closed branch of (S-j) is used when A_j(tail) >= 0 (x_j = 0 or
/// A_j); otherwise x_j is placed strictly inside (A_j(tail), 0) near the target.
RationalPoint closure_witness(const CubeSpec& spec, const SignVector& sigma, const Rational& epsilon);

/// (not untwisted) or (all l_i >= 0).
bool check_positivity_necessity(const CubeSpec& spec, const Limits& limits = {});

struct ConvexityResult {
    bool convex_on_grid = true;
    // violating pair and their midpoint, as rationals with the grid denominator
    RationalPoint p, q, midpoint;
    std::uint64_t grid_points = 0;

    explicit operator bool() const noexcept { return convex_on_grid; }
};

/// Midpoint test over all pairs of (1/denominator)-grid points of C.
///
/// False is an exact refutation of convexity. True is evidence only. The grid
/// points are the integer points of C(c, denominator * l) scaled down, and a
/// midpoint lies in C iff p + q lies in C(c, 2 * denominator * l). Each new
/// point is first paired with the origin, the coordinate extremes so far and a
/// few earlier points from a fixed-seed generator, so most refutations come
/// before the grid is complete; the result is deterministic. Throws
/// CapacityError when C has more than `limits.grid_point_cap` grid points.
ConvexityResult grid_convexity_oracle(const CubeSpec& spec, std::uint64_t denominator,
                                      const Limits& limits = {});

CubeSpec scaled(const CubeSpec& spec, Int factor);

} // namespace twistcube
