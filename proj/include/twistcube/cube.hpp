#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "twistcube/rational.hpp"

namespace twistcube {

using LatticePoint = std::vector<Int>;
using RationalPoint = std::vector<Rational>;

/// One triangular constant c_ij (1-based, i < j).
struct CEntry {
    std::size_t i;
    std::size_t j;
    Int value;
};

/// The constants (n, c, l) of a twisted cube.
///
/// Slots are 1-based in every public accessor, matching the usual
/// x_1..x_n labelling. Only entries c_ij with i < j exist; asking for any
/// other entry is a UsageError. n = 0 is allowed (the cube is a point).
class CubeSpec {
public:
    CubeSpec() = default;
    CubeSpec(std::size_t n, std::vector<Int> ell, std::span<const CEntry> c = {});
    CubeSpec(std::size_t n, std::vector<Int> ell, std::initializer_list<CEntry> c)
        : CubeSpec(n, std::move(ell), std::span<const CEntry>(c.begin(), c.size())) {}

    std::size_t n() const noexcept { return n_; }

    Int c(std::size_t i, std::size_t j) const;
    void set_c(std::size_t i, std::size_t j, Int value);

    Int ell(std::size_t j) const;
    const std::vector<Int>& ell() const noexcept { return ell_; }

    /// Nonzero c_ij in row-major order.
    std::vector<CEntry> entries() const;

    // Row j (1-based) of c as a contiguous span of length n; entries k <= j are zero.
    std::span<const Int> row(std::size_t j) const { return {c_.data() + (j - 1) * n_, n_}; }

    friend bool operator==(const CubeSpec&, const CubeSpec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Int> ell_;
    std::vector<Int> c_; // dense n x n, strictly upper triangle populated
};

struct SignedPoint {
    LatticePoint x;
    int sign;

    friend bool operator==(const SignedPoint&, const SignedPoint&) = default;
};

using SignedLatticeSet = std::vector<SignedPoint>;

struct EnumerationOptions {
    std::uint64_t point_cap = 10'000'000;
};

// A_j(x_{j+1}, ..., x_n) = l_j - sum_{k>j} c_jk x_k. `tail` holds x_{j+1}..x_n.
Int eval_A(const CubeSpec& spec, std::size_t j, std::span<const Int> tail);
Rational eval_A(const CubeSpec& spec, std::size_t j, std::span<const Rational> tail);

/// +1 for x < 0, -1 for x >= 0.
constexpr int sgn(Int x) noexcept { return x < 0 ? 1 : -1; }

// (S-k): A_k < x_k < 0, or 0 <= x_k <= A_k. `point` is the full length-n vector.
bool satisfies_S(const CubeSpec& spec, std::size_t k, std::span<const Int> point);
bool satisfies_S(const CubeSpec& spec, std::size_t k, std::span<const Rational> point);

bool member(const CubeSpec& spec, std::span<const Int> point);
bool member(const CubeSpec& spec, std::span<const Rational> point);

/// rho(x): 0 outside C, else (-1)^n prod sgn(x_k).
int density(const CubeSpec& spec, std::span<const Int> point);

/// Visits C ∩ Z^n in lexicographic order of (x_n, ..., x_1), ascending.
///
/// The visitor returns false to stop early. Returns the number of points
/// visited. Throws CapacityError once more than `opts.point_cap` points
/// would be produced.
std::uint64_t for_each_lattice_point(const CubeSpec& spec,
                                     const std::function<bool(std::span<const Int>, int)>& visit,
                                     const EnumerationOptions& opts = {});

SignedLatticeSet enumerate_lattice(const CubeSpec& spec, const EnumerationOptions& opts = {});

/// The k-dimensional spec on (x_{n-k+1}, ..., x_n) whose cube is C(k).
CubeSpec truncated(const CubeSpec& spec, std::size_t k);

struct ConditionPResult {
    bool holds = true;
    // On failure: the k with (P-k) violated and the vertex (x_{k+1}, ..., x_n)
    // where A_k < 0.
    std::size_t failing_k = 0;
    LatticePoint vertex;
    Int value = 0;

    explicit operator bool() const noexcept { return holds; }
};

struct ConditionPOptions {
    unsigned cone_cap = 24; // largest n for which the 2^n vertex sweep runs
};

/// Checks (P-n), (P-(n-1)), ..., (P-1) in that order.
///
/// (P-k) is decided at the vertices of the box-like polytope cut out by the
/// later coordinates: since A_k is affine and (P-(k+1))..(P-n) already hold,
/// that polytope is the convex hull of its 2^{n-k} corner points, built by
/// choosing x_j in {0, A_j(tail)} slot by slot.
ConditionPResult check_condition_P(const CubeSpec& spec, const ConditionPOptions& opts = {});

/// Interval bounds on x_j over C, propagated from slot n down to 1. Every
/// point of C lies in the box [lo_j, hi_j].
struct BoundingBox {
    std::vector<Int> lo;
    std::vector<Int> hi;
};
BoundingBox bounding_box(const CubeSpec& spec);

} // namespace twistcube
