#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistcube/cube.hpp"

namespace twistcube {

/// A maximal cone of the Bott-tower fan, named by a vector in {+,-}^n.
///
/// Encoded as an n-bit mask: bit j-1 is set iff sigma_j = '-'. Iterating the
/// masks 0 .. 2^n - 1 visits every maximal cone once ("canonical order").
class SignVector {
public:
    SignVector() = default;
    SignVector(std::size_t n, std::uint64_t bits);

    static SignVector parse(std::string_view text); // "+-+" or "(+,-,+)"
    static SignVector all_minus(std::size_t n) { return {n, n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n))}; }

    std::size_t n() const noexcept { return n_; }
    std::uint64_t bits() const noexcept { return bits_; }

    // 1-based
    bool minus(std::size_t j) const noexcept { return (bits_ >> (j - 1)) & 1U; }

    std::string str() const;           // "-+-"
    std::string tuple_str() const;     // "(-,+,-)"

    // Lexicographic with sigma_1 most significant and '-' before '+'.
    bool lex_before(const SignVector& other) const noexcept;

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    std::size_t n_ = 0;
    std::uint64_t bits_ = 0;
};

using RayVector = std::vector<Int>;

struct CartierPoint {
    SignVector sigma;
    LatticePoint m;

    friend bool operator==(const CartierPoint&, const CartierPoint&) = default;
};

struct ToricOptions {
    unsigned cone_cap = 24;
};

/// e_j^- = -e_j^+ - sum_{k>j} c_jk e_k^+.
RayVector ray_minus(const CubeSpec& spec, std::size_t j);

/// e_j^+ or e_j^- according to sigma_j.
RayVector ray(const CubeSpec& spec, std::size_t j, bool minus);

std::vector<SignVector> maximal_cones(const CubeSpec& spec, const ToricOptions& opts = {});

/// Number of maximal cones, 2^n, after checking the cone cap.
std::uint64_t cone_count(const CubeSpec& spec, const ToricOptions& opts = {});

/// m_sigma by the slot-n-down-to-1 recursion: m_j = 0 when sigma_j = '+',
/// otherwise A_j(m_{j+1}, ..., m_n).
CartierPoint cartier_point(const CubeSpec& spec, const SignVector& sigma);

std::vector<CartierPoint> all_cartier_points(const CubeSpec& spec, const ToricOptions& opts = {});

// The 2n inequalities 0 <= x_j <= A_j(x).
bool pd_contains(const CubeSpec& spec, std::span<const Rational> point);
bool pd_contains(const CubeSpec& spec, std::span<const Int> point);

/// Index of the first violated inequality of P_D at an integer point, or
/// nullopt when the point is inside. Inequalities are numbered 2(j-1) for
/// 0 <= x_j and 2(j-1)+1 for x_j <= A_j(x).
std::optional<std::size_t> pd_violation(const CubeSpec& spec, std::span<const Int> point);

struct BasepointFreeResult {
    bool holds = true;
    std::optional<CartierPoint> witness;
    std::size_t violated_inequality = 0;

    explicit operator bool() const noexcept { return holds; }
};

/// D(c,l) is basepoint-free iff every m_sigma lies in P_D. On failure the
/// witness is the lexicographically first offending cone (see
/// SignVector::lex_before), independent of evaluation order.
BasepointFreeResult is_basepoint_free(const CubeSpec& spec, const ToricOptions& opts = {});

/// Sweeps every cone in blocks and calls `visit(sigma_bits, m)` for each. The
/// Cartier points come from the runtime-selected kernel.
void for_each_cartier_point(const CubeSpec& spec,
                            const std::function<void(std::uint64_t, std::span<const Int>)>& visit,
                            const ToricOptions& opts = {});

} // namespace twistcube
