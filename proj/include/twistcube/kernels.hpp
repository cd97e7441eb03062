#pragma once

// Batched Cartier-data kernels.
//
// A block covers `count` consecutive cone masks starting at `first`. Output is
// slot-major: m[(j-1) * count + i] is m_{sigma,j} for cone first + i. Every
// variant must produce bit-identical blocks; the scalar variant is the
// reference and uses checked arithmetic.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "twistcube/cube.hpp"

namespace twistcube::kernels {

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa) noexcept;

/// Best variant this CPU supports.
Isa detected_isa() noexcept;

/// Variant used by the dispatching entry points. Defaults to detected_isa();
/// the TWISTCUBE_ISA environment variable ("scalar" or "avx2") or
/// force_isa() override it. Forcing an unsupported variant falls back to
/// scalar.
Isa active_isa() noexcept;
void force_isa(std::optional<Isa> isa) noexcept;

/// Largest |m_{sigma,j}| over all cones, or nullopt if it exceeds int64.
/// B_n = |l_n|, B_j = |l_j| + sum_k |c_jk| B_k.
std::optional<Int> cartier_bound(const CubeSpec& spec);

/// True when every |c_jk| and every Cartier coordinate fits in 32 bits, so
/// products fit in 64 bits and the vector variants cannot overflow.
bool fits_narrow(const CubeSpec& spec);

void cartier_block_scalar(const CubeSpec& spec, std::uint64_t first, std::size_t count,
                          std::span<Int> m);

// Requires fits_narrow(spec). Only callable when the CPU supports AVX2.
void cartier_block_avx2(const CubeSpec& spec, std::uint64_t first, std::size_t count,
                        std::span<Int> m);

/// Dispatches on active_isa() and fits_narrow(spec).
void cartier_block(const CubeSpec& spec, std::uint64_t first, std::size_t count, std::span<Int> m);

/// For each cone of a computed block, the first violated P_D inequality
/// (see pd_violation) or -1 when m_sigma is inside P_D.
void pd_violation_block_scalar(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                               std::span<std::int32_t> out);
void pd_violation_block_avx2(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                             std::span<std::int32_t> out);
void pd_violation_block(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                        std::span<std::int32_t> out);

inline constexpr std::size_t block_size = 1024;

} // namespace twistcube::kernels
