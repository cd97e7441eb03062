#include "twistcube/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace twistcube::kernels {

std::string_view name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

std::optional<Int> cartier_bound(const CubeSpec& spec) {
    const std::size_t n = spec.n();
    std::vector<Int> bound(n, 0);
    Int worst = 0;
    try {
        for (std::size_t j = n; j >= 1; --j) {
            const auto row = spec.row(j);
            Int b = checked::abs(spec.ell()[j - 1]);
            for (std::size_t k = j + 1; k <= n; ++k) {
                if (row[k - 1] != 0) b = checked::add(b, checked::mul(checked::abs(row[k - 1]), bound[k - 1]));
            }
            bound[j - 1] = b;
            worst = std::max(worst, b);
        }
    } catch (const OverflowError&) {
        return std::nullopt;
    }
    return worst;
}

bool fits_narrow(const CubeSpec& spec) {
    constexpr Int narrow = std::numeric_limits<std::int32_t>::max();
    for (const auto& e : spec.entries()) {
        if (e.value > narrow || e.value < -narrow) return false;
    }
    const auto b = cartier_bound(spec);
    // sums of up to n products of two 31-bit magnitudes stay far below 2^63
    return b && *b <= narrow && spec.n() < 64;
}

void cartier_block_scalar(const CubeSpec& spec, std::uint64_t first, std::size_t count,
                          std::span<Int> m) {
    const std::size_t n = spec.n();
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t mask = first + i;
        for (std::size_t j = n; j >= 1; --j) {
            Int v = 0;
            if ((mask >> (j - 1)) & 1U) {
                const auto row = spec.row(j);
                v = spec.ell()[j - 1];
                for (std::size_t k = j + 1; k <= n; ++k) {
                    if (row[k - 1] != 0) v = checked::sub(v, checked::mul(row[k - 1], m[(k - 1) * count + i]));
                }
            }
            m[(j - 1) * count + i] = v;
        }
    }
}

void pd_violation_block_scalar(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                               std::span<std::int32_t> out) {
    const std::size_t n = spec.n();
    for (std::size_t i = 0; i < count; ++i) {
        std::int32_t code = -1;
        for (std::size_t j = 1; j <= n && code < 0; ++j) {
            const Int mj = m[(j - 1) * count + i];
            if (mj < 0) {
                code = static_cast<std::int32_t>(2 * (j - 1));
                break;
            }
            const auto row = spec.row(j);
            Int a = spec.ell()[j - 1];
            for (std::size_t k = j + 1; k <= n; ++k) {
                if (row[k - 1] != 0) a = checked::sub(a, checked::mul(row[k - 1], m[(k - 1) * count + i]));
            }
            if (mj > a) code = static_cast<std::int32_t>(2 * (j - 1) + 1);
        }
        out[i] = code;
    }
}

namespace {

std::optional<Isa> forced;

std::optional<Isa> env_isa() noexcept {
    const char* v = std::getenv("TWISTCUBE_ISA");
    if (v == nullptr) return std::nullopt;
    const std::string_view s(v);
    if (s == "scalar") return Isa::scalar;
    if (s == "avx2") return Isa::avx2;
    return std::nullopt;
}

} // namespace

Isa detected_isa() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
    return Isa::scalar;
}

Isa active_isa() noexcept {
    static const std::optional<Isa> from_env = env_isa();
    const Isa want = forced ? *forced : from_env ? *from_env : detected_isa();
    if (want == Isa::avx2 && detected_isa() != Isa::avx2) return Isa::scalar;
    return want;
}

void force_isa(std::optional<Isa> isa) noexcept { forced = isa; }

void cartier_block(const CubeSpec& spec, std::uint64_t first, std::size_t count, std::span<Int> m) {
    if (active_isa() == Isa::avx2 && fits_narrow(spec)) {
        cartier_block_avx2(spec, first, count, m);
    } else {
        cartier_block_scalar(spec, first, count, m);
    }
}

void pd_violation_block(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                        std::span<std::int32_t> out) {
    if (active_isa() == Isa::avx2 && fits_narrow(spec)) {
        pd_violation_block_avx2(spec, count, m, out);
    } else {
        pd_violation_block_scalar(spec, count, m, out);
    }
}

} // namespace twistcube::kernels
