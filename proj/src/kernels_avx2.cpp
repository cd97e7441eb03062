#include "twistcube/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define TWISTCUBE_HAVE_AVX2_KERNELS 1
#else
#define TWISTCUBE_HAVE_AVX2_KERNELS 0
#endif

namespace twistcube::kernels {

#if TWISTCUBE_HAVE_AVX2_KERNELS

namespace {

// A_j(m) for four cones at once. Operands are 32-bit by fits_narrow(), so
// _mm256_mul_epi32 (signed 32x32 -> 64) is exact.
__attribute__((target("avx2"))) inline __m256i eval_A4(const CubeSpec& spec, std::size_t j,
                                                       const Int* m, std::size_t count,
                                                       std::size_t i) {
    const auto row = spec.row(j);
    __m256i acc = _mm256_set1_epi64x(spec.ell()[j - 1]);
    for (std::size_t k = j + 1; k <= spec.n(); ++k) {
        const Int c = row[k - 1];
        if (c == 0) continue;
        const __m256i mk =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m + (k - 1) * count + i));
        acc = _mm256_sub_epi64(acc, _mm256_mul_epi32(_mm256_set1_epi64x(c), mk));
    }
    return acc;
}

} // namespace

__attribute__((target("avx2"))) void cartier_block_avx2(const CubeSpec& spec, std::uint64_t first,
                                                        std::size_t count, std::span<Int> m) {
    const std::size_t n = spec.n();
    const std::size_t vec_end = count - count % 4;
    const __m256i one = _mm256_set1_epi64x(1);
    Int* out = m.data();

    for (std::size_t i = 0; i < vec_end; i += 4) {
        const auto base = static_cast<long long>(first + i);
        const __m256i lanes = _mm256_setr_epi64x(base, base + 1, base + 2, base + 3);
        for (std::size_t j = n; j >= 1; --j) {
            const __m256i bit = _mm256_and_si256(
                _mm256_srlv_epi64(lanes, _mm256_set1_epi64x(static_cast<long long>(j - 1))), one);
            const __m256i is_minus = _mm256_cmpeq_epi64(bit, one);
            const __m256i a = eval_A4(spec, j, out, count, i);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + (j - 1) * count + i),
                                _mm256_and_si256(a, is_minus));
        }
    }
    if (vec_end < count) {
        // tail cones: reference recursion on a private block, then scatter
        const std::size_t rest = count - vec_end;
        std::vector<Int> tail(n * rest);
        cartier_block_scalar(spec, first + vec_end, rest, tail);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t t = 0; t < rest; ++t) out[j * count + vec_end + t] = tail[j * rest + t];
        }
    }
}

__attribute__((target("avx2"))) void pd_violation_block_avx2(const CubeSpec& spec,
                                                             std::size_t count,
                                                             std::span<const Int> m,
                                                             std::span<std::int32_t> out) {
    const std::size_t n = spec.n();
    const std::size_t vec_end = count - count % 4;
    const __m256i none = _mm256_set1_epi64x(-1);
    const __m256i zero = _mm256_setzero_si256();
    const Int* in = m.data();

    for (std::size_t i = 0; i < vec_end; i += 4) {
        __m256i code = none;
        for (std::size_t j = 1; j <= n; ++j) {
            const __m256i mj =
                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in + (j - 1) * count + i));
            const __m256i a = eval_A4(spec, j, in, count, i);
            const __m256i below = _mm256_cmpgt_epi64(zero, mj);
            const __m256i above = _mm256_cmpgt_epi64(mj, a);

            __m256i open = _mm256_cmpeq_epi64(code, none);
            code = _mm256_blendv_epi8(
                code, _mm256_set1_epi64x(static_cast<long long>(2 * (j - 1))),
                _mm256_and_si256(open, below));
            open = _mm256_cmpeq_epi64(code, none);
            code = _mm256_blendv_epi8(
                code, _mm256_set1_epi64x(static_cast<long long>(2 * (j - 1) + 1)),
                _mm256_and_si256(open, above));
        }
        alignas(32) long long lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), code);
        for (int t = 0; t < 4; ++t) out[i + t] = static_cast<std::int32_t>(lanes[t]);
    }
    for (std::size_t i = vec_end; i < count; ++i) {
        // single-cone view into the slot-major block
        std::vector<Int> one(n);
        for (std::size_t j = 0; j < n; ++j) one[j] = in[j * count + i];
        std::int32_t code = -1;
        pd_violation_block_scalar(spec, 1, one, std::span<std::int32_t>(&code, 1));
        out[i] = code;
    }
}

#else

void cartier_block_avx2(const CubeSpec& spec, std::uint64_t first, std::size_t count,
                        std::span<Int> m) {
    cartier_block_scalar(spec, first, count, m);
}

void pd_violation_block_avx2(const CubeSpec& spec, std::size_t count, std::span<const Int> m,
                             std::span<std::int32_t> out) {
    pd_violation_block_scalar(spec, count, m, out);
}

#endif

} // namespace twistcube::kernels
