#if defined(__x86_64__) || defined(__i386__)

#include "grm/kernels.hpp"

#include <immintrin.h>

// AVX2 variants.  This translation unit is compiled with -mavx2; the dispatch
// in kernels.cpp only routes here after a cpuid check.

namespace grm::kernels {

namespace {

std::size_t count_nonzero_avx2(const std::uint8_t* v, std::size_t n) {
    std::size_t count = 0;
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 32 <= n; i += 32) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i));
        __m256i eq = _mm256_cmpeq_epi8(x, zero);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(eq));
        count += 32u - static_cast<unsigned>(__builtin_popcount(mask));
    }
    for (; i < n; ++i)
        count += v[i] != 0;
    return count;
}

void axpy_avx2(std::uint8_t* acc, const std::uint8_t* x, std::size_t n,
               const std::uint8_t* mul_row, const FieldOps& ops) {
    // The shuffle LUT holds one 16-byte multiplication row, so only fields
    // with q <= 16 and a lane-wise addition rule take the vector path.
    if (ops.q > 16 || ops.rule == AddRule::Table) {
        scalar_kernels().axpy(acc, x, n, mul_row, ops);
        return;
    }
    const __m128i row = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mul_row));
    const __m256i lut = _mm256_broadcastsi128_si256(row);
    std::size_t i = 0;
    if (ops.rule == AddRule::Xor) {
        for (; i + 32 <= n; i += 32) {
            __m256i xs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
            __m256i prod = _mm256_shuffle_epi8(lut, xs);
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_xor_si256(a, prod));
        }
    } else { // AddRule::ModP, p <= 16 so sums stay below 0x80 and signed compares are safe
        const __m256i pv = _mm256_set1_epi8(static_cast<char>(ops.p));
        const __m256i pm1 = _mm256_set1_epi8(static_cast<char>(ops.p - 1));
        for (; i + 32 <= n; i += 32) {
            __m256i xs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
            __m256i prod = _mm256_shuffle_epi8(lut, xs);
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
            __m256i sum = _mm256_add_epi8(a, prod);
            __m256i over = _mm256_cmpgt_epi8(sum, pm1);
            sum = _mm256_sub_epi8(sum, _mm256_and_si256(over, pv));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), sum);
        }
    }
    if (i < n)
        scalar_kernels().axpy(acc + i, x + i, n - i, mul_row, ops);
}

const Kernels kAvx2{"avx2", &count_nonzero_avx2, &axpy_avx2};

} // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

const Kernels& avx2_kernels() { return kAvx2; }

} // namespace grm::kernels

#endif
