#if defined(__aarch64__)

#include "grm/kernels.hpp"

#include <arm_neon.h>

// NEON variants, mirroring the AVX2 lane structure on 16-byte registers.

namespace grm::kernels {

namespace {

std::size_t count_nonzero_neon(const std::uint8_t* v, std::size_t n) {
    std::size_t zeros = 0;
    std::size_t i = 0;
    const uint8x16_t zero = vdupq_n_u8(0);
    const uint8x16_t one = vdupq_n_u8(1);
    for (; i + 16 <= n; i += 16) {
        uint8x16_t x = vld1q_u8(v + i);
        uint8x16_t eq = vandq_u8(vceqq_u8(x, zero), one);
        zeros += vaddvq_u8(eq);
    }
    std::size_t count = i - zeros;
    for (; i < n; ++i)
        count += v[i] != 0;
    return count;
}

void axpy_neon(std::uint8_t* acc, const std::uint8_t* x, std::size_t n,
               const std::uint8_t* mul_row, const FieldOps& ops) {
    if (ops.q > 16 || ops.rule == AddRule::Table) {
        scalar_kernels().axpy(acc, x, n, mul_row, ops);
        return;
    }
    const uint8x16_t lut = vld1q_u8(mul_row);
    std::size_t i = 0;
    if (ops.rule == AddRule::Xor) {
        for (; i + 16 <= n; i += 16) {
            uint8x16_t xs = vld1q_u8(x + i);
            uint8x16_t prod = vqtbl1q_u8(lut, xs);
            uint8x16_t a = vld1q_u8(acc + i);
            vst1q_u8(acc + i, veorq_u8(a, prod));
        }
    } else { // AddRule::ModP
        const uint8x16_t pv = vdupq_n_u8(ops.p);
        const uint8x16_t pm1 = vdupq_n_u8(static_cast<std::uint8_t>(ops.p - 1));
        for (; i + 16 <= n; i += 16) {
            uint8x16_t xs = vld1q_u8(x + i);
            uint8x16_t prod = vqtbl1q_u8(lut, xs);
            uint8x16_t sum = vaddq_u8(vld1q_u8(acc + i), prod);
            uint8x16_t over = vcgtq_u8(sum, pm1);
            sum = vsubq_u8(sum, vandq_u8(over, pv));
            vst1q_u8(acc + i, sum);
        }
    }
    if (i < n)
        scalar_kernels().axpy(acc + i, x + i, n - i, mul_row, ops);
}

const Kernels kNeon{"neon", &count_nonzero_neon, &axpy_neon};

} // namespace

const Kernels& neon_kernels() { return kNeon; }

} // namespace grm::kernels

#endif
