#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Byte-vector inner loops shared by the enumeration workloads: Hamming-weight
// counting and scaled accumulation of evaluation tables over GF(q).  A scalar
// reference implementation defines the semantics; AVX2/NEON variants are
// selected at runtime and are checked against the scalar one in the test
// suite.

namespace grm::kernels {

// How element codes add.  Codes are base-p digit vectors packed into a byte,
// so characteristic-2 fields add by XOR and prime fields add mod p; other
// extension fields go through the dense addition table.
enum class AddRule : std::uint8_t { Xor, ModP, Table };

struct FieldOps {
    AddRule rule = AddRule::Table;
    std::uint8_t p = 0;
    std::uint16_t q = 0;
    const std::uint8_t* add_table = nullptr; // q*q row-major, required for AddRule::Table
};

struct Kernels {
    const char* name;
    std::size_t (*count_nonzero)(const std::uint8_t* v, std::size_t n);
    // acc[i] <- acc[i] (+) mul_row[x[i]].  mul_row is the multiplication-table
    // row of a fixed scalar; it must stay readable for max(q, 16) bytes so the
    // vector paths can load a full lane.
    void (*axpy)(std::uint8_t* acc, const std::uint8_t* x, std::size_t n,
                 const std::uint8_t* mul_row, const FieldOps& ops);
};

const Kernels& scalar_kernels();

#if defined(__x86_64__) || defined(__i386__)
bool avx2_supported();
const Kernels& avx2_kernels();
#endif
#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

// Runtime-selected backend.  Resolution order: GRM_KERNELS environment
// variable (scalar|avx2|neon|auto), then the widest backend the CPU supports.
const Kernels& active();

// Force a backend by name; throws std::invalid_argument if it is not
// available on this machine.
void select_backend(std::string_view name);

inline std::size_t count_nonzero(std::span<const std::uint8_t> v) {
    return active().count_nonzero(v.data(), v.size());
}

inline void axpy(std::span<std::uint8_t> acc, std::span<const std::uint8_t> x,
                 const std::uint8_t* mul_row, const FieldOps& ops) {
    active().axpy(acc.data(), x.data(), acc.size(), mul_row, ops);
}

} // namespace grm::kernels
