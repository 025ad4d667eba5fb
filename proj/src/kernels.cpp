#include "grm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace grm::kernels {

namespace {

std::size_t count_nonzero_scalar(const std::uint8_t* v, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        count += v[i] != 0;
    return count;
}

void axpy_scalar(std::uint8_t* acc, const std::uint8_t* x, std::size_t n,
                 const std::uint8_t* mul_row, const FieldOps& ops) {
    switch (ops.rule) {
    case AddRule::Xor:
        for (std::size_t i = 0; i < n; ++i)
            acc[i] = static_cast<std::uint8_t>(acc[i] ^ mul_row[x[i]]);
        break;
    case AddRule::ModP: {
        const unsigned p = ops.p;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned s = acc[i] + mul_row[x[i]];
            acc[i] = static_cast<std::uint8_t>(s >= p ? s - p : s);
        }
        break;
    }
    case AddRule::Table: {
        const std::uint8_t* add = ops.add_table;
        const unsigned q = ops.q;
        for (std::size_t i = 0; i < n; ++i)
            acc[i] = add[acc[i] * q + mul_row[x[i]]];
        break;
    }
    }
}

const Kernels kScalar{"scalar", &count_nonzero_scalar, &axpy_scalar};

const Kernels* resolve_auto() {
#if defined(__x86_64__) || defined(__i386__)
    if (avx2_supported())
        return &avx2_kernels();
#endif
#if defined(__aarch64__)
    return &neon_kernels();
#endif
    return &kScalar;
}

const Kernels* resolve_from_env() {
    const char* env = std::getenv("GRM_KERNELS");
    if (env == nullptr)
        return resolve_auto();
    std::string_view name(env);
    if (name == "scalar")
        return &kScalar;
#if defined(__x86_64__) || defined(__i386__)
    if (name == "avx2" && avx2_supported())
        return &avx2_kernels();
#endif
#if defined(__aarch64__)
    if (name == "neon")
        return &neon_kernels();
#endif
    return resolve_auto(); // unknown or unavailable: fall back silently
}

std::atomic<const Kernels*>& slot() {
    static std::atomic<const Kernels*> current{resolve_from_env()};
    return current;
}

} // namespace

const Kernels& scalar_kernels() { return kScalar; }

const Kernels& active() { return *slot().load(std::memory_order_relaxed); }

void select_backend(std::string_view name) {
    if (name == "auto") {
        slot().store(resolve_auto(), std::memory_order_relaxed);
        return;
    }
    if (name == "scalar") {
        slot().store(&kScalar, std::memory_order_relaxed);
        return;
    }
#if defined(__x86_64__) || defined(__i386__)
    if (name == "avx2") {
        if (!avx2_supported())
            throw std::invalid_argument("avx2 kernels not supported on this cpu");
        slot().store(&avx2_kernels(), std::memory_order_relaxed);
        return;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") {
        slot().store(&neon_kernels(), std::memory_order_relaxed);
        return;
    }
#endif
    throw std::invalid_argument("unknown kernel backend: " + std::string(name));
}

} // namespace grm::kernels
