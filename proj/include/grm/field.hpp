#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grm/errors.hpp"
#include "grm/kernels.hpp"

namespace grm {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// One element of GF(p^n), tagged with the field it lives in.  The code packs
/// the base-p digit vector of the residue polynomial, least significant digit
/// first: code = sum c_i * p^i where the element is sum c_i * g^i and g is the
/// class of the indeterminate modulo the field modulus.  Code 0 is the
/// additive identity and code 1 the multiplicative identity; for prime q the
/// code arithmetic is plain integer arithmetic mod p.
struct FieldElement {
    std::uint16_t code = 0;
    const Field* field = nullptr;

    FieldElement() = default;
    FieldElement(std::uint16_t c, const Field* f) : code(c), field(f) {}

    FieldElement operator+(FieldElement other) const;
    FieldElement operator-(FieldElement other) const;
    FieldElement operator*(FieldElement other) const;
    FieldElement operator/(FieldElement other) const;
    FieldElement operator-() const;
    bool operator==(FieldElement other) const;
    bool operator!=(FieldElement other) const { return !(*this == other); }
    bool is_zero() const { return code == 0; }
};

/// Exact arithmetic in GF(p^n), p prime, q = p^n <= 2^16.  Immutable after
/// construction and safe to share read-only across threads.  Fields with
/// q <= 256 carry dense add/mul/pow tables; the enumeration machinery in the
/// higher modules requires those.
class Field {
public:
    /// Construct with an explicit monic irreducible modulus (coefficients low
    /// to high, length n+1).  Throws std::invalid_argument on a bad spec.
    static FieldPtr make(unsigned p, unsigned n, std::vector<std::uint16_t> modulus);

    /// Construct with the built-in modulus: x for n = 1, or the Conway
    /// polynomial for q in {4, 8, 9, 16, 25, 27}.
    static FieldPtr make(unsigned p, unsigned n);

    /// Factor q = p^n and construct with the built-in modulus.
    static FieldPtr from_order(unsigned q);
    static FieldPtr from_order(unsigned q, const std::vector<std::uint16_t>& modulus);

    /// Parse the serialized spec "p,n,[c0,c1,...,cn]".
    static FieldPtr parse_spec(std::string_view text);
    std::string spec_string() const;

    unsigned p() const { return p_; }
    unsigned n() const { return n_; }
    unsigned q() const { return q_; }
    const std::vector<std::uint16_t>& modulus() const { return modulus_; }

    /// Two fields are compatible when p, n and modulus coincide.
    bool same_field(const Field& other) const;

    // Code-level arithmetic.  Codes must be < q.
    std::uint16_t add(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t neg(std::uint16_t a) const;
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t inv(std::uint16_t a) const; // throws std::domain_error on 0
    std::uint16_t pow(std::uint16_t a, std::uint64_t e) const;

    FieldElement element(std::uint16_t code) const;
    FieldElement zero() const { return {0, this}; }
    FieldElement one() const { return {1, this}; }

    /// All q elements in increasing code order.
    std::vector<FieldElement> elements() const;

    /// Multiplicative order of a nonzero element.
    unsigned multiplicative_order(std::uint16_t a) const;

    // Dense tables, available when q <= 256.
    bool has_tables() const { return !mul_table_.empty(); }
    const std::uint8_t* add_table() const { return add_table_.data(); }
    /// Row of the multiplication table for the fixed scalar c.  Rows are
    /// padded to at least 16 readable bytes for the SIMD kernels.
    const std::uint8_t* mul_row(std::uint16_t c) const { return mul_table_.data() + c * row_stride_; }
    std::size_t mul_row_stride() const { return row_stride_; }
    /// pow_of(x, e) = x^e for 0 <= e <= q-1, with 0^0 = 1.
    std::uint8_t pow_of(std::uint16_t x, unsigned e) const { return pow_table_[x * q_ + e]; }

    /// Addition rule descriptor for the byte kernels.
    kernels::FieldOps ops() const;

    /// Inverse of the q x q Vandermonde matrix V[x][e] = x^e over this field,
    /// row-major; built lazily, used by polynomial interpolation.
    std::span<const std::uint8_t> inverse_vandermonde() const;

private:
    Field() = default;

    std::uint16_t mul_generic(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t add_generic(std::uint16_t a, std::uint16_t b) const;
    void build_tables();
    void require_code(std::uint16_t c) const;

    unsigned p_ = 0;
    unsigned n_ = 0;
    unsigned q_ = 0;
    std::vector<std::uint16_t> modulus_;

    std::size_t row_stride_ = 0;
    std::vector<std::uint8_t> add_table_;
    std::vector<std::uint8_t> mul_table_; // q rows of row_stride_ bytes
    std::vector<std::uint8_t> inv_table_;
    std::vector<std::uint8_t> neg_table_;
    std::vector<std::uint8_t> pow_table_; // q*q, pow_table_[x*q + e]

    mutable std::once_flag vinv_once_;
    mutable std::vector<std::uint8_t> vinv_;
};

/// Throws FieldMismatchError unless both elements belong to the same field.
void require_same_field(const FieldElement& a, const FieldElement& b);

} // namespace grm
