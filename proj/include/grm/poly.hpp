#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grm/field.hpp"
#include "grm/geometry.hpp"

namespace grm {

/// Exponent vector of a reduced monomial: length m, every entry <= q-1.
using Monomial = std::vector<std::uint16_t>;

/// Graded order on exponent vectors: ascending total degree, then descending
/// lexicographic within a degree (so x1 prints before x2).  This is the
/// canonical term order for printing and for coefficient indexing.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// The length-q^m value vector of a function F_q^m -> F_q in canonical point
/// order (x_1 most significant, coordinates ordered by element code).
struct EvaluationTable {
    FieldPtr field;
    unsigned m = 0;
    std::vector<std::uint8_t> values;

    static EvaluationTable zero(FieldPtr field, unsigned m);
    /// Comma-separated element codes in canonical point order.
    static EvaluationTable parse(FieldPtr field, unsigned m, std::string_view text);
    std::string to_string() const;

    std::size_t weight() const;
    std::vector<std::uint32_t> support() const;
    bool same_domain(const EvaluationTable& other) const;
    bool operator==(const EvaluationTable& other) const;
};

/// Pointwise sum and product of tables over the same domain.
EvaluationTable pointwise_sum(const EvaluationTable& a, const EvaluationTable& b);
EvaluationTable pointwise_product(const EvaluationTable& a, const EvaluationTable& b);

/// A reduced multivariate polynomial: every exponent at most q-1, in bijection
/// with the functions F_q^m -> F_q.  Stored sparsely; no zero coefficient is
/// ever kept in the map.
class ReducedPoly {
public:
    using TermMap = std::map<Monomial, std::uint16_t, GrlexLess>;

    static ReducedPoly zero(FieldPtr field, unsigned m);
    static ReducedPoly constant(FieldPtr field, unsigned m, std::uint16_t c);
    /// c * x^exponents (exponents must already be reduced).
    static ReducedPoly term(FieldPtr field, unsigned m, Monomial exponents, std::uint16_t c);
    /// Grammar: sum of terms "c*x<i>^<e>*...", '*' optional after coefficient
    /// 1, '^1' omitted, variables x1..xm; e.g. "2*x1^2*x3 + x2 + 1".
    static ReducedPoly parse(FieldPtr field, unsigned m, std::string_view text);
    /// Unique reduced polynomial with the given value table.
    static ReducedPoly interpolate(const EvaluationTable& table);

    const FieldPtr& field() const { return field_; }
    unsigned m() const { return m_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; nullopt for the zero polynomial (degree "bottom", which
    /// compares below every order so 0 belongs to every code).
    std::optional<int> degree() const;
    /// Largest exponent of one variable; -1 for the zero polynomial.
    int degree_in(unsigned axis) const;

    std::uint16_t eval(std::span<const std::uint8_t> pt) const;
    EvaluationTable to_table() const;
    std::string to_string() const;

    ReducedPoly operator+(const ReducedPoly& other) const;
    ReducedPoly operator-(const ReducedPoly& other) const;
    ReducedPoly operator*(const ReducedPoly& other) const;
    ReducedPoly operator-() const;
    /// Scalar multiple by an element code.
    ReducedPoly scaled(std::uint16_t c) const;
    bool operator==(const ReducedPoly& other) const;

    /// Substitute x_axis = value; result still has m variables with the axis
    /// exponent collapsed to zero.
    ReducedPoly substituted(unsigned axis, std::uint16_t value) const;

private:
    ReducedPoly(FieldPtr field, unsigned m) : field_(std::move(field)), m_(m) {}
    void add_term(const Monomial& e, std::uint16_t c);
    void require_compatible(const ReducedPoly& other) const;

    FieldPtr field_;
    unsigned m_ = 0;
    TermMap terms_;
};

/// Quotient Q with P = (x_axis - a) * Q, for P vanishing on {x_axis = a}.
/// deg_axis(Q) <= deg_axis(P) - 1.  Throws VanishingError with a witness point
/// if P does not vanish there.
ReducedPoly divide_linear(const ReducedPoly& p, unsigned axis, std::uint16_t a);

/// For P vanishing everywhere except {x_axis = b}: the factor Q in the
/// remaining m-1 variables with P = (1 - (x_axis - b)^(q-1)) * Q.  Throws
/// VanishingError with a witness point otherwise.
ReducedPoly complement_factor(const ReducedPoly& p, unsigned axis, std::uint16_t b);

/// Inverse embedding for complement_factor: re-inserts a variable (with
/// exponent 0 everywhere) at position axis, shifting later variables up.
ReducedPoly insert_axis(const ReducedPoly& p, unsigned axis);

/// The reduced polynomial of x -> P(tau(x)), computed by permuting the value
/// table and interpolating.
ReducedPoly affine_substitute(const ReducedPoly& p, const AffineMap& tau);

} // namespace grm
