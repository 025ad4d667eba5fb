#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "grm/poly.hpp"

namespace grm {

/// Work cap for the enumeration modes: exhaustive mode iterates q^dim
/// coefficient vectors, orbit mode iterates |GA_m(F_q)| transformations.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// The unique (t, s) with r = t(q-1) + s and 0 <= s <= q-2.
std::pair<unsigned, unsigned> decompose_order(unsigned r, unsigned q);

/// Parameters of the generalized Reed-Muller code R_q(r, m) together with the
/// derived order decomposition and minimum weight.
struct GrmParams {
    FieldPtr field;
    unsigned m = 0;
    unsigned r = 0;
    unsigned t = 0;
    unsigned s = 0;
    std::uint64_t w_min = 0;
    std::uint64_t dim = 0; // number of reduced monomials of degree <= r

    /// Validates 1 <= m and 0 <= r <= m(q-1); q <= 256 (value tables).
    static GrmParams make(FieldPtr field, unsigned m, unsigned r);
    unsigned q() const { return field->q(); }
};

/// (q-s) * q^(m-t-1) for r < m(q-1); the r = m(q-1) edge has minimum weight 1.
std::uint64_t min_weight(const GrmParams& params);

/// Number of reduced monomials in m variables of total degree <= r.
std::uint64_t monomial_count(unsigned q, unsigned m, unsigned r);

/// The monomial basis of R_q(r, m) in graded order.
std::vector<Monomial> monomial_basis(const GrmParams& params);

/// Membership: the interpolated polynomial has degree <= r (the zero table is
/// in every code).
bool contains(const GrmParams& params, const EvaluationTable& table);

/// A codeword with its cached weight and support.
struct Codeword {
    EvaluationTable table;
    std::size_t weight = 0;
    std::vector<std::uint32_t> support;

    static Codeword from_table(EvaluationTable t);
    PointSet support_set() const;

    bool operator==(const Codeword& other) const { return table == other.table; }
    bool operator<(const Codeword& other) const { return table.values < other.table.values; }
};

std::size_t weight(const EvaluationTable& table);

/// The minimum-weight codeword c * prod_{i<=t} (x_i^(q-1) - 1) * prod_j
/// (x_{t+1} - b_j) with c != 0 and distinct b_j (one b per unit of s).  Its
/// support is {x : x_1 = ... = x_t = 0, x_{t+1} not in b}.  Requires t <= m-1.
Codeword canonical_min_word(const GrmParams& params, std::uint16_t c,
                            std::span<const std::uint16_t> b);

enum class EnumMode { Exhaustive, Orbit };

struct EnumOptions {
    EnumMode mode = EnumMode::Exhaustive;
    std::uint64_t budget = kDefaultBudget;
    unsigned jobs = 1;
};

/// All minimum-weight codewords, sorted by table.  Exhaustive mode scans every
/// coefficient vector over the monomial basis; orbit mode closes the canonical
/// words under the full affine group.  The two agree on every in-budget cell.
std::vector<Codeword> enumerate_min_words(const GrmParams& params, const EnumOptions& options);

/// The orbit {f o tau : tau in GA_m(F_q)} of a codeword, sorted by table.
std::vector<Codeword> affine_orbit(const Codeword& f, const GrmParams& params,
                                   std::uint64_t budget = kDefaultBudget);

} // namespace grm
