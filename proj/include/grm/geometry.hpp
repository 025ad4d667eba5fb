#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grm/field.hpp"

namespace grm {

/// A point of F_q^m as a vector of element codes.
using Point = std::vector<std::uint8_t>;

/// q^m, guarding against overflow of the index space.
std::uint64_t domain_size(const Field& field, unsigned m);

/// Canonical point order: index = sum code(x_i) * q^(m-i), x_1 most significant.
std::uint32_t point_index(const Field& field, std::span<const std::uint8_t> pt);
Point point_at(const Field& field, unsigned m, std::uint32_t index);

/// An affine hyperplane {x : normal . x = offset}.  The stored normal is
/// canonical: scaled so its first nonzero coordinate is 1, which makes the
/// (normal, offset) pair a unique key for the point set.
class Hyperplane {
public:
    Hyperplane(FieldPtr field, std::vector<std::uint8_t> normal, std::uint16_t offset);

    const FieldPtr& field() const { return field_; }
    unsigned m() const { return static_cast<unsigned>(normal_.size()); }
    const std::vector<std::uint8_t>& normal() const { return normal_; }
    std::uint8_t offset() const { return offset_; }

    /// normal . pt
    std::uint16_t side(std::span<const std::uint8_t> pt) const;
    bool contains(std::span<const std::uint8_t> pt) const { return side(pt) == offset_; }

    /// Text form "[l1,...,lm]=c".
    std::string to_string() const;
    static Hyperplane parse(FieldPtr field, unsigned m, std::string_view text);

    bool operator==(const Hyperplane& other) const;

private:
    FieldPtr field_;
    std::vector<std::uint8_t> normal_;
    std::uint8_t offset_ = 0;
};

/// The q parallel translates of H, in offset code order; they partition F_q^m.
std::vector<Hyperplane> parallel_class(const Hyperplane& h);

/// Canonical normals, one per parallel class: enumerated by pivot position
/// (the index of the leading 1), then by the remaining coordinates in point
/// order.  The first normal is [1,0,...,0].
std::vector<std::vector<std::uint8_t>> canonical_normals(const Field& field, unsigned m);

/// All q * (q^m - 1)/(q - 1) hyperplanes in canonical order: normals as above,
/// offsets ascending within each normal.
std::vector<Hyperplane> canonical_hyperplanes(const FieldPtr& field, unsigned m);

/// An affine subspace, stored as a base point plus a row-reduced list of
/// independent direction vectors.
struct Flat {
    FieldPtr field;
    Point base;
    std::vector<Point> directions;

    unsigned m() const { return static_cast<unsigned>(base.size()); }
    unsigned dim() const { return static_cast<unsigned>(directions.size()); }
    unsigned codim() const { return m() - dim(); }
    std::uint64_t size() const;

    bool contains(std::span<const std::uint8_t> pt) const;
    /// All q^dim point indices, sorted.
    std::vector<std::uint32_t> point_indices() const;

    /// Constraint form "[l..]=c & [l..]=c" (one clause per codimension),
    /// derived from the row-reduced null space of the directions; prints
    /// "full space" for codimension 0.
    std::string to_string() const;

    /// Equality as point sets.
    bool same_points(const Flat& other) const;
};

/// A subset of F_q^m stored as sorted canonical point indices.
struct PointSet {
    FieldPtr field;
    unsigned m = 0;
    std::vector<std::uint32_t> indices;

    static PointSet from_indices(FieldPtr field, unsigned m, std::vector<std::uint32_t> idx);
    static PointSet from_points(FieldPtr field, unsigned m, std::span<const Point> pts);
    /// One point per line, comma-separated codes; '#' starts a comment.
    static PointSet parse(FieldPtr field, unsigned m, std::istream& in);
    std::string to_text() const;

    std::size_t size() const { return indices.size(); }
    bool contains_index(std::uint32_t idx) const;
    Point point(std::size_t i) const;
};

struct AffineHull {
    unsigned rank = 0;
    Flat flat;
};

/// Affine hull of a nonempty set: base point is the smallest point in
/// canonical order, directions are the row reduction of the difference set.
AffineHull affine_hull(const PointSet& s);

/// The set as a Flat if it is exactly an affine subspace, otherwise nullopt.
std::optional<Flat> as_flat(const PointSet& s);

/// Search outcome for an avoiding hyperplane over a set S with |S| = t * q^n.
struct AvoidanceOutcome {
    enum class Status { Found, HypothesisViolated, MissingAvoider };
    Status status = Status::MissingAvoider;
    /// Found: the first avoiding hyperplane in canonical order.
    std::optional<Hyperplane> avoiding;
    /// HypothesisViolated: the first hyperplane with 0 < |S ∩ H| < t*q^(n-1).
    std::optional<Hyperplane> violator;
    std::uint64_t violator_count = 0;

    bool found() const { return status == Status::Found; }
};

/// Checks the intersection hypothesis (every hyperplane meets S in 0 or at
/// least t*q^(n-1) points) over all hyperplanes, then searches for a
/// hyperplane disjoint from S.  Requires |S| = t*q^n < q^m with 0 < t < q.
AvoidanceOutcome find_avoiding_hyperplane(const PointSet& s, std::uint64_t t, unsigned n);

/// A decomposition of S as a union of q-s parallel flats of codimension t+1
/// inside an ambient flat of codimension t.
struct FlatUnion {
    Flat ambient;
    /// Nonzero functional on the ambient flat, in ambient coordinates
    /// (coefficients over the ambient direction basis), canonical form.
    std::vector<std::uint8_t> direction;
    /// The q-s values of the functional on S, ascending code order.
    std::vector<std::uint8_t> offsets;
    /// The parallel components, one per offset, same order.
    std::vector<Flat> components;
};

/// Finds the first decomposition in canonical direction order, or nullopt if
/// S does not have the union-of-parallel-flats shape.  Requires
/// |S| = (q-s) * q^(m-t-1) with 0 <= t <= m-1 and 0 <= s <= q-2.
std::optional<FlatUnion> classify_flat_union(const PointSet& s, unsigned t, unsigned s_order);

/// An invertible affine transformation x -> matrix * x + translation.
class AffineMap {
public:
    /// matrix is row-major m x m; throws std::invalid_argument if singular.
    AffineMap(FieldPtr field, std::vector<std::uint8_t> matrix, std::vector<std::uint8_t> translation);
    static AffineMap identity(FieldPtr field, unsigned m);

    const FieldPtr& field() const { return field_; }
    unsigned m() const { return m_; }
    std::uint8_t matrix_at(unsigned row, unsigned col) const { return matrix_[row * m_ + col]; }
    const std::vector<std::uint8_t>& translation() const { return translation_; }

    Point apply(std::span<const std::uint8_t> pt) const;

    /// perm[i] = index(apply(point(i))); a permutation of [0, q^m).
    std::vector<std::uint32_t> index_permutation() const;

private:
    FieldPtr field_;
    unsigned m_ = 0;
    std::vector<std::uint8_t> matrix_;
    std::vector<std::uint8_t> translation_;
};

PointSet apply_affine(const AffineMap& tau, const PointSet& s);

/// |GA_m(F_q)| = |GL_m(F_q)| * q^m, saturating at uint64 max.
std::uint64_t affine_group_order(unsigned q, unsigned m);

} // namespace grm
