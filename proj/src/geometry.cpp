#include "grm/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <sstream>

#include "linalg.hpp"

namespace grm {

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t limit) {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (v > limit / base)
            throw std::invalid_argument("domain size exceeds supported range");
        v *= base;
    }
    return v;
}

void require_point(const Field& field, std::span<const std::uint8_t> pt, unsigned m) {
    if (pt.size() != m)
        throw std::invalid_argument("point has wrong dimension");
    for (auto c : pt)
        if (c >= field.q())
            throw std::invalid_argument("point coordinate out of range");
}

// Pivot columns of an already row-reduced matrix.
std::vector<unsigned> leading_columns(const detail::Matrix& rows) {
    std::vector<unsigned> pivots;
    pivots.reserve(rows.size());
    for (const auto& row : rows) {
        unsigned c = 0;
        while (c < row.size() && row[c] == 0)
            ++c;
        pivots.push_back(c);
    }
    return pivots;
}

} // namespace

std::uint64_t domain_size(const Field& field, unsigned m) {
    return checked_pow(field.q(), m, std::uint64_t{1} << 31);
}

std::uint32_t point_index(const Field& field, std::span<const std::uint8_t> pt) {
    std::uint64_t idx = 0;
    for (auto c : pt) {
        if (c >= field.q())
            throw std::invalid_argument("point coordinate out of range");
        idx = idx * field.q() + c;
    }
    return static_cast<std::uint32_t>(idx);
}

Point point_at(const Field& field, unsigned m, std::uint32_t index) {
    Point pt(m, 0);
    std::uint32_t rest = index;
    for (unsigned i = m; i-- > 0;) {
        pt[i] = static_cast<std::uint8_t>(rest % field.q());
        rest /= field.q();
    }
    if (rest != 0)
        throw std::invalid_argument("point index out of range");
    return pt;
}

// ---------------------------------------------------------------------------
// Hyperplane

Hyperplane::Hyperplane(FieldPtr field, std::vector<std::uint8_t> normal, std::uint16_t offset)
    : field_(std::move(field)), normal_(std::move(normal)) {
    if (normal_.empty())
        throw std::invalid_argument("hyperplane needs at least one coordinate");
    require_point(*field_, normal_, static_cast<unsigned>(normal_.size()));
    if (offset >= field_->q())
        throw std::invalid_argument("hyperplane offset out of range");
    unsigned first = 0;
    while (first < normal_.size() && normal_[first] == 0)
        ++first;
    if (first == normal_.size())
        throw std::invalid_argument("hyperplane normal must be nonzero");
    const std::uint16_t scale = field_->inv(normal_[first]);
    for (auto& c : normal_)
        c = static_cast<std::uint8_t>(field_->mul(scale, c));
    offset_ = static_cast<std::uint8_t>(field_->mul(scale, offset));
}

std::uint16_t Hyperplane::side(std::span<const std::uint8_t> pt) const {
    return detail::dot(*field_, normal_, pt);
}

std::string Hyperplane::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < normal_.size(); ++i) {
        if (i)
            out << ',';
        out << unsigned(normal_[i]);
    }
    out << "]=" << unsigned(offset_);
    return out.str();
}

Hyperplane Hyperplane::parse(FieldPtr field, unsigned m, std::string_view text) {
    std::string s(text);
    std::istringstream in(s);
    char ch = 0;
    if (!(in >> ch) || ch != '[')
        throw std::invalid_argument("hyperplane must look like [l1,...,lm]=c: " + s);
    std::vector<std::uint8_t> normal;
    for (unsigned i = 0; i < m; ++i) {
        unsigned v = 0;
        char sep = 0;
        if (!(in >> v >> sep) || (sep != ',' && sep != ']') || (sep == ']') != (i + 1 == m))
            throw std::invalid_argument("bad hyperplane normal: " + s);
        normal.push_back(static_cast<std::uint8_t>(v));
    }
    unsigned offset = 0;
    if (!(in >> ch) || ch != '=' || !(in >> offset))
        throw std::invalid_argument("bad hyperplane offset: " + s);
    return Hyperplane(std::move(field), std::move(normal), static_cast<std::uint16_t>(offset));
}

bool Hyperplane::operator==(const Hyperplane& other) const {
    return field_->same_field(*other.field_) && normal_ == other.normal_ &&
           offset_ == other.offset_;
}

std::vector<Hyperplane> parallel_class(const Hyperplane& h) {
    std::vector<Hyperplane> out;
    out.reserve(h.field()->q());
    for (unsigned c = 0; c < h.field()->q(); ++c)
        out.emplace_back(h.field(), h.normal(), static_cast<std::uint16_t>(c));
    return out;
}

std::vector<std::vector<std::uint8_t>> canonical_normals(const Field& field, unsigned m) {
    const unsigned q = field.q();
    std::vector<std::vector<std::uint8_t>> out;
    for (unsigned pivot = 0; pivot < m; ++pivot) {
        const unsigned tail = m - pivot - 1;
        const std::uint64_t combos = checked_pow(q, tail, std::uint64_t{1} << 31);
        for (std::uint64_t v = 0; v < combos; ++v) {
            std::vector<std::uint8_t> normal(m, 0);
            normal[pivot] = 1;
            std::uint64_t rest = v;
            for (unsigned i = m; i-- > pivot + 1;) {
                normal[i] = static_cast<std::uint8_t>(rest % q);
                rest /= q;
            }
            out.push_back(std::move(normal));
        }
    }
    return out;
}

std::vector<Hyperplane> canonical_hyperplanes(const FieldPtr& field, unsigned m) {
    std::vector<Hyperplane> out;
    for (auto& normal : canonical_normals(*field, m))
        for (unsigned c = 0; c < field->q(); ++c)
            out.emplace_back(field, normal, static_cast<std::uint16_t>(c));
    return out;
}

// ---------------------------------------------------------------------------
// Flat

std::uint64_t Flat::size() const { return checked_pow(field->q(), dim(), std::uint64_t{1} << 31); }

bool Flat::contains(std::span<const std::uint8_t> pt) const {
    require_point(*field, pt, m());
    detail::Row diff(m());
    for (unsigned i = 0; i < m(); ++i)
        diff[i] = static_cast<std::uint8_t>(field->sub(pt[i], base[i]));
    return detail::in_row_span(*field, directions, leading_columns(directions), std::move(diff));
}

std::vector<std::uint32_t> Flat::point_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    Point cur = base;
    auto walk = [&](auto&& self, unsigned level, const Point& at) -> void {
        if (level == dim()) {
            out.push_back(point_index(*field, at));
            return;
        }
        Point next(m());
        for (unsigned c = 0; c < field->q(); ++c) {
            for (unsigned i = 0; i < m(); ++i)
                next[i] = static_cast<std::uint8_t>(
                    field->add(at[i], field->mul(c, directions[level][i])));
            self(self, level + 1, next);
        }
    };
    walk(walk, 0, cur);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Flat::to_string() const {
    if (codim() == 0)
        return "full space";
    detail::Matrix dirs = directions;
    detail::Matrix constraints = detail::null_space(*field, std::move(dirs), m());
    std::ostringstream out;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (i)
            out << " & ";
        out << Hyperplane(field, constraints[i],
                          detail::dot(*field, constraints[i], base))
                   .to_string();
    }
    return out.str();
}

bool Flat::same_points(const Flat& other) const {
    return dim() == other.dim() && point_indices() == other.point_indices();
}

// ---------------------------------------------------------------------------
// PointSet

PointSet PointSet::from_indices(FieldPtr field, unsigned m, std::vector<std::uint32_t> idx) {
    const std::uint64_t total = domain_size(*field, m);
    for (auto i : idx)
        if (i >= total)
            throw std::invalid_argument("point index out of range");
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return PointSet{std::move(field), m, std::move(idx)};
}

PointSet PointSet::from_points(FieldPtr field, unsigned m, std::span<const Point> pts) {
    std::vector<std::uint32_t> idx;
    idx.reserve(pts.size());
    for (const auto& pt : pts) {
        require_point(*field, pt, m);
        idx.push_back(point_index(*field, pt));
    }
    return from_indices(std::move(field), m, std::move(idx));
}

PointSet PointSet::parse(FieldPtr field, unsigned m, std::istream& in) {
    std::vector<std::uint32_t> idx;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                trimmed += c;
        if (trimmed.empty())
            continue;
        std::istringstream ls(trimmed);
        Point pt;
        unsigned v = 0;
        char sep = ',';
        while (ls >> v) {
            pt.push_back(static_cast<std::uint8_t>(v));
            if (!(ls >> sep))
                break;
            if (sep != ',')
                throw std::invalid_argument("bad point line: " + line);
        }
        require_point(*field, pt, m);
        idx.push_back(point_index(*field, pt));
    }
    return from_indices(std::move(field), m, std::move(idx));
}

std::string PointSet::to_text() const {
    std::ostringstream out;
    for (auto i : indices) {
        const Point pt = point_at(*field, m, i);
        for (unsigned j = 0; j < m; ++j) {
            if (j)
                out << ',';
            out << unsigned(pt[j]);
        }
        out << '\n';
    }
    return out.str();
}

bool PointSet::contains_index(std::uint32_t idx) const {
    return std::binary_search(indices.begin(), indices.end(), idx);
}

Point PointSet::point(std::size_t i) const { return point_at(*field, m, indices[i]); }

// ---------------------------------------------------------------------------
// Hulls and flats

AffineHull affine_hull(const PointSet& s) {
    if (s.indices.empty())
        throw std::invalid_argument("affine hull of an empty set");
    const Point base = s.point(0); // smallest point in canonical order
    detail::Matrix diffs;
    diffs.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const Point pt = s.point(i);
        detail::Row d(s.m);
        for (unsigned j = 0; j < s.m; ++j)
            d[j] = static_cast<std::uint8_t>(s.field->sub(pt[j], base[j]));
        diffs.push_back(std::move(d));
    }
    const unsigned rank = detail::rref(*s.field, diffs);
    return AffineHull{rank, Flat{s.field, base, std::move(diffs)}};
}

std::optional<Flat> as_flat(const PointSet& s) {
    AffineHull hull = affine_hull(s);
    if (hull.flat.size() != s.size())
        return std::nullopt;
    return hull.flat;
}

// ---------------------------------------------------------------------------
// Avoiding hyperplane search

AvoidanceOutcome find_avoiding_hyperplane(const PointSet& s, std::uint64_t t, unsigned n) {
    const Field& field = *s.field;
    const unsigned q = field.q();
    const std::uint64_t total = domain_size(field, s.m);
    const std::uint64_t expected = t * checked_pow(q, n, std::uint64_t{1} << 31);
    if (t == 0 || t >= q || expected != s.size() || expected >= total)
        throw std::invalid_argument(
            "hypothesis shape violated: need |S| = t*q^n < q^m with 0 < t < q");

    std::vector<Point> pts;
    pts.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        pts.push_back(s.point(i));

    AvoidanceOutcome out;
    std::optional<Hyperplane> first_avoiding;
    for (const auto& normal : canonical_normals(field, s.m)) {
        std::vector<std::uint64_t> counts(q, 0);
        for (const auto& pt : pts)
            ++counts[detail::dot(field, normal, pt)];
        for (unsigned c = 0; c < q; ++c) {
            // count >= t*q^(n-1) compared as count*q >= t*q^n to stay integral
            if (counts[c] > 0 && counts[c] * q < expected) {
                out.status = AvoidanceOutcome::Status::HypothesisViolated;
                out.violator = Hyperplane(s.field, normal, static_cast<std::uint16_t>(c));
                out.violator_count = counts[c];
                return out;
            }
            if (counts[c] == 0 && !first_avoiding)
                first_avoiding = Hyperplane(s.field, normal, static_cast<std::uint16_t>(c));
        }
    }
    if (first_avoiding) {
        out.status = AvoidanceOutcome::Status::Found;
        out.avoiding = std::move(first_avoiding);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Union-of-parallel-flats classification

std::optional<FlatUnion> classify_flat_union(const PointSet& s, unsigned t, unsigned s_order) {
    const Field& field = *s.field;
    const unsigned q = field.q();
    const unsigned m = s.m;
    if (t > m - 1 || s_order > q - 2)
        throw std::invalid_argument("classification parameters out of range");
    const std::uint64_t expected =
        (q - s_order) * checked_pow(q, m - t - 1, std::uint64_t{1} << 31);
    if (s.size() != expected)
        throw std::invalid_argument("set size does not match (q-s)*q^(m-t-1)");

    AffineHull hull = affine_hull(s);
    const unsigned d = m - t;
    if (hull.rank != d)
        return std::nullopt;

    // Coordinates of each point inside the hull: with row-reduced directions
    // the coefficient along direction i is the difference at its pivot column.
    const std::vector<unsigned> pivots = leading_columns(hull.flat.directions);
    std::vector<std::vector<std::uint8_t>> alphas;
    alphas.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point pt = s.point(i);
        std::vector<std::uint8_t> alpha(d);
        for (unsigned j = 0; j < d; ++j)
            alpha[j] = static_cast<std::uint8_t>(
                field.sub(pt[pivots[j]], hull.flat.base[pivots[j]]));
        alphas.push_back(std::move(alpha));
    }

    const std::uint64_t section_size = checked_pow(q, d - 1, std::uint64_t{1} << 31);
    for (const auto& phi : canonical_normals(field, d)) {
        std::vector<std::uint64_t> buckets(q, 0);
        std::vector<std::uint8_t> values(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            values[i] = static_cast<std::uint8_t>(detail::dot(field, phi, alphas[i]));
            ++buckets[values[i]];
        }
        bool ok = true;
        for (unsigned c = 0; c < q && ok; ++c)
            ok = buckets[c] == 0 || buckets[c] == section_size;
        if (!ok)
            continue;

        FlatUnion result;
        result.ambient = hull.flat;
        result.direction = phi;
        for (unsigned c = 0; c < q; ++c) {
            if (buckets[c] == 0)
                continue;
            result.offsets.push_back(static_cast<std::uint8_t>(c));
            std::vector<std::uint32_t> member;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (values[i] == c)
                    member.push_back(s.indices[i]);
            auto flat = as_flat(PointSet::from_indices(s.field, m, std::move(member)));
            if (!flat)
                throw std::logic_error("full level set inside a flat must be a flat");
            result.components.push_back(std::move(*flat));
        }
        return result;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Affine maps

AffineMap::AffineMap(FieldPtr field, std::vector<std::uint8_t> matrix,
                     std::vector<std::uint8_t> translation)
    : field_(std::move(field)), m_(static_cast<unsigned>(translation.size())),
      matrix_(std::move(matrix)), translation_(std::move(translation)) {
    if (matrix_.size() != static_cast<std::size_t>(m_) * m_)
        throw std::invalid_argument("affine map matrix must be m x m");
    require_point(*field_, matrix_, static_cast<unsigned>(matrix_.size()));
    require_point(*field_, translation_, m_);
    detail::Matrix rows(m_, detail::Row(m_));
    for (unsigned i = 0; i < m_; ++i)
        for (unsigned j = 0; j < m_; ++j)
            rows[i][j] = matrix_[i * m_ + j];
    if (detail::rank_of(*field_, std::move(rows)) != m_)
        throw std::invalid_argument("affine map matrix is singular");
}

AffineMap AffineMap::identity(FieldPtr field, unsigned m) {
    std::vector<std::uint8_t> mat(static_cast<std::size_t>(m) * m, 0);
    for (unsigned i = 0; i < m; ++i)
        mat[i * m + i] = 1;
    return AffineMap(std::move(field), std::move(mat), std::vector<std::uint8_t>(m, 0));
}

Point AffineMap::apply(std::span<const std::uint8_t> pt) const {
    require_point(*field_, pt, m_);
    Point out(m_);
    for (unsigned i = 0; i < m_; ++i) {
        std::uint16_t acc = translation_[i];
        for (unsigned j = 0; j < m_; ++j)
            acc = field_->add(acc, field_->mul(matrix_[i * m_ + j], pt[j]));
        out[i] = static_cast<std::uint8_t>(acc);
    }
    return out;
}

std::vector<std::uint32_t> AffineMap::index_permutation() const {
    const unsigned q = field_->q();
    const std::uint64_t total = domain_size(*field_, m_);
    // contrib[axis][v] = v * (column axis of the matrix)
    std::vector<std::vector<Point>> contrib(m_);
    for (unsigned axis = 0; axis < m_; ++axis) {
        contrib[axis].assign(q, Point(m_));
        for (unsigned v = 0; v < q; ++v)
            for (unsigned i = 0; i < m_; ++i)
                contrib[axis][v][i] =
                    static_cast<std::uint8_t>(field_->mul(matrix_[i * m_ + axis], v));
    }
    std::vector<std::uint32_t> perm(total);
    std::vector<Point> partial(m_ + 1, Point(m_));
    partial[0] = translation_;
    std::uint32_t counter = 0;
    auto walk = [&](auto&& self, unsigned axis) -> void {
        if (axis == m_) {
            perm[counter++] = point_index(*field_, partial[m_]);
            return;
        }
        for (unsigned v = 0; v < q; ++v) {
            for (unsigned i = 0; i < m_; ++i)
                partial[axis + 1][i] = static_cast<std::uint8_t>(
                    field_->add(partial[axis][i], contrib[axis][v][i]));
            self(self, axis + 1);
        }
    };
    walk(walk, 0);
    return perm;
}

PointSet apply_affine(const AffineMap& tau, const PointSet& s) {
    std::vector<std::uint32_t> idx;
    idx.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        idx.push_back(point_index(*s.field, tau.apply(s.point(i))));
    return PointSet::from_indices(s.field, s.m, std::move(idx));
}

std::uint64_t affine_group_order(unsigned q, unsigned m) {
    unsigned __int128 acc = 1;
    unsigned __int128 qm = 1;
    for (unsigned i = 0; i < m; ++i)
        qm *= q;
    acc = qm;
    unsigned __int128 qi = 1;
    for (unsigned i = 0; i < m; ++i) {
        acc *= (qm - qi);
        qi *= q;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace grm
