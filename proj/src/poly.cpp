#include "grm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace grm {

namespace {

constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 26;

unsigned total_degree(const Monomial& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

// X^q = X on functions: exponent e > q-1 folds to ((e-1) mod (q-1)) + 1,
// exponent 0 stays 0.
std::uint16_t reduce_exponent(std::uint32_t e, unsigned q) {
    if (e == 0 || e <= q - 1)
        return static_cast<std::uint16_t>(e);
    return static_cast<std::uint16_t>((e - 1) % (q - 1) + 1);
}

std::uint64_t table_size(const Field& field, unsigned m) {
    const std::uint64_t n = domain_size(field, m);
    if (n > kMaxTableSize)
        throw std::invalid_argument("value table would exceed the supported size");
    return n;
}

void require_byte_field(const Field& field) {
    if (!field.has_tables())
        throw std::invalid_argument("value tables require q <= 256");
}

// In-place transform of a dense length-q^m array along one axis: replaces the
// q entries of every axis-aligned fiber by matrix * fiber, where matrix is
// q x q row-major.  Used with the Vandermonde matrix (coefficients -> values)
// and its inverse (values -> coefficients).
void transform_axis(const Field& field, std::vector<std::uint8_t>& a, unsigned m, unsigned axis,
                    const std::uint8_t* matrix) {
    const unsigned q = field.q();
    std::uint64_t inner = 1;
    for (unsigned i = axis + 1; i < m; ++i)
        inner *= q;
    std::uint64_t outer = 1;
    for (unsigned i = 0; i < axis; ++i)
        outer *= q;
    std::vector<std::uint8_t> fiber(q);
    for (std::uint64_t o = 0; o < outer; ++o) {
        for (std::uint64_t r = 0; r < inner; ++r) {
            const std::uint64_t start = (o * q) * inner + r;
            for (unsigned x = 0; x < q; ++x)
                fiber[x] = a[start + x * inner];
            for (unsigned x = 0; x < q; ++x) {
                std::uint16_t acc = 0;
                const std::uint8_t* row = matrix + static_cast<std::size_t>(x) * q;
                for (unsigned e = 0; e < q; ++e)
                    acc = field.add(acc, field.mul(row[e], fiber[e]));
                a[start + x * inner] = static_cast<std::uint8_t>(acc);
            }
        }
    }
}

} // namespace

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db)
        return da < db;
    return a > b; // within a degree: lexicographically larger first (x1 before x2)
}

// ---------------------------------------------------------------------------
// EvaluationTable

EvaluationTable EvaluationTable::zero(FieldPtr field, unsigned m) {
    require_byte_field(*field);
    const std::uint64_t n = table_size(*field, m);
    return EvaluationTable{std::move(field), m, std::vector<std::uint8_t>(n, 0)};
}

EvaluationTable EvaluationTable::parse(FieldPtr field, unsigned m, std::string_view text) {
    EvaluationTable out = zero(field, m);
    std::size_t pos = 0;
    std::string s(text);
    std::istringstream in(s);
    unsigned v = 0;
    char sep = 0;
    while (in >> v) {
        if (v >= field->q())
            throw std::invalid_argument("table value out of range: " + std::to_string(v));
        if (pos >= out.values.size())
            throw std::invalid_argument("table has too many entries");
        out.values[pos++] = static_cast<std::uint8_t>(v);
        if (!(in >> sep))
            break;
        if (sep != ',')
            throw std::invalid_argument("table entries must be comma separated");
    }
    if (pos != out.values.size())
        throw std::invalid_argument("table must have exactly q^m entries");
    return out;
}

std::string EvaluationTable::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ',';
        out << unsigned(values[i]);
    }
    return out.str();
}

std::size_t EvaluationTable::weight() const { return kernels::count_nonzero(values); }

std::vector<std::uint32_t> EvaluationTable::support() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < values.size(); ++i)
        if (values[i] != 0)
            out.push_back(i);
    return out;
}

bool EvaluationTable::same_domain(const EvaluationTable& other) const {
    return m == other.m && field->same_field(*other.field);
}

bool EvaluationTable::operator==(const EvaluationTable& other) const {
    return same_domain(other) && values == other.values;
}

EvaluationTable pointwise_sum(const EvaluationTable& a, const EvaluationTable& b) {
    if (!a.same_domain(b))
        throw FieldMismatchError("tables over different domains");
    EvaluationTable out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = static_cast<std::uint8_t>(a.field->add(a.values[i], b.values[i]));
    return out;
}

EvaluationTable pointwise_product(const EvaluationTable& a, const EvaluationTable& b) {
    if (!a.same_domain(b))
        throw FieldMismatchError("tables over different domains");
    EvaluationTable out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = static_cast<std::uint8_t>(a.field->mul(a.values[i], b.values[i]));
    return out;
}

// ---------------------------------------------------------------------------
// ReducedPoly basics

ReducedPoly ReducedPoly::zero(FieldPtr field, unsigned m) { return ReducedPoly(std::move(field), m); }

ReducedPoly ReducedPoly::constant(FieldPtr field, unsigned m, std::uint16_t c) {
    ReducedPoly p(std::move(field), m);
    p.add_term(Monomial(m, 0), c);
    return p;
}

ReducedPoly ReducedPoly::term(FieldPtr field, unsigned m, Monomial exponents, std::uint16_t c) {
    if (exponents.size() != m)
        throw std::invalid_argument("monomial has wrong number of variables");
    for (auto e : exponents)
        if (e > field->q() - 1)
            throw std::invalid_argument("monomial exponent exceeds q-1");
    ReducedPoly p(std::move(field), m);
    p.add_term(exponents, c);
    return p;
}

void ReducedPoly::add_term(const Monomial& e, std::uint16_t c) {
    if (c == 0)
        return;
    if (c >= field_->q())
        throw std::invalid_argument("coefficient code out of range");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second = field_->add(it->second, c);
        if (it->second == 0)
            terms_.erase(it);
    }
}

void ReducedPoly::require_compatible(const ReducedPoly& other) const {
    if (m_ != other.m_ || !field_->same_field(*other.field_))
        throw FieldMismatchError("polynomials over different fields or variable counts");
}

std::optional<int> ReducedPoly::degree() const {
    if (terms_.empty())
        return std::nullopt;
    // map order is graded, so the last term has maximal total degree
    return static_cast<int>(total_degree(std::prev(terms_.end())->first));
}

int ReducedPoly::degree_in(unsigned axis) const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(e[axis]));
    return d;
}

ReducedPoly ReducedPoly::operator+(const ReducedPoly& other) const {
    require_compatible(other);
    ReducedPoly out = *this;
    for (const auto& [e, c] : other.terms_)
        out.add_term(e, c);
    return out;
}

ReducedPoly ReducedPoly::operator-() const {
    ReducedPoly out(field_, m_);
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(e, field_->neg(c));
    return out;
}

ReducedPoly ReducedPoly::operator-(const ReducedPoly& other) const { return *this + (-other); }

ReducedPoly ReducedPoly::operator*(const ReducedPoly& other) const {
    require_compatible(other);
    const unsigned q = field_->q();
    ReducedPoly out(field_, m_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            Monomial e(m_);
            for (unsigned i = 0; i < m_; ++i)
                e[i] = reduce_exponent(static_cast<std::uint32_t>(ea[i]) + eb[i], q);
            out.add_term(e, field_->mul(ca, cb));
        }
    }
    return out;
}

ReducedPoly ReducedPoly::scaled(std::uint16_t c) const {
    ReducedPoly out(field_, m_);
    if (c == 0)
        return out;
    for (const auto& [e, coef] : terms_)
        out.terms_.emplace(e, field_->mul(coef, c));
    return out;
}

bool ReducedPoly::operator==(const ReducedPoly& other) const {
    return m_ == other.m_ && field_->same_field(*other.field_) && terms_ == other.terms_;
}

std::uint16_t ReducedPoly::eval(std::span<const std::uint8_t> pt) const {
    if (pt.size() != m_)
        throw std::invalid_argument("evaluation point has wrong dimension");
    std::uint16_t acc = 0;
    for (const auto& [e, c] : terms_) {
        std::uint16_t v = c;
        for (unsigned i = 0; i < m_; ++i)
            v = field_->mul(v, field_->pow_of(pt[i], e[i]));
        acc = field_->add(acc, v);
    }
    return acc;
}

ReducedPoly ReducedPoly::substituted(unsigned axis, std::uint16_t value) const {
    if (axis >= m_)
        throw std::invalid_argument("axis out of range");
    ReducedPoly out(field_, m_);
    for (const auto& [e, c] : terms_) {
        Monomial reduced = e;
        reduced[axis] = 0;
        out.add_term(reduced, field_->mul(c, field_->pow_of(value, e[axis])));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tables <-> polynomials

EvaluationTable ReducedPoly::to_table() const {
    require_byte_field(*field_);
    EvaluationTable out = EvaluationTable::zero(field_, m_);
    // dense exponent-indexed coefficient array, then one Vandermonde pass per axis
    for (const auto& [e, c] : terms_) {
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < m_; ++i)
            idx = idx * field_->q() + e[i];
        out.values[idx] = static_cast<std::uint8_t>(c);
    }
    std::vector<std::uint8_t> vandermonde(static_cast<std::size_t>(field_->q()) * field_->q());
    for (unsigned x = 0; x < field_->q(); ++x)
        for (unsigned e = 0; e < field_->q(); ++e)
            vandermonde[x * field_->q() + e] = field_->pow_of(x, e);
    for (unsigned axis = 0; axis < m_; ++axis)
        transform_axis(*field_, out.values, m_, axis, vandermonde.data());
    return out;
}

ReducedPoly ReducedPoly::interpolate(const EvaluationTable& table) {
    const Field& field = *table.field;
    require_byte_field(field);
    std::vector<std::uint8_t> coeffs = table.values;
    const auto vinv = field.inverse_vandermonde();
    for (unsigned axis = 0; axis < table.m; ++axis)
        transform_axis(field, coeffs, table.m, axis, vinv.data());
    ReducedPoly out(table.field, table.m);
    for (std::uint64_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0)
            continue;
        Monomial e(table.m);
        std::uint64_t rest = idx;
        for (unsigned i = table.m; i-- > 0;) {
            e[i] = static_cast<std::uint16_t>(rest % field.q());
            rest /= field.q();
        }
        out.terms_.emplace(std::move(e), coeffs[idx]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form

std::string ReducedPoly::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        const bool constant_term = total_degree(e) == 0;
        if (c != 1 || constant_term)
            out << unsigned(c);
        bool need_star = c != 1 || constant_term;
        for (unsigned i = 0; i < m_; ++i) {
            if (e[i] == 0)
                continue;
            if (need_star)
                out << '*';
            need_star = true;
            out << 'x' << (i + 1);
            if (e[i] > 1)
                out << '^' << e[i];
        }
    }
    return out.str();
}

namespace {

// One term of the polynomial grammar: "c", "c*x<i>^<e>*...", or "x<i>...".
void parse_term(const Field& field, unsigned m, const std::string& term, ReducedPoly& acc,
                std::vector<std::uint16_t>& exponents, const std::string& full) {
    std::size_t pos = 0;
    const auto fail = [&](const std::string& why) {
        throw std::invalid_argument("bad polynomial term '" + term + "' in '" + full + "': " + why);
    };
    auto read_uint = [&]() -> unsigned {
        if (pos >= term.size() || !std::isdigit(static_cast<unsigned char>(term[pos])))
            fail("expected a number");
        unsigned v = 0;
        while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
            v = v * 10 + (term[pos] - '0');
            if (v > 0xffff)
                fail("number too large");
            ++pos;
        }
        return v;
    };

    std::uint16_t coef = 1;
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
        const unsigned c = read_uint();
        if (c >= field.q())
            fail("coefficient code must be < q");
        coef = static_cast<std::uint16_t>(c);
        if (pos < term.size()) {
            if (term[pos] != '*')
                fail("expected '*' after coefficient");
            ++pos;
            if (pos == term.size())
                fail("trailing '*'");
        }
    }
    std::fill(exponents.begin(), exponents.end(), 0);
    while (pos < term.size()) {
        if (term[pos] != 'x')
            fail("expected a variable");
        ++pos;
        const unsigned var = read_uint();
        if (var < 1 || var > m)
            fail("variable index out of range");
        unsigned exp = 1;
        if (pos < term.size() && term[pos] == '^') {
            ++pos;
            exp = read_uint();
        }
        if (exp < 1 || exp > field.q() - 1)
            fail("exponent must lie in [1, q-1]");
        if (exponents[var - 1] != 0)
            fail("variable repeated in one term");
        exponents[var - 1] = static_cast<std::uint16_t>(exp);
        if (pos < term.size()) {
            if (term[pos] != '*')
                fail("expected '*' between factors");
            ++pos;
            if (pos == term.size())
                fail("trailing '*'");
        }
    }
    acc = acc + ReducedPoly::term(acc.field(), m, exponents, coef);
}

} // namespace

ReducedPoly ReducedPoly::parse(FieldPtr field, unsigned m, std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            compact += c;
    if (compact.empty())
        throw std::invalid_argument("empty polynomial text");
    ReducedPoly acc = ReducedPoly::zero(field, m);
    std::vector<std::uint16_t> exponents(m, 0);
    std::size_t start = 0;
    const std::string full(text);
    while (start <= compact.size()) {
        const std::size_t plus = compact.find('+', start);
        const std::string term = compact.substr(start, plus == std::string::npos ? std::string::npos
                                                                                 : plus - start);
        if (term.empty())
            throw std::invalid_argument("empty term in polynomial: " + full);
        parse_term(*field, m, term, acc, exponents, full);
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Factorizations

namespace {

// First point where p is nonzero, with the given axis coordinate pinned.
Point witness_point(const ReducedPoly& p, unsigned axis, std::uint16_t axis_value) {
    const EvaluationTable table = p.to_table();
    for (std::uint32_t i = 0; i < table.values.size(); ++i) {
        if (table.values[i] == 0)
            continue;
        Point pt = point_at(*p.field(), p.m(), i);
        pt[axis] = static_cast<std::uint8_t>(axis_value);
        return pt;
    }
    throw std::logic_error("witness requested for the zero polynomial");
}

std::string point_text(const Point& pt) {
    std::string out = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(unsigned(pt[i]));
    }
    out += ')';
    return out;
}

} // namespace

ReducedPoly divide_linear(const ReducedPoly& p, unsigned axis, std::uint16_t a) {
    if (axis >= p.m())
        throw std::invalid_argument("axis out of range");
    const Field& field = *p.field();
    if (a >= field.q())
        throw std::invalid_argument("root code out of range");
    const ReducedPoly at_a = p.substituted(axis, a);
    if (!at_a.is_zero()) {
        const Point w = witness_point(at_a, axis, a);
        throw VanishingError("polynomial does not vanish on hyperplane x" +
                                 std::to_string(axis + 1) + " = " + std::to_string(a) +
                                 "; witness " + point_text(w),
                             w);
    }
    // synthetic division by (x_axis - a) on the axis coefficients
    const int d = p.degree_in(axis);
    std::vector<ReducedPoly> c(static_cast<std::size_t>(d) + 1,
                               ReducedPoly::zero(p.field(), p.m()));
    for (const auto& [e, coef] : p.terms()) {
        Monomial reduced = e;
        reduced[axis] = 0;
        c[e[axis]] = c[e[axis]] + ReducedPoly::term(p.field(), p.m(), reduced, coef);
    }
    ReducedPoly quotient = ReducedPoly::zero(p.field(), p.m());
    ReducedPoly carry = ReducedPoly::zero(p.field(), p.m());
    for (int k = d - 1; k >= 0; --k) {
        carry = c[k + 1] + carry.scaled(a); // b_k = c_{k+1} + a*b_{k+1}
        Monomial shift(p.m(), 0);
        shift[axis] = static_cast<std::uint16_t>(k);
        quotient = quotient + carry * ReducedPoly::term(p.field(), p.m(), shift, 1);
    }
    return quotient;
}

ReducedPoly complement_factor(const ReducedPoly& p, unsigned axis, std::uint16_t b) {
    if (axis >= p.m())
        throw std::invalid_argument("axis out of range");
    const Field& field = *p.field();
    if (b >= field.q())
        throw std::invalid_argument("section code out of range");
    for (unsigned v = 0; v < field.q(); ++v) {
        if (v == b)
            continue;
        const ReducedPoly at_v = p.substituted(axis, static_cast<std::uint16_t>(v));
        if (!at_v.is_zero()) {
            const Point w = witness_point(at_v, axis, static_cast<std::uint16_t>(v));
            throw VanishingError("polynomial is nonzero off the hyperplane x" +
                                     std::to_string(axis + 1) + " = " + std::to_string(b) +
                                     "; witness " + point_text(w),
                                 w);
        }
    }
    const ReducedPoly at_b = p.substituted(axis, b);
    ReducedPoly out = ReducedPoly::zero(p.field(), p.m() - 1);
    for (const auto& [e, coef] : at_b.terms()) {
        Monomial dropped;
        dropped.reserve(p.m() - 1);
        for (unsigned i = 0; i < p.m(); ++i)
            if (i != axis)
                dropped.push_back(e[i]);
        out = out + ReducedPoly::term(p.field(), p.m() - 1, std::move(dropped), coef);
    }
    return out;
}

ReducedPoly insert_axis(const ReducedPoly& p, unsigned axis) {
    if (axis > p.m())
        throw std::invalid_argument("axis out of range");
    ReducedPoly out = ReducedPoly::zero(p.field(), p.m() + 1);
    for (const auto& [e, coef] : p.terms()) {
        Monomial lifted;
        lifted.reserve(p.m() + 1);
        for (unsigned i = 0; i < axis; ++i)
            lifted.push_back(e[i]);
        lifted.push_back(0);
        for (unsigned i = axis; i < p.m(); ++i)
            lifted.push_back(e[i]);
        out = out + ReducedPoly::term(p.field(), p.m() + 1, std::move(lifted), coef);
    }
    return out;
}

ReducedPoly affine_substitute(const ReducedPoly& p, const AffineMap& tau) {
    if (tau.m() != p.m() || !tau.field()->same_field(*p.field()))
        throw FieldMismatchError("affine map over a different space");
    const EvaluationTable table = p.to_table();
    const std::vector<std::uint32_t> perm = tau.index_permutation();
    EvaluationTable composed = EvaluationTable::zero(p.field(), p.m());
    for (std::size_t i = 0; i < perm.size(); ++i)
        composed.values[i] = table.values[perm[i]];
    return ReducedPoly::interpolate(composed);
}

} // namespace grm
