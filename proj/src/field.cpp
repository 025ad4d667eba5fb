#include "grm/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace grm {

namespace {

bool is_prime(unsigned p) {
    if (p < 2)
        return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// Built-in moduli: Conway polynomials, coefficients low to high.
const std::map<unsigned, std::vector<std::uint16_t>>& conway_table() {
    static const std::map<unsigned, std::vector<std::uint16_t>> table = {
        {4, {1, 1, 1}},        // x^2 + x + 1
        {8, {1, 1, 0, 1}},     // x^3 + x + 1
        {9, {2, 2, 1}},        // x^2 + 2x + 2
        {16, {1, 1, 0, 0, 1}}, // x^4 + x + 1
        {25, {2, 4, 1}},       // x^2 + 4x + 2
        {27, {1, 2, 0, 1}},    // x^3 + 2x + 1
    };
    return table;
}

using Poly = std::vector<std::uint16_t>; // dense over F_p, low to high, may have zero lead

int poly_degree(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0)
            return i;
    return -1;
}

// Remainder of f by monic g over F_p.
Poly poly_mod(Poly f, const Poly& g, unsigned p) {
    const int dg = poly_degree(g);
    for (int i = poly_degree(f); i >= dg && dg >= 0; i = poly_degree(f)) {
        const unsigned c = f[i];
        if (c == 0)
            break;
        const int shift = i - dg;
        for (int j = 0; j <= dg; ++j) {
            unsigned v = f[j + shift] + p * c - (c * g[j]) % p;
            f[j + shift] = static_cast<std::uint16_t>(v % p);
        }
    }
    return f;
}

bool poly_is_zero(const Poly& f) { return poly_degree(f) < 0; }

// Trial division by every monic polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& modulus, unsigned p) {
    const int deg = poly_degree(modulus);
    if (deg < 1)
        return false;
    for (int d = 1; 2 * d <= deg; ++d) {
        // all monic degree-d divisor candidates: p^d choices of lower coefficients
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i)
            total *= p;
        for (std::uint64_t tail = 0; tail < total; ++tail) {
            Poly g(d + 1, 0);
            g[d] = 1;
            std::uint64_t rest = tail;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint16_t>(rest % p);
                rest /= p;
            }
            if (poly_is_zero(poly_mod(modulus, g, p)))
                return false;
        }
    }
    return true;
}

std::vector<std::uint16_t> code_digits(std::uint16_t code, unsigned p, unsigned n) {
    std::vector<std::uint16_t> d(n, 0);
    unsigned c = code;
    for (unsigned i = 0; i < n; ++i) {
        d[i] = static_cast<std::uint16_t>(c % p);
        c /= p;
    }
    return d;
}

std::uint16_t digits_code(std::span<const std::uint16_t> d, unsigned p) {
    std::uint32_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;)
        code = code * p + d[i];
    return static_cast<std::uint16_t>(code);
}

} // namespace

FieldPtr Field::make(unsigned p, unsigned n, std::vector<std::uint16_t> modulus) {
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (n < 1)
        throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q *= p;
        if (q > 65536)
            throw std::invalid_argument("field order p^n exceeds 2^16");
    }
    if (modulus.size() != n + 1)
        throw std::invalid_argument("modulus must have exactly n+1 coefficients");
    for (auto c : modulus)
        if (c >= p)
            throw std::invalid_argument("modulus coefficients must lie in [0, p)");
    if (modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic");
    if (n >= 2 && !is_irreducible(modulus, p))
        throw std::invalid_argument("modulus is reducible over F_p");

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->n_ = n;
    field->q_ = static_cast<unsigned>(q);
    field->modulus_ = std::move(modulus);
    field->build_tables();
    return field;
}

FieldPtr Field::make(unsigned p, unsigned n) {
    if (n == 1)
        return make(p, 1, {0, 1});
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i)
        q *= p;
    auto it = conway_table().find(static_cast<unsigned>(q));
    if (it == conway_table().end())
        throw std::invalid_argument("no built-in modulus for q = " + std::to_string(q) +
                                    "; supply one explicitly");
    return make(p, n, it->second);
}

namespace {

std::pair<unsigned, unsigned> factor_prime_power(unsigned q) {
    if (q >= 2) {
        for (unsigned p = 2; p <= q; ++p) {
            if (!is_prime(p) || q % p != 0)
                continue;
            unsigned n = 0;
            unsigned rest = q;
            while (rest % p == 0) {
                rest /= p;
                ++n;
            }
            if (rest != 1)
                break;
            return {p, n};
        }
    }
    throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
}

} // namespace

FieldPtr Field::from_order(unsigned q) {
    auto [p, n] = factor_prime_power(q);
    return make(p, n);
}

FieldPtr Field::from_order(unsigned q, const std::vector<std::uint16_t>& modulus) {
    auto [p, n] = factor_prime_power(q);
    return make(p, n, modulus);
}

FieldPtr Field::parse_spec(std::string_view text) {
    std::string s(text);
    std::istringstream in(s);
    unsigned p = 0, n = 0;
    char comma1 = 0, comma2 = 0, bracket = 0;
    if (!(in >> p >> comma1 >> n >> comma2 >> bracket) || comma1 != ',' || comma2 != ',' ||
        bracket != '[')
        throw std::invalid_argument("bad field spec, expected p,n,[c0,...,cn]: " + s);
    std::vector<std::uint16_t> coeffs;
    while (true) {
        unsigned c = 0;
        char sep = 0;
        if (!(in >> c >> sep))
            throw std::invalid_argument("bad field spec coefficient list: " + s);
        coeffs.push_back(static_cast<std::uint16_t>(c));
        if (sep == ']')
            break;
        if (sep != ',')
            throw std::invalid_argument("bad separator in field spec: " + s);
    }
    return make(p, n, std::move(coeffs));
}

std::string Field::spec_string() const {
    std::ostringstream out;
    out << p_ << ',' << n_ << ",[";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i)
            out << ',';
        out << modulus_[i];
    }
    out << ']';
    return out.str();
}

bool Field::same_field(const Field& other) const {
    if (this == &other)
        return true;
    return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
}

void Field::require_code(std::uint16_t c) const {
    if (c >= q_)
        throw std::invalid_argument("element code " + std::to_string(c) + " out of range for q = " +
                                    std::to_string(q_));
}

std::uint16_t Field::add_generic(std::uint16_t a, std::uint16_t b) const {
    if (n_ == 1)
        return static_cast<std::uint16_t>((a + b) % p_);
    auto da = code_digits(a, p_, n_);
    auto db = code_digits(b, p_, n_);
    for (unsigned i = 0; i < n_; ++i)
        da[i] = static_cast<std::uint16_t>((da[i] + db[i]) % p_);
    return digits_code(da, p_);
}

std::uint16_t Field::mul_generic(std::uint16_t a, std::uint16_t b) const {
    if (n_ == 1)
        return static_cast<std::uint16_t>((static_cast<std::uint32_t>(a) * b) % p_);
    auto da = code_digits(a, p_, n_);
    auto db = code_digits(b, p_, n_);
    Poly prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (da[i] == 0)
            continue;
        for (unsigned j = 0; j < n_; ++j)
            prod[i + j] = static_cast<std::uint16_t>((prod[i + j] + da[i] * db[j]) % p_);
    }
    Poly rem = poly_mod(std::move(prod), modulus_, p_);
    rem.resize(n_, 0);
    return digits_code(rem, p_);
}

std::uint16_t Field::add(std::uint16_t a, std::uint16_t b) const {
    if (has_tables())
        return add_table_[a * q_ + b];
    require_code(a);
    require_code(b);
    return add_generic(a, b);
}

std::uint16_t Field::neg(std::uint16_t a) const {
    if (has_tables())
        return neg_table_[a];
    require_code(a);
    auto d = code_digits(a, p_, n_);
    for (auto& c : d)
        c = static_cast<std::uint16_t>((p_ - c) % p_);
    return digits_code(d, p_);
}

std::uint16_t Field::sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }

std::uint16_t Field::mul(std::uint16_t a, std::uint16_t b) const {
    if (has_tables())
        return mul_table_[a * row_stride_ + b];
    require_code(a);
    require_code(b);
    return mul_generic(a, b);
}

std::uint16_t Field::pow(std::uint16_t a, std::uint64_t e) const {
    require_code(a);
    std::uint16_t result = 1;
    std::uint16_t base = a;
    while (e > 0) {
        if (e & 1)
            result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

std::uint16_t Field::inv(std::uint16_t a) const {
    if (a == 0)
        throw std::domain_error("division by zero in GF(" + std::to_string(q_) + ")");
    if (has_tables())
        return inv_table_[a];
    return pow(a, q_ - 2);
}

FieldElement Field::element(std::uint16_t code) const {
    require_code(code);
    return {code, this};
}

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (unsigned c = 0; c < q_; ++c)
        out.emplace_back(static_cast<std::uint16_t>(c), this);
    return out;
}

unsigned Field::multiplicative_order(std::uint16_t a) const {
    if (a == 0)
        throw std::domain_error("zero has no multiplicative order");
    std::uint16_t x = a;
    unsigned k = 1;
    while (x != 1) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

void Field::build_tables() {
    if (q_ > 256)
        return;
    row_stride_ = std::max<std::size_t>(q_, 16); // padded rows for the 16-byte SIMD LUT loads
    add_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_table_.assign(static_cast<std::size_t>(q_) * row_stride_, 0);
    neg_table_.assign(q_, 0);
    inv_table_.assign(q_, 0);
    pow_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            add_table_[a * q_ + b] = static_cast<std::uint8_t>(
                add_generic(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)));
            mul_table_[a * row_stride_ + b] = static_cast<std::uint8_t>(
                mul_generic(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)));
        }
    }
    for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
            if (add_table_[a * q_ + b] == 0)
                neg_table_[a] = static_cast<std::uint8_t>(b);
            if (a != 0 && mul_table_[a * row_stride_ + b] == 1)
                inv_table_[a] = static_cast<std::uint8_t>(b);
        }
        std::uint8_t acc = 1;
        for (unsigned e = 0; e < q_; ++e) {
            pow_table_[a * q_ + e] = acc;
            acc = mul_table_[acc * row_stride_ + a];
        }
    }
}

kernels::FieldOps Field::ops() const {
    if (!has_tables())
        throw std::invalid_argument("byte kernels require q <= 256");
    kernels::FieldOps ops;
    ops.p = static_cast<std::uint8_t>(p_);
    ops.q = static_cast<std::uint16_t>(q_);
    if (p_ == 2)
        ops.rule = kernels::AddRule::Xor;
    else if (n_ == 1)
        ops.rule = kernels::AddRule::ModP;
    else
        ops.rule = kernels::AddRule::Table;
    ops.add_table = add_table_.data();
    return ops;
}

std::span<const std::uint8_t> Field::inverse_vandermonde() const {
    if (!has_tables())
        throw std::invalid_argument("interpolation requires q <= 256");
    std::call_once(vinv_once_, [this] {
        const unsigned q = q_;
        // Gauss-Jordan on [V | I] over the field.
        std::vector<std::uint16_t> a(static_cast<std::size_t>(q) * 2 * q, 0);
        auto at = [&](unsigned r, unsigned c) -> std::uint16_t& { return a[r * 2 * q + c]; };
        for (unsigned x = 0; x < q; ++x) {
            for (unsigned e = 0; e < q; ++e)
                at(x, e) = pow_table_[x * q + e];
            at(x, q + x) = 1;
        }
        for (unsigned col = 0; col < q; ++col) {
            unsigned pivot = col;
            while (pivot < q && at(pivot, col) == 0)
                ++pivot;
            if (pivot == q)
                throw std::logic_error("Vandermonde matrix is singular");
            for (unsigned c = 0; c < 2 * q; ++c)
                std::swap(at(col, c), at(pivot, c));
            const std::uint16_t scale = inv(at(col, col));
            for (unsigned c = 0; c < 2 * q; ++c)
                at(col, c) = mul(at(col, c), scale);
            for (unsigned r = 0; r < q; ++r) {
                if (r == col || at(r, col) == 0)
                    continue;
                const std::uint16_t factor = at(r, col);
                for (unsigned c = 0; c < 2 * q; ++c)
                    at(r, c) = sub(at(r, c), mul(factor, at(col, c)));
            }
        }
        vinv_.assign(static_cast<std::size_t>(q) * q, 0);
        for (unsigned r = 0; r < q; ++r)
            for (unsigned c = 0; c < q; ++c)
                vinv_[r * q + c] = static_cast<std::uint8_t>(at(r, q + c));
    });
    return vinv_;
}

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field == nullptr || b.field == nullptr)
        throw FieldMismatchError("field element without a field");
    if (!a.field->same_field(*b.field))
        throw FieldMismatchError("elements of incompatible fields: GF(" +
                                 std::to_string(a.field->q()) + ") vs GF(" +
                                 std::to_string(b.field->q()) + ")");
}

FieldElement FieldElement::operator+(FieldElement other) const {
    require_same_field(*this, other);
    return {field->add(code, other.code), field};
}

FieldElement FieldElement::operator-(FieldElement other) const {
    require_same_field(*this, other);
    return {field->sub(code, other.code), field};
}

FieldElement FieldElement::operator*(FieldElement other) const {
    require_same_field(*this, other);
    return {field->mul(code, other.code), field};
}

FieldElement FieldElement::operator/(FieldElement other) const {
    require_same_field(*this, other);
    return {field->mul(code, field->inv(other.code)), field};
}

FieldElement FieldElement::operator-() const { return {field->neg(code), field}; }

bool FieldElement::operator==(FieldElement other) const {
    require_same_field(*this, other);
    return code == other.code;
}

} // namespace grm
