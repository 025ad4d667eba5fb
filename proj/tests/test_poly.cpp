#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grm/poly.hpp"

#include <random>

using namespace grm;

namespace {

FieldPtr F(unsigned q) { return Field::from_order(q); }

ReducedPoly P(const FieldPtr& f, unsigned m, const char* text) {
    return ReducedPoly::parse(f, m, text);
}

ReducedPoly random_poly(std::mt19937_64& rng, const FieldPtr& f, unsigned m, unsigned max_terms) {
    std::uniform_int_distribution<unsigned> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> coef(0, f->q() - 1);
    std::uniform_int_distribution<unsigned> expo(0, f->q() - 1);
    ReducedPoly p = ReducedPoly::zero(f, m);
    const unsigned k = nterms(rng);
    for (unsigned t = 0; t < k; ++t) {
        Monomial e(m);
        for (auto& x : e)
            x = static_cast<std::uint16_t>(expo(rng));
        p = p + ReducedPoly::term(f, m, e, static_cast<std::uint16_t>(coef(rng)));
    }
    return p;
}

EvaluationTable random_table(std::mt19937_64& rng, const FieldPtr& f, unsigned m) {
    std::uniform_int_distribution<unsigned> coef(0, f->q() - 1);
    auto t = EvaluationTable::zero(f, m);
    for (auto& v : t.values)
        v = static_cast<std::uint8_t>(coef(rng));
    return t;
}

AffineMap random_map(std::mt19937_64& rng, const FieldPtr& f, unsigned m) {
    std::uniform_int_distribution<unsigned> coef(0, f->q() - 1);
    while (true) {
        std::vector<std::uint8_t> mat(m * m), tr(m);
        for (auto& v : mat)
            v = static_cast<std::uint8_t>(coef(rng));
        for (auto& v : tr)
            v = static_cast<std::uint8_t>(coef(rng));
        try {
            return AffineMap(f, std::move(mat), std::move(tr));
        } catch (const std::invalid_argument&) {
            continue; // singular draw
        }
    }
}

// Evaluation by the plain definition, independent of the table transforms.
std::uint16_t eval_direct(const ReducedPoly& p, const Point& pt) {
    const Field& f = *p.field();
    std::uint16_t acc = 0;
    for (const auto& [e, c] : p.terms()) {
        std::uint16_t v = c;
        for (unsigned i = 0; i < p.m(); ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                v = f.mul(v, pt[i]);
        acc = f.add(acc, v);
    }
    return acc;
}

} // namespace

TEST_CASE("multiplication reduces exponents by X^q = X") {
    auto f2 = F(2);
    CHECK(P(f2, 1, "x1") * P(f2, 1, "x1") == P(f2, 1, "x1"));
    auto f3 = F(3);
    CHECK(P(f3, 1, "x1^2") * P(f3, 1, "x1^2") == P(f3, 1, "x1^2"));
    CHECK(P(f2, 2, "x1 + x2") * P(f2, 2, "x1") == P(f2, 2, "x1 + x1*x2"));
}

TEST_CASE("evaluation") {
    auto f3 = F(3);
    auto p = P(f3, 1, "x1^2 + 2"); // x1^2 - 1
    CHECK(p.eval(std::vector<std::uint8_t>{1}) == 0);
    CHECK(P(f3, 2, "2").eval(std::vector<std::uint8_t>{1, 2}) == 2);
    auto f2 = F(2);
    CHECK(P(f2, 2, "x1*x2").eval(std::vector<std::uint8_t>{1, 1}) == 1);
}

TEST_CASE("tables of simple polynomials") {
    auto f2 = F(2);
    CHECK(P(f2, 1, "x1").to_table().to_string() == "0,1");
    CHECK(ReducedPoly::zero(f2, 2).to_table().weight() == 0);
    auto f3 = F(3);
    CHECK(P(f3, 1, "1 + 2*x1^2").to_table().to_string() == "1,0,0"); // delta at 0
}

TEST_CASE("table agrees with pointwise evaluation") {
    std::mt19937_64 rng(21);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto f = F(q);
        for (unsigned m : {1u, 2u, 3u}) {
            auto p = random_poly(rng, f, m, 6);
            auto t = p.to_table();
            for (std::uint32_t i = 0; i < t.values.size(); ++i)
                CHECK(t.values[i] == eval_direct(p, point_at(*f, m, i)));
        }
    }
}

TEST_CASE("interpolation inverts the table map") {
    auto f3 = F(3);
    auto p = ReducedPoly::interpolate(EvaluationTable::parse(f3, 1, "1,0,0"));
    CHECK(p.to_string() == "1 + 2*x1^2");
    CHECK(ReducedPoly::interpolate(EvaluationTable::zero(f3, 2)).is_zero());

    std::mt19937_64 rng(22);
    auto f2 = F(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto t = random_table(rng, f2, 3);
        CHECK(ReducedPoly::interpolate(t).to_table() == t);
    }
    // exhaustive for q=2, m <= 3: both roundtrip directions
    for (unsigned m : {1u, 2u, 3u}) {
        const std::uint32_t n = 1u << m;
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            auto t = EvaluationTable::zero(f2, m);
            for (std::uint32_t i = 0; i < n; ++i)
                t.values[i] = (bits >> i) & 1;
            auto p = ReducedPoly::interpolate(t);
            CHECK(p.to_table() == t);
            CHECK(ReducedPoly::interpolate(p.to_table()) == p);
        }
    }
}

TEST_CASE("degree") {
    auto f3 = F(3);
    // delta at the origin in two variables has degree m(q-1) = 4
    auto delta = P(f3, 2, "1 + 2*x1^2") * P(f3, 2, "1 + 2*x2^2");
    CHECK(delta.degree() == 4);
    CHECK(P(f3, 2, "2").degree() == 0);
    CHECK(P(F(2), 2, "x1*x2 + x1").degree() == 2);
    CHECK_FALSE(ReducedPoly::zero(f3, 2).degree().has_value());
    CHECK(ReducedPoly::zero(f3, 2).degree_in(0) == -1);
}

TEST_CASE("multiplication is the pointwise product of tables") {
    std::mt19937_64 rng(23);
    for (unsigned q : {2u, 3u, 4u}) {
        auto f = F(q);
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_poly(rng, f, 2, 5);
            auto b = random_poly(rng, f, 2, 5);
            CHECK((a * b).to_table() == pointwise_product(a.to_table(), b.to_table()));
            CHECK((a + b).to_table() == pointwise_sum(a.to_table(), b.to_table()));
        }
    }
}

TEST_CASE("divide_linear") {
    auto f3 = F(3);
    // x1^2 - 1 = (x1 - 1)(x1 + 1)
    CHECK(divide_linear(P(f3, 1, "x1^2 + 2"), 0, 1) == P(f3, 1, "x1 + 1"));
    auto f2 = F(2);
    CHECK(divide_linear(P(f2, 2, "x1*x2"), 0, 0) == P(f2, 2, "x2"));

    SUBCASE("construct-then-divide returns the constructed factor") {
        std::mt19937_64 rng(24);
        for (unsigned q : {2u, 3u, 4u, 5u}) {
            auto f = F(q);
            std::uniform_int_distribution<unsigned> adist(0, q - 1);
            for (int trial = 0; trial < 40; ++trial) {
                const unsigned m = 1 + (trial % 3);
                const unsigned axis = trial % m;
                auto factor = random_poly(rng, f, m, 5);
                {
                    // clamp the axis degree to q-2 so the product is reduced
                    ReducedPoly clamped = ReducedPoly::zero(f, m);
                    for (const auto& [e, c] : factor.terms()) {
                        Monomial e2 = e;
                        e2[axis] = static_cast<std::uint16_t>(
                            std::min<unsigned>(e2[axis], f->q() - 2));
                        clamped = clamped + ReducedPoly::term(f, m, e2, c);
                    }
                    factor = clamped;
                }
                const auto a = static_cast<std::uint16_t>(adist(rng));
                Monomial xe(m, 0);
                xe[axis] = 1;
                auto linear = ReducedPoly::term(f, m, xe, 1) -
                              ReducedPoly::constant(f, m, a);
                auto product = linear * factor;
                auto quotient = divide_linear(product, axis, a);
                CHECK(quotient == factor);
                CHECK(linear * quotient == product);
                if (!product.is_zero())
                    CHECK(quotient.degree_in(axis) <= product.degree_in(axis) - 1);
            }
        }
    }

    SUBCASE("non-vanishing input is rejected with a witness") {
        auto p = P(f3, 2, "x1 + x2");
        CHECK_THROWS_AS(divide_linear(p, 0, 0), VanishingError);
        try {
            divide_linear(p, 0, 0);
        } catch (const VanishingError& e) {
            REQUIRE(e.witness.size() == 2);
            CHECK(e.witness[0] == 0);
            CHECK(p.eval(e.witness) != 0);
        }
    }
}

TEST_CASE("complement_factor") {
    auto f3 = F(3);
    // (1 - x1^2) * x2 vanishes unless x1 = 0; the factor is x2
    auto p = P(f3, 2, "1 + 2*x1^2") * P(f3, 2, "x2");
    auto q = complement_factor(p, 0, 0);
    CHECK(q == P(f3, 1, "x1")); // old x2 becomes variable 1
    CHECK(P(f3, 2, "1 + 2*x1^2") * insert_axis(q, 0) == p);

    CHECK(complement_factor(ReducedPoly::zero(f3, 2), 0, 1).is_zero());

    SUBCASE("delta polynomials factor coordinate-wise") {
        for (unsigned q_ : {2u, 3u, 4u}) {
            auto f = F(q_);
            const unsigned m = 3;
            const Point a = {static_cast<std::uint8_t>(1 % q_), 0,
                             static_cast<std::uint8_t>(q_ - 1)};
            auto delta = ReducedPoly::constant(f, m, 1);
            for (unsigned i = 0; i < m; ++i) {
                // 1 - (x_i - a_i)^(q-1)
                Monomial xe(m, 0);
                xe[i] = 1;
                auto shifted = ReducedPoly::term(f, m, xe, 1) -
                               ReducedPoly::constant(f, m, a[i]);
                auto power = ReducedPoly::constant(f, m, 1);
                for (unsigned k = 0; k < q_ - 1; ++k)
                    power = power * shifted;
                delta = delta * (ReducedPoly::constant(f, m, 1) - power);
            }
            REQUIRE(delta.to_table().weight() == 1);
            auto rest = complement_factor(delta, 0, a[0]);
            REQUIRE(rest.m() == m - 1);
            auto table = rest.to_table();
            CHECK(table.weight() == 1);
            CHECK(table.values[point_index(*f, std::vector<std::uint8_t>{a[1], a[2]})] == 1);
        }
    }

    SUBCASE("witness on failure") {
        CHECK_THROWS_AS(complement_factor(P(f3, 2, "x1 + x2"), 0, 0), VanishingError);
    }
}

TEST_CASE("affine substitution") {
    auto f2 = F(2);
    // x1 composed with x -> x + e1 is x1 + 1
    AffineMap shift(f2, {1, 0, 0, 1}, {1, 0});
    CHECK(affine_substitute(P(f2, 2, "x1"), shift) == P(f2, 2, "x1 + 1"));
    auto p = P(f2, 2, "x1*x2 + x2");
    CHECK(affine_substitute(p, AffineMap::identity(f2, 2)) == p);

    SUBCASE("degree and value multiset are preserved") {
        std::mt19937_64 rng(25);
        for (unsigned q : {2u, 3u, 4u}) {
            auto f = F(q);
            for (unsigned m : {1u, 2u, 3u}) {
                for (int trial = 0; trial < 100; ++trial) {
                    auto poly = random_poly(rng, f, m, 5);
                    auto tau = random_map(rng, f, m);
                    auto composed = affine_substitute(poly, tau);
                    CHECK(composed.degree() == poly.degree());
                    auto ta = poly.to_table().values;
                    auto tb = composed.to_table().values;
                    std::sort(ta.begin(), ta.end());
                    std::sort(tb.begin(), tb.end());
                    CHECK(ta == tb);
                }
            }
        }
    }
}

TEST_CASE("polynomial text parsing") {
    auto f3 = F(3);
    CHECK(P(f3, 3, "2*x1^2*x3 + x2 + 1").to_string() == "1 + x2 + 2*x1^2*x3");
    CHECK(P(f3, 1, "0").is_zero());
    CHECK(P(f3, 2, " x1 + 2 ") == P(f3, 2, "2+x1"));
    CHECK(P(f3, 1, "2*x1 + 2*x1").to_string() == "x1"); // coefficients accumulate mod 3

    CHECK_THROWS_AS(P(f3, 1, "3*x1"), std::invalid_argument);  // coefficient >= q
    CHECK_THROWS_AS(P(f3, 1, "x1^3"), std::invalid_argument);  // exponent > q-1
    CHECK_THROWS_AS(P(f3, 1, "x2"), std::invalid_argument);    // variable out of range
    CHECK_THROWS_AS(P(f3, 1, "x1*x1"), std::invalid_argument); // repeated variable
    CHECK_THROWS_AS(P(f3, 1, "2*"), std::invalid_argument);
    CHECK_THROWS_AS(P(f3, 1, "x1 +"), std::invalid_argument);
    CHECK_THROWS_AS(P(f3, 1, ""), std::invalid_argument);

    SUBCASE("print-parse roundtrip") {
        std::mt19937_64 rng(26);
        for (unsigned q : {2u, 3u, 5u, 9u}) {
            auto f = F(q);
            for (int trial = 0; trial < 50; ++trial) {
                auto p = random_poly(rng, f, 3, 6);
                CHECK(ReducedPoly::parse(f, 3, p.to_string()) == p);
            }
        }
    }
}

TEST_CASE("table text parsing") {
    auto f3 = F(3);
    auto t = EvaluationTable::parse(f3, 1, "1,0,2");
    CHECK(t.to_string() == "1,0,2");
    CHECK(t.weight() == 2);
    CHECK(t.support() == std::vector<std::uint32_t>{0, 2});
    CHECK_THROWS_AS(EvaluationTable::parse(f3, 1, "1,0"), std::invalid_argument);
    CHECK_THROWS_AS(EvaluationTable::parse(f3, 1, "1,0,3"), std::invalid_argument);
    CHECK_THROWS_AS(EvaluationTable::parse(f3, 1, "1,0,2,0"), std::invalid_argument);
}

TEST_CASE("mismatched operands are rejected") {
    auto a = P(F(2), 2, "x1");
    auto b = P(F(3), 2, "x1");
    CHECK_THROWS_AS(a * b, FieldMismatchError);
    CHECK_THROWS_AS(a + P(F(2), 3, "x1"), FieldMismatchError);
}
