#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grm/code.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace grm;

namespace {

FieldPtr F(unsigned q) { return Field::from_order(q); }

GrmParams params_of(unsigned q, unsigned m, unsigned r) {
    return GrmParams::make(F(q), m, r);
}

ReducedPoly random_code_poly(std::mt19937_64& rng, const GrmParams& params) {
    const auto basis = monomial_basis(params);
    std::uniform_int_distribution<unsigned> coef(0, params.q() - 1);
    ReducedPoly p = ReducedPoly::zero(params.field, params.m);
    for (const auto& e : basis)
        p = p + ReducedPoly::term(params.field, params.m, e,
                                  static_cast<std::uint16_t>(coef(rng)));
    return p;
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
        }
    }
}

std::vector<std::vector<std::uint8_t>> tables_of(const std::vector<Codeword>& words) {
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(words.size());
    for (const auto& w : words)
        out.push_back(w.table.values);
    return out;
}

} // namespace

TEST_CASE("order decomposition") {
    CHECK(decompose_order(3, 3) == std::pair<unsigned, unsigned>{1, 1});
    CHECK(decompose_order(2, 2) == std::pair<unsigned, unsigned>{2, 0});
    CHECK(decompose_order(0, 5) == std::pair<unsigned, unsigned>{0, 0});
    CHECK(decompose_order(4, 3) == std::pair<unsigned, unsigned>{2, 0});
}

TEST_CASE("minimum weight formula") {
    CHECK(params_of(3, 2, 3).w_min == 2);
    CHECK(params_of(2, 4, 2).w_min == 4);
    CHECK(params_of(3, 2, 0).w_min == 9); // nonzero constants have full support
    CHECK(params_of(2, 3, 3).w_min == 1); // r = m(q-1): delta functions
}

TEST_CASE("code dimension") {
    CHECK(params_of(2, 3, 1).dim == 4);
    CHECK(params_of(3, 2, 2).dim == 6);
    CHECK(params_of(3, 2, 4).dim == 9); // r = m(q-1): all functions
    CHECK(params_of(2, 4, 2).dim == 11);
    CHECK(monomial_basis(params_of(3, 2, 2)).size() == 6);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(params_of(3, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(GrmParams::make(F(3), 0, 1), std::invalid_argument);
}

TEST_CASE("membership") {
    auto params2 = params_of(2, 2, 2);
    auto params1 = params_of(2, 2, 1);
    auto x1x2 = ReducedPoly::parse(F(2), 2, "x1*x2").to_table();
    CHECK(contains(params2, x1x2));
    CHECK_FALSE(contains(params1, x1x2));
    CHECK(contains(params1, EvaluationTable::zero(F(2), 2)));
    CHECK_THROWS_AS(contains(params1, EvaluationTable::zero(F(2), 3)),
                    std::invalid_argument);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto params = params_of(3, 2, 2);
        CHECK(contains(params, random_code_poly(rng, params).to_table()));
    }
}

TEST_CASE("canonical minimum-weight words") {
    SUBCASE("q=3, m=2, r=3") {
        auto params = params_of(3, 2, 3);
        const std::uint16_t b[] = {2};
        auto w = canonical_min_word(params, 1, b);
        CHECK(w.weight == 2);
        CHECK(w.support == std::vector<std::uint32_t>{0, 1}); // (0,0) and (0,1)
    }
    SUBCASE("t = 0, s = 0 gives the constants") {
        auto params = params_of(3, 2, 0);
        auto w = canonical_min_word(params, 2, {});
        CHECK(w.weight == 9);
        for (auto v : w.table.values)
            CHECK(v == 2);
    }
    SUBCASE("q=2, m=3, r=1: support is the hyperplane x1 = 0") {
        auto params = params_of(2, 3, 1);
        auto w = canonical_min_word(params, 1, {});
        CHECK(w.weight == 4);
        CHECK(w.support == std::vector<std::uint32_t>{0, 1, 2, 3});
    }
    SUBCASE("bad arguments") {
        auto params = params_of(3, 2, 3);
        const std::uint16_t dup[] = {1};
        CHECK_THROWS_AS(canonical_min_word(params, 0, dup), std::invalid_argument);
        const std::uint16_t two[] = {1, 1};
        auto params2 = params_of(3, 2, 2); // s = 0, wrong b length
        CHECK_THROWS_AS(canonical_min_word(params2, 1, two), std::invalid_argument);
        auto params3 = params_of(3, 1, 3); // wrong count and t = m
        const std::uint16_t one[] = {1};
        CHECK_THROWS_AS(canonical_min_word(params3, 1, one), std::invalid_argument);
        auto dup2 = params_of(3, 2, 4); // r = m(q-1): t = m
        const std::uint16_t bb[] = {0, 1};
        CHECK_THROWS_AS(canonical_min_word(dup2, 1, bb), std::invalid_argument);
    }
}

TEST_CASE("exhaustive enumeration of R_2(1,3) finds the 14 affine words") {
    auto params = params_of(2, 3, 1);
    auto words = enumerate_min_words(params, {});
    CHECK(words.size() == 14);

    // independent oracle: evaluate all 16 affine functions with bit arithmetic
    std::vector<std::vector<std::uint8_t>> expected;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<std::uint8_t> table(8);
        unsigned w = 0;
        for (unsigned x = 0; x < 8; ++x) {
            const unsigned x1 = (x >> 2) & 1, x2 = (x >> 1) & 1, x3 = x & 1;
            const unsigned v = (mask & 1) ^ (((mask >> 1) & 1) & x1) ^
                               (((mask >> 2) & 1) & x2) ^ (((mask >> 3) & 1) & x3);
            table[x] = static_cast<std::uint8_t>(v);
            w += v;
        }
        if (w == 4)
            expected.push_back(table);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(expected.size() == 14);
    CHECK(tables_of(words) == expected);

    for (const auto& w : words) {
        CHECK(w.weight == params.w_min);
        CHECK(contains(params, w.table));
    }
}

TEST_CASE("exhaustive and orbit enumeration agree") {
    for (auto [q, m, r] : {std::tuple<unsigned, unsigned, unsigned>{2, 3, 1},
                           {2, 3, 2},
                           {3, 2, 1},
                           {3, 2, 2},
                           {3, 2, 3},
                           {2, 4, 2},
                           {4, 2, 1}}) {
        CAPTURE(q);
        CAPTURE(m);
        CAPTURE(r);
        auto params = params_of(q, m, r);
        auto exhaustive = enumerate_min_words(params, {});
        EnumOptions orbit_opts;
        orbit_opts.mode = EnumMode::Orbit;
        auto orbit = enumerate_min_words(params, orbit_opts);
        CHECK(tables_of(exhaustive) == tables_of(orbit));
    }
}

TEST_CASE("parallel enumeration matches single-threaded") {
    auto params = params_of(3, 2, 2);
    EnumOptions serial;
    EnumOptions parallel;
    parallel.jobs = 4;
    CHECK(tables_of(enumerate_min_words(params, serial)) ==
          tables_of(enumerate_min_words(params, parallel)));
}

TEST_CASE("exhaustive enumeration respects the budget") {
    auto params = params_of(5, 4, 7);
    EnumOptions opts;
    CHECK_THROWS_AS(enumerate_min_words(params, opts), BudgetExceededError);
    EnumOptions orbit_opts;
    orbit_opts.mode = EnumMode::Orbit;
    CHECK_THROWS_AS(enumerate_min_words(params, orbit_opts), BudgetExceededError);
}

TEST_CASE("affine orbits") {
    SUBCASE("constants are fixed points") {
        auto params = params_of(3, 2, 0);
        auto c = canonical_min_word(params, 1, {});
        auto orbit = affine_orbit(c, params);
        REQUIRE(orbit.size() == 1);
        CHECK(orbit[0].table == c.table);
    }
    SUBCASE("the orbit of x1 in R_2(1,2) is every weight-2 affine word") {
        auto params = params_of(2, 2, 1);
        auto f = Codeword::from_table(ReducedPoly::parse(F(2), 2, "x1").to_table());
        auto orbit = affine_orbit(f, params);
        CHECK(orbit.size() == 6);
        auto words = enumerate_min_words(params, {});
        CHECK(tables_of(orbit) == tables_of(words));
        CHECK(affine_group_order(2, 2) % orbit.size() == 0); // orbit-stabilizer
    }
    SUBCASE("non-members are rejected") {
        auto params = params_of(2, 2, 1);
        auto bad = Codeword::from_table(ReducedPoly::parse(F(2), 2, "x1*x2").to_table());
        CHECK_THROWS_AS(affine_orbit(bad, params), std::invalid_argument);
    }
}

TEST_CASE("linearity and affine invariance") {
    std::mt19937_64 rng(42);
    for (auto [q, m, r] : {std::tuple<unsigned, unsigned, unsigned>{2, 3, 2}, {3, 2, 2}}) {
        auto params = params_of(q, m, r);
        for (int trial = 0; trial < 40; ++trial) {
            auto a = random_code_poly(rng, params);
            auto b = random_code_poly(rng, params);
            CHECK(contains(params, (a + b).to_table())); // sums stay in the code
            std::uniform_int_distribution<unsigned> cdist(1, q - 1);
            const auto c = static_cast<std::uint16_t>(cdist(rng));
            CHECK(a.scaled(c).to_table().weight() == a.to_table().weight());

            auto tau = random_map(rng, params.field, m);
            auto composed = affine_substitute(a, tau);
            CHECK(contains(params, composed.to_table()));
            CHECK(composed.to_table().weight() == a.to_table().weight());
        }
    }
}
