#include "grm/code.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <thread>
#include <unordered_set>

#include "linalg.hpp"

namespace grm {

namespace {

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (v > cap / base)
            return cap;
        v *= base;
    }
    return v;
}

} // namespace

std::pair<unsigned, unsigned> decompose_order(unsigned r, unsigned q) {
    if (q < 2)
        throw std::invalid_argument("field order must be >= 2");
    const unsigned t = r / (q - 1);
    const unsigned s = r % (q - 1);
    return {t, s};
}

std::uint64_t monomial_count(unsigned q, unsigned m, unsigned r) {
    std::vector<std::uint64_t> counts(r + 1, 0);
    counts[0] = 1;
    for (unsigned var = 0; var < m; ++var) {
        std::vector<std::uint64_t> next(r + 1, 0);
        for (unsigned d = 0; d <= r; ++d) {
            if (counts[d] == 0)
                continue;
            for (unsigned e = 0; e <= std::min(q - 1, r - d); ++e)
                next[d + e] += counts[d];
        }
        counts = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto c : counts)
        total += c;
    return total;
}

GrmParams GrmParams::make(FieldPtr field, unsigned m, unsigned r) {
    if (!field->has_tables())
        throw std::invalid_argument("codes require q <= 256");
    if (m < 1)
        throw std::invalid_argument("need at least one variable");
    const unsigned q = field->q();
    if (r > m * (q - 1))
        throw std::invalid_argument("order r must satisfy 0 <= r <= m(q-1)");
    domain_size(*field, m); // validates the point-index space
    GrmParams params;
    params.field = std::move(field);
    params.m = m;
    params.r = r;
    std::tie(params.t, params.s) = decompose_order(r, q);
    params.dim = monomial_count(q, m, r);
    params.w_min = min_weight(params);
    return params;
}

std::uint64_t min_weight(const GrmParams& params) {
    const unsigned q = params.q();
    if (params.t == params.m)
        return 1; // r = m(q-1): the delta functions
    std::uint64_t w = q - params.s;
    for (unsigned i = 0; i < params.m - params.t - 1; ++i)
        w *= q;
    return w;
}

std::vector<Monomial> monomial_basis(const GrmParams& params) {
    std::vector<Monomial> basis;
    Monomial current(params.m, 0);
    const unsigned q = params.q();
    auto rec = [&](auto&& self, unsigned axis, unsigned used) -> void {
        if (axis == params.m) {
            basis.push_back(current);
            return;
        }
        for (unsigned e = 0; e <= std::min(q - 1, params.r - used); ++e) {
            current[axis] = static_cast<std::uint16_t>(e);
            self(self, axis + 1, used + e);
        }
        current[axis] = 0;
    };
    rec(rec, 0, 0);
    std::sort(basis.begin(), basis.end(), GrlexLess{});
    return basis;
}

bool contains(const GrmParams& params, const EvaluationTable& table) {
    if (table.m != params.m || !table.field->same_field(*params.field))
        throw std::invalid_argument("table does not match the code domain");
    const auto degree = ReducedPoly::interpolate(table).degree();
    return !degree.has_value() || *degree <= static_cast<int>(params.r);
}

Codeword Codeword::from_table(EvaluationTable t) {
    Codeword w;
    w.weight = t.weight();
    w.support = t.support();
    w.table = std::move(t);
    return w;
}

PointSet Codeword::support_set() const {
    return PointSet::from_indices(table.field, table.m, support);
}

std::size_t weight(const EvaluationTable& table) { return table.weight(); }

Codeword canonical_min_word(const GrmParams& params, std::uint16_t c,
                            std::span<const std::uint16_t> b) {
    const unsigned q = params.q();
    if (c == 0 || c >= q)
        throw std::invalid_argument("leading scalar must be a nonzero element");
    if (params.t > params.m - 1)
        throw std::invalid_argument("canonical words need t <= m-1");
    if (b.size() != params.s)
        throw std::invalid_argument("expected exactly s excluded values");
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] >= q)
            throw std::invalid_argument("excluded value out of range");
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (b[i] == b[j])
                throw std::invalid_argument("excluded values must be distinct");
    }

    ReducedPoly poly = ReducedPoly::constant(params.field, params.m, c);
    for (unsigned i = 0; i < params.t; ++i) {
        Monomial e(params.m, 0);
        e[i] = static_cast<std::uint16_t>(q - 1);
        poly = poly * (ReducedPoly::term(params.field, params.m, e, 1) -
                       ReducedPoly::constant(params.field, params.m, 1));
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        Monomial e(params.m, 0);
        e[params.t] = 1;
        poly = poly * (ReducedPoly::term(params.field, params.m, e, 1) -
                       ReducedPoly::constant(params.field, params.m, b[j]));
    }
    Codeword word = Codeword::from_table(poly.to_table());
    if (word.weight != params.w_min)
        throw std::logic_error("canonical word does not have the minimum weight");
    return word;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Closure of the seed tables under every affine permutation, deduplicated by
// the serialized table.
std::vector<Codeword> orbit_closure(const GrmParams& params,
                                    const std::vector<std::vector<std::uint8_t>>& seeds,
                                    std::uint64_t budget) {
    const Field& field = *params.field;
    const unsigned q = field.q();
    const unsigned m = params.m;
    const std::uint64_t group = affine_group_order(q, m);
    if (group > budget)
        throw BudgetExceededError("affine group order " + std::to_string(group) +
                                  " exceeds budget " + std::to_string(budget));
    const std::uint32_t total = static_cast<std::uint32_t>(domain_size(field, m));

    // translation permutations: trans[b][j] = index(point(j) + point(b))
    std::vector<std::vector<std::uint32_t>> trans(total, std::vector<std::uint32_t>(total));
    for (std::uint32_t b = 0; b < total; ++b) {
        const Point pb = point_at(field, m, b);
        for (std::uint32_t j = 0; j < total; ++j) {
            Point pj = point_at(field, m, j);
            for (unsigned i = 0; i < m; ++i)
                pj[i] = static_cast<std::uint8_t>(field.add(pj[i], pb[i]));
            trans[b][j] = point_index(field, pj);
        }
    }

    std::unordered_set<std::string> seen;
    std::vector<std::uint8_t> matrix(static_cast<std::size_t>(m) * m, 0);
    std::vector<std::uint32_t> composed(total);
    std::string key(total, '\0');
    const std::uint64_t matrices =
        pow_saturating(q, static_cast<std::uint64_t>(m) * m, std::uint64_t{1} << 62);
    detail::Matrix rows(m, detail::Row(m));
    for (std::uint64_t idx = 0; idx < matrices; ++idx) {
        std::uint64_t rest = idx;
        for (auto& entry : matrix) {
            entry = static_cast<std::uint8_t>(rest % q);
            rest /= q;
        }
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j)
                rows[i][j] = matrix[i * m + j];
        detail::Matrix scratch = rows;
        if (detail::rref(field, scratch) != m)
            continue;
        const AffineMap linear(params.field, matrix, std::vector<std::uint8_t>(m, 0));
        const std::vector<std::uint32_t> mx = linear.index_permutation();
        for (std::uint32_t b = 0; b < total; ++b) {
            const auto& tb = trans[b];
            for (std::uint32_t i = 0; i < total; ++i)
                composed[i] = tb[mx[i]];
            for (const auto& seed : seeds) {
                for (std::uint32_t i = 0; i < total; ++i)
                    key[i] = static_cast<char>(seed[composed[i]]);
                seen.insert(key);
            }
        }
    }

    std::vector<Codeword> words;
    words.reserve(seen.size());
    for (const auto& k : seen) {
        std::vector<std::uint8_t> values(k.begin(), k.end());
        words.push_back(
            Codeword::from_table(EvaluationTable{params.field, params.m, std::move(values)}));
    }
    std::sort(words.begin(), words.end());
    return words;
}

// Depth-first scan over all coefficient vectors of the monomial basis,
// reusing partial sums: one axpy per visited node.
struct ExhaustiveScan {
    using Sink = std::function<void(const std::vector<std::uint8_t>&)>;

    const GrmParams& params;
    const kernels::Kernels& kern;
    std::vector<std::vector<std::uint8_t>> basis_tables;
    std::vector<const std::uint8_t*> step_rows; // mul row of v - (v-1)
    kernels::FieldOps ops;
    std::size_t n = 0;

    explicit ExhaustiveScan(const GrmParams& p) : params(p), kern(kernels::active()) {
        const auto basis = monomial_basis(params);
        basis_tables.reserve(basis.size());
        for (const auto& e : basis)
            basis_tables.push_back(
                ReducedPoly::term(params.field, params.m, e, 1).to_table().values);
        n = basis_tables[0].size();
        ops = params.field->ops();
        const unsigned q = params.q();
        step_rows.assign(q, nullptr);
        for (unsigned v = 1; v < q; ++v)
            step_rows[v] = params.field->mul_row(params.field->sub(
                static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(v - 1)));
    }

    void run(std::vector<std::vector<std::uint8_t>>& buffers, unsigned level, bool any,
             const std::vector<std::uint8_t>& acc, const Sink& sink) const {
        if (level == basis_tables.size()) {
            if (any && kern.count_nonzero(acc.data(), n) == params.w_min)
                sink(acc);
            return;
        }
        run(buffers, level + 1, any, acc, sink);
        auto& buf = buffers[level];
        buf = acc;
        for (unsigned v = 1; v < params.q(); ++v) {
            kern.axpy(buf.data(), basis_tables[level].data(), n, step_rows[v], ops);
            run(buffers, level + 1, true, buf, sink);
        }
    }
};

} // namespace

std::vector<Codeword> enumerate_min_words(const GrmParams& params, const EnumOptions& options) {
    if (options.mode == EnumMode::Orbit) {
        const unsigned q = params.q();
        if (params.t > params.m - 1)
            throw std::invalid_argument("orbit mode needs t <= m-1 (r < m(q-1))");
        // all canonical words: every nonzero scalar, every s-subset of values
        std::vector<std::vector<std::uint8_t>> seeds;
        std::vector<std::uint16_t> subset(params.s);
        auto combos = [&](auto&& self, unsigned level, unsigned from) -> void {
            if (level == params.s) {
                for (unsigned c = 1; c < q; ++c)
                    seeds.push_back(
                        canonical_min_word(params, static_cast<std::uint16_t>(c), subset)
                            .table.values);
                return;
            }
            for (unsigned v = from; v < q; ++v) {
                subset[level] = static_cast<std::uint16_t>(v);
                self(self, level + 1, v + 1);
            }
        };
        combos(combos, 0, 0);
        return orbit_closure(params, seeds, options.budget);
    }

    const std::uint64_t space = pow_saturating(params.q(), params.dim, options.budget + 1);
    if (space > options.budget)
        throw BudgetExceededError(
            "exhaustive enumeration needs q^dim = q^" + std::to_string(params.dim) +
            " > budget " + std::to_string(options.budget) + "; try orbit mode");

    ExhaustiveScan scan(params);
    const unsigned q = params.q();
    const unsigned k = static_cast<unsigned>(scan.basis_tables.size());

    std::vector<std::vector<std::uint8_t>> found;
    if (options.jobs <= 1) {
        std::vector<std::vector<std::uint8_t>> buffers(k, std::vector<std::uint8_t>(scan.n));
        const std::vector<std::uint8_t> zero(scan.n, 0);
        scan.run(buffers, 0, false, zero,
                 [&](const std::vector<std::uint8_t>& t) { found.push_back(t); });
    } else {
        // split the first coefficient across workers
        const unsigned workers = std::min(options.jobs, q);
        std::vector<std::vector<std::vector<std::uint8_t>>> parts(q);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                std::vector<std::vector<std::uint8_t>> buffers(k,
                                                               std::vector<std::uint8_t>(scan.n));
                std::vector<std::uint8_t> acc(scan.n);
                for (unsigned v = w; v < q; v += workers) {
                    acc.assign(scan.n, 0);
                    if (v != 0)
                        scan.kern.axpy(acc.data(), scan.basis_tables[0].data(), scan.n,
                                       params.field->mul_row(static_cast<std::uint16_t>(v)),
                                       scan.ops);
                    scan.run(buffers, 1, v != 0, acc,
                             [&](const std::vector<std::uint8_t>& t) { parts[v].push_back(t); });
                }
            });
        }
        for (auto& th : threads)
            th.join();
        for (auto& part : parts)
            for (auto& t : part)
                found.push_back(std::move(t));
    }

    std::sort(found.begin(), found.end());
    std::vector<Codeword> words;
    words.reserve(found.size());
    for (auto& values : found)
        words.push_back(
            Codeword::from_table(EvaluationTable{params.field, params.m, std::move(values)}));
    return words;
}

std::vector<Codeword> affine_orbit(const Codeword& f, const GrmParams& params,
                                   std::uint64_t budget) {
    if (!contains(params, f.table))
        throw std::invalid_argument("codeword is not in the code");
    return orbit_closure(params, {f.table.values}, budget);
}

} // namespace grm
