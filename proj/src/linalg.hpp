#pragma once

#include <cstdint>
#include <vector>

#include "grm/field.hpp"

// Small exact linear algebra over GF(q), shared by the geometry and
// interpolation code paths.  Matrices are dense row vectors of element codes.

namespace grm::detail {

using Row = std::vector<std::uint8_t>;
using Matrix = std::vector<Row>;

// Reduced row echelon form in place; returns the rank.  If `pivots` is given
// it receives the pivot column of each of the first `rank` rows.
inline unsigned rref(const Field& f, Matrix& rows, std::vector<unsigned>* pivots = nullptr) {
    if (pivots)
        pivots->clear();
    if (rows.empty())
        return 0;
    const unsigned cols = static_cast<unsigned>(rows[0].size());
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows.size(); ++col) {
        unsigned pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        const std::uint16_t scale = f.inv(rows[rank][col]);
        for (unsigned c = 0; c < cols; ++c)
            rows[rank][c] = static_cast<std::uint8_t>(f.mul(rows[rank][c], scale));
        for (unsigned r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            const std::uint16_t factor = rows[r][col];
            for (unsigned c = 0; c < cols; ++c)
                rows[r][c] = static_cast<std::uint8_t>(
                    f.sub(rows[r][c], f.mul(factor, rows[rank][c])));
        }
        if (pivots)
            pivots->push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return rank;
}

inline unsigned rank_of(const Field& f, Matrix rows) { return rref(f, rows); }

// Basis of {x : row . x = 0 for every row}, row-reduced for a canonical form.
inline Matrix null_space(const Field& f, Matrix rows, unsigned cols) {
    std::vector<unsigned> pivots;
    const unsigned rank = rref(f, rows, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (unsigned p : pivots)
        is_pivot[p] = true;
    Matrix basis;
    for (unsigned free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        Row v(cols, 0);
        v[free] = 1;
        for (unsigned r = 0; r < rank; ++r)
            v[pivots[r]] = static_cast<std::uint8_t>(f.neg(rows[r][free]));
        basis.push_back(std::move(v));
    }
    rref(f, basis);
    return basis;
}

// Reduce v against RREF rows with the given pivot columns; returns true if v
// lies in their span (the remainder is zero).
inline bool in_row_span(const Field& f, const Matrix& rows, const std::vector<unsigned>& pivots,
                        Row v) {
    for (unsigned r = 0; r < rows.size(); ++r) {
        const std::uint16_t c = v[pivots[r]];
        if (c == 0)
            continue;
        for (unsigned j = 0; j < v.size(); ++j)
            v[j] = static_cast<std::uint8_t>(f.sub(v[j], f.mul(c, rows[r][j])));
    }
    for (auto x : v)
        if (x != 0)
            return false;
    return true;
}

inline std::uint16_t dot(const Field& f, std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b) {
    std::uint16_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc = f.add(acc, f.mul(a[i], b[i]));
    return acc;
}

} // namespace grm::detail
