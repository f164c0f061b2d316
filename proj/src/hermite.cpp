#include "chiral/hermite.hpp"

#include <algorithm>

#include "chiral/errors.hpp"

namespace chiral {

namespace {

using Row = std::vector<LaurentPoly>;

// Row HNF over Q[t] of plain-polynomial rows, in place. Returns the rank.
size_t hnf_plain(std::vector<Row>& rows, size_t cols) {
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows.size(); ++col) {
        // Euclidean elimination below position r in this column.
        while (true) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                if (best == rows.size() ||
                    rows[i][col].degree() < rows[best][col].degree())
                    best = i;
            }
            if (best == rows.size()) break;  // column empty below r
            std::swap(rows[r], rows[best]);
            bool others = false;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col].is_zero()) continue;
                others = true;
                LaurentPoly q, rem;
                rows[i][col].divmod_plain(rows[r][col], q, rem);
                if (!q.is_zero())
                    for (size_t c = 0; c < cols; ++c) rows[i][c] -= q * rows[r][c];
            }
            if (!others) break;
        }
        if (rows[r][col].is_zero()) continue;
        Rational lc = rows[r][col].leading_coeff().inv();
        for (size_t c = 0; c < cols; ++c) rows[r][c] *= lc;
        for (size_t i = 0; i < r; ++i) {
            if (rows[i][col].is_zero()) continue;
            LaurentPoly q, rem;
            rows[i][col].divmod_plain(rows[r][col], q, rem);
            if (!q.is_zero())
                for (size_t c = 0; c < cols; ++c) rows[i][c] -= q * rows[r][c];
        }
        ++r;
    }
    return r;
}

}  // namespace

HermiteForm hnf_over_poly(const LaurentMatrix& m) {
    size_t cols = m.cols();
    long k = m.max_pole_order();
    std::vector<Row> rows;
    rows.reserve(m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        if (m.is_zero_row(r)) continue;
        Row row(cols);
        for (size_t c = 0; c < cols; ++c) row[c] = m.at(r, c).shifted(k);
        rows.push_back(std::move(row));
    }
    size_t rank = hnf_plain(rows, cols);
    HermiteForm h;
    h.rank = rank;
    h.shift = k;
    h.rows = LaurentMatrix(rank, cols);
    for (size_t r = 0; r < rank; ++r)
        for (size_t c = 0; c < cols; ++c) h.rows.at(r, c) = rows[r][c].shifted(-k);
    return h;
}

bool module_equal(const LaurentMatrix& a, const LaurentMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("module_equal over different ambient bases");
    return hnf_over_poly(a).rows == hnf_over_poly(b).rows;
}

HermiteForm hnf_over_poly_permuted(const LaurentMatrix& m, const std::vector<size_t>& col_order) {
    if (col_order.size() != m.cols()) throw DimensionMismatch("column order width");
    LaurentMatrix permuted(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) permuted.at(r, c) = m.at(r, col_order[c]);
    HermiteForm h = hnf_over_poly(permuted);
    LaurentMatrix out(h.rows.rows(), m.cols());
    for (size_t r = 0; r < h.rows.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) out.at(r, col_order[c]) = h.rows.at(r, c);
    h.rows = std::move(out);
    return h;
}

LaurentMatrix submodule_supported_on(const LaurentMatrix& m, const std::vector<bool>& keep) {
    if (keep.size() != m.cols()) throw DimensionMismatch("submodule_supported_on mask width");
    // Put the complement columns first; in echelon form the rows supported on
    // the kept block are exactly those whose pivot lands there.
    std::vector<size_t> perm;
    for (size_t c = 0; c < keep.size(); ++c)
        if (!keep[c]) perm.push_back(c);
    size_t split = perm.size();
    for (size_t c = 0; c < keep.size(); ++c)
        if (keep[c]) perm.push_back(c);

    HermiteForm h = hnf_over_poly_permuted(m, perm);
    std::vector<size_t> selected;
    for (size_t r = 0; r < h.rows.rows(); ++r) {
        bool outside = false;
        for (size_t c = 0; c < split; ++c)
            if (!h.rows.at(r, perm[c]).is_zero()) {
                outside = true;
                break;
            }
        if (!outside) selected.push_back(r);
    }
    LaurentMatrix out(selected.size(), m.cols());
    for (size_t i = 0; i < selected.size(); ++i)
        for (size_t c = 0; c < m.cols(); ++c) out.at(i, c) = h.rows.at(selected[i], c);
    return hnf_over_poly(out).rows;
}

}  // namespace chiral
