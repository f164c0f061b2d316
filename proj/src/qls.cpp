#include "chiral/qls.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "chiral/errors.hpp"

namespace chiral {

QuadExpr normalize_quad_expr(QuadExpr expr, const std::vector<GeneratorSpec>& gens) {
    std::map<std::tuple<size_t, long, size_t>, Rational> acc;
    for (auto& term : expr) {
        if (term.coeff.is_zero()) continue;
        size_t a = term.a, b = term.b;
        Rational c = term.coeff;
        if (term.deriv == 0 && a > b) {
            bool sign = gens[a].total_odd() && gens[b].total_odd();
            std::swap(a, b);
            if (sign) c = -c;
        }
        if (term.deriv == 0 && a == b && gens[a].total_odd()) continue;  // odd square
        acc[{a, term.deriv, b}] += c;
    }
    QuadExpr out;
    for (const auto& [key, c] : acc) {
        if (c.is_zero()) continue;
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    }
    return out;
}

QuadExpr de_rham_mu(const LaurentPoly& f, size_t a, size_t b) {
    QuadExpr out;
    for (const auto& [e, c] : f.coeffs()) {
        if (e >= 0) continue;
        long k = -e;
        out.push_back({a, k - 1, b, c});
    }
    return out;
}

bool check_qls(const QuadraticDatum& d) {
    auto u = d.unit_index();
    if (!u) throw Error("check_qls: datum has no unit generator");
    size_t r = d.rank();
    std::vector<bool> mixed(d.ambient(), false);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (i == *u || j == *u) mixed[d.col(i, j)] = true;

    LaurentMatrix meet = submodule_supported_on(d.relations, mixed);

    // regular mixed/scalar block: one unit row per mixed column
    size_t nm = 0;
    for (bool b : mixed) nm += b ? 1 : 0;
    LaurentMatrix block(nm, d.ambient());
    size_t row = 0;
    for (size_t c = 0; c < d.ambient(); ++c)
        if (mixed[c]) block.at(row++, c) = LaurentPoly(1);

    return module_equal(meet, block);
}

QuadraticDatum quadratic_projection(const QuadraticDatum& d) {
    auto u = d.unit_index();
    if (!u) throw Error("quadratic_projection: datum has no unit generator");
    size_t r = d.rank();

    QuadraticDatum q;
    std::vector<size_t> keep;  // primal indices of non-unit generators
    for (size_t i = 0; i < r; ++i)
        if (i != *u) {
            keep.push_back(i);
            q.generators.push_back(d.generators[i]);
        }
    size_t rq = keep.size();

    LaurentMatrix rows(d.relations.rows(), rq * rq);
    for (size_t row = 0; row < d.relations.rows(); ++row)
        for (size_t i = 0; i < rq; ++i)
            for (size_t j = 0; j < rq; ++j)
                rows.at(row, i * rq + j) = d.relations.at(row, d.col(keep[i], keep[j]));
    q.relations = hnf_over_poly(rows).rows;
    return q;
}

namespace {

// tail of a dual row outside its pivot; fails if anything lands outside the
// quadratic block
struct AnchoredRow {
    size_t pivot_col;
    std::vector<std::pair<size_t, LaurentPoly>> quad_tail;  // (full-ambient col, coeff)
};

}  // namespace

TwistedPairPresentation extract_twisted_pair(const QuadraticDatum& d) {
    auto u = d.unit_index();
    if (!u) throw Error("extract_twisted_pair: datum has no unit generator");
    if (!check_qls(d)) throw Error("extract_twisted_pair: QLS condition fails");

    TwistedPairPresentation tp;
    tp.full_dual = dual_datum(d);
    tp.quadratic_dual = dual_datum(quadratic_projection(d));
    size_t r = d.rank();
    tp.s_index = *u;

    // echelonize with the S-anchored columns first so every dual relation
    // organizes as (anchor) + (quadratic tail)
    std::vector<size_t> order;
    order.push_back(d.col(*u, *u));
    for (size_t j = 0; j < r; ++j)
        if (j != *u) order.push_back(d.col(*u, j));
    for (size_t i = 0; i < r; ++i)
        if (i != *u) order.push_back(d.col(i, *u));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (i != *u && j != *u) order.push_back(d.col(i, j));

    HermiteForm h = hnf_over_poly_permuted(tp.full_dual.relations, order);
    if (h.rank != d.ambient())
        throw Error("extract_twisted_pair: dual relation span is rank deficient");

    // classify columns
    auto col_kind = [&](size_t c) {
        size_t i = c / r, j = c % r;
        if (i == *u && j == *u) return 0;  // S (x) S
        if (i == *u) return 1;             // S (x) psi_j
        if (j == *u) return 2;             // psi_i (x) S
        return 3;                          // quadratic
    };
    // map primal index != unit to its position among non-unit generators
    auto quad_index = [&](size_t i) { return i - (i > *u ? 1 : 0); };

    size_t rq = r - 1;
    std::vector<QuadExpr> left_tail(rq), right_tail(rq);
    QuadExpr curving_tail;

    for (size_t row = 0; row < h.rows.rows(); ++row) {
        size_t pivot = d.ambient();
        for (size_t c : order)
            if (!h.rows.at(row, c).is_zero()) {
                pivot = c;
                break;
            }
        if (pivot == d.ambient()) continue;
        int kind = col_kind(pivot);
        if (kind == 3) continue;  // pure quadratic relation, no extraction

        int cond = (kind == 0) ? 2 : 1;
        if (!h.rows.at(row, pivot).is_one())
            throw NotQlsDualizable(cond, "anchor " + std::to_string(pivot) +
                                             " enters relations only with coefficient " +
                                             h.rows.at(row, pivot).str());
        QuadExpr tail;
        for (size_t c = 0; c < d.ambient(); ++c) {
            if (c == pivot || h.rows.at(row, c).is_zero()) continue;
            if (col_kind(c) != 3)
                throw NotQlsDualizable(cond, "dual relation anchored at column " +
                                                 std::to_string(pivot) +
                                                 " has a non-quadratic tail entry");
            size_t i = c / r, j = c % r;
            QuadExpr part = de_rham_mu(h.rows.at(row, c), quad_index(i), quad_index(j));
            tail.insert(tail.end(), part.begin(), part.end());
        }
        // the relation says mu(anchor) = -mu(tail)
        for (auto& term : tail) term.coeff = -term.coeff;
        tail = normalize_quad_expr(std::move(tail), tp.quadratic_dual.generators);
        if (kind == 0)
            curving_tail = std::move(tail);
        else if (kind == 1)
            left_tail[quad_index(pivot % r)] = std::move(tail);
        else
            right_tail[quad_index(pivot / r)] = std::move(tail);
    }

    tp.differential_table = left_tail;
    tp.curving = curving_tail;

    for (size_t c = 0; c < rq; ++c) {
        if (left_tail[c] != right_tail[c]) {
            tp.antisymmetry_consistent = false;
            tp.antisymmetry_witness =
                "left and right tails differ for dual generator " +
                tp.quadratic_dual.generators[c].name;
            break;
        }
    }

    // degree bookkeeping: |d| = -1, |curving| = -2
    const auto& gens = tp.quadratic_dual.generators;
    for (size_t c = 0; c < rq && tp.degree_consistent; ++c)
        for (const auto& term : tp.differential_table[c])
            if (gens[term.a].degree + gens[term.b].degree != gens[c].degree - 1)
                tp.degree_consistent = false;
    for (const auto& term : tp.curving)
        if (gens[term.a].degree + gens[term.b].degree != -2) tp.degree_consistent = false;

    return tp;
}

}  // namespace chiral
