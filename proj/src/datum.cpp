#include "chiral/datum.hpp"

#include <set>

#include "chiral/errors.hpp"

namespace chiral {

std::optional<size_t> QuadraticDatum::unit_index() const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == "unit") return i;
    return std::nullopt;
}

void QuadraticDatum::check_well_formed() const {
    std::set<std::string> names;
    size_t units = 0;
    for (const auto& g : generators) {
        if (g.name.empty()) throw Error("empty generator name");
        if (!names.insert(g.name).second) throw Error("duplicate generator name: " + g.name);
        if (g.name == "unit") {
            ++units;
            if (g.degree != 0 || g.parity != Parity::Even || g.weight != Rational(0))
                throw Error("unit generator must have degree 0, even parity, weight 0");
        }
    }
    if (units > 1) throw Error("more than one unit generator");
    if (relations.cols() != ambient())
        throw DimensionMismatch("relation rows must have r^2 columns");
    for (size_t r = 0; r < relations.rows(); ++r)
        if (relations.is_zero_row(r)) throw Error("zero relation row");
}

int pairing_sign(const QuadraticDatum& d, size_t i, size_t j) {
    bool pj = d.generators[j].total_odd();
    bool pi_dual = !d.generators[i].total_odd();  // suspension flips total parity
    return (pj && pi_dual) ? -1 : 1;
}

DualizabilityReport validate(const QuadraticDatum& d) {
    d.check_well_formed();
    DualizabilityReport rep;
    HermiteForm h = hnf_over_poly(d.relations);
    rep.canonical_matrix = h.rows;
    rep.rank = h.rank;
    rep.max_pole_order = d.relations.max_pole_order();
    if (h.rank != d.ambient()) {
        rep.failure_witness =
            "relation span has rank " + std::to_string(h.rank) + " < " +
            std::to_string(d.ambient()) + ": P does not span N (x) N off the diagonal";
        return rep;
    }
    rep.determinant = det(h.rows);
    if (!is_laurent_unit(rep.determinant)) {
        rep.failure_witness =
            "det(P) = " + rep.determinant.str() +
            " vanishes somewhere on t != 0: spanning fails off the diagonal";
        return rep;
    }
    rep.is_valid_datum = true;
    rep.is_dualizable = true;
    return rep;
}

std::string dual_name(const std::string& name) {
    return name + "^";
}

QuadraticDatum dual_datum(const QuadraticDatum& d) {
    DualizabilityReport rep = validate(d);
    if (!rep.is_dualizable)
        throw NotDualizable(rep.determinant.is_zero() ? (rep.failure_witness ? *rep.failure_witness : "rank deficient")
                                                      : rep.determinant.str());
    size_t r = d.rank();
    LaurentMatrix finv = invert_if_unit_det(rep.canonical_matrix);

    QuadraticDatum dual;
    dual.generators.reserve(r);
    for (const auto& g : d.generators) {
        GeneratorSpec gd;
        gd.name = dual_name(g.name);
        gd.degree = -g.degree - 1;
        gd.parity = g.parity;  // total parity flips through the degree shift
        gd.weight = Rational(1) - g.weight;
        dual.generators.push_back(std::move(gd));
    }
    size_t n = d.ambient();
    dual.relations = LaurentMatrix(n, n);
    for (size_t l = 0; l < n; ++l)
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                size_t cidx = d.col(i, j);
                const LaurentPoly& e = finv.at(cidx, l);
                if (e.is_zero()) continue;
                dual.relations.at(l, cidx) =
                    pairing_sign(d, i, j) < 0 ? -e : e;
            }
    return dual;
}

bool pairing_regular(const QuadraticDatum& d, const LaurentMatrix& p, const LaurentMatrix& q) {
    if (p.cols() != d.ambient() || q.cols() != d.ambient())
        throw DimensionMismatch("pairing over mismatched ambient bases");
    size_t r = d.rank();
    for (size_t u = 0; u < p.rows(); ++u)
        for (size_t v = 0; v < q.rows(); ++v) {
            LaurentPoly s;
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < r; ++j) {
                    size_t c = d.col(i, j);
                    if (p.at(u, c).is_zero() || q.at(v, c).is_zero()) continue;
                    LaurentPoly prod = p.at(u, c) * q.at(v, c);
                    if (pairing_sign(d, i, j) < 0)
                        s -= prod;
                    else
                        s += prod;
                }
            if (!s.regular()) return false;
        }
    return true;
}

bool pairing_regular(const QuadraticDatum& d, const LaurentMatrix& dual_rows) {
    return pairing_regular(d, d.relations, dual_rows);
}

}  // namespace chiral
