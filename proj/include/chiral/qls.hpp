#pragma once

#include <string>
#include <vector>

#include "chiral/datum.hpp"

namespace chiral {

// One summand coeff * (d^r psi_a / r!) * psi_b of a quadratic expression in a
// commutative (dual) algebra. The derivative factor is divided-power
// normalized, matching the mode state c_(-r-1)|0>.
struct QuadTerm {
    size_t a = 0;
    long deriv = 0;
    size_t b = 0;
    Rational coeff;

    friend bool operator==(const QuadTerm&, const QuadTerm&) = default;
};

using QuadExpr = std::vector<QuadTerm>;

// Canonical order: order-0 products sorted with a <= b using the graded
// commutativity sign; odd squares dropped; terms sorted, zero coeffs removed.
QuadExpr normalize_quad_expr(QuadExpr expr, const std::vector<GeneratorSpec>& gens);

// Polar-part extraction of the chiral operation on a commutative algebra:
// f = sum c_j t^j maps to sum_{k>=1} c_{-k} (d^{k-1} a / (k-1)!) * b; the
// regular part contributes nothing.
QuadExpr de_rham_mu(const LaurentPoly& f, size_t a, size_t b);

// Dual of a QLS datum: the quadratic-dual presentation, the full dual with
// the distinguished section S = dual of the unit, and the differential and
// curving data read off the S-anchored dual relations.
struct TwistedPairPresentation {
    QuadraticDatum quadratic_dual;  // on dual generators of N alone
    QuadraticDatum full_dual;       // on dual generators plus S
    size_t s_index = 0;             // position of S in full_dual.generators

    // differential_table[c] = d(psi_c) for psi_c = quadratic_dual.generators[c]
    std::vector<QuadExpr> differential_table;
    QuadExpr curving;

    // the dual rows anchored at psi_c (x) S carry the same tails as the rows
    // anchored at S (x) psi_c; verified rather than re-extracted
    bool antisymmetry_consistent = true;
    std::string antisymmetry_witness;

    // |d| = -1 and |curving| = -2 term by term
    bool degree_consistent = true;
};

// QLS condition: the relation module meets the mixed/scalar block exactly in
// its regular part. Pre: validate(d).is_valid_datum.
bool check_qls(const QuadraticDatum& d);

// Image of the relation module under dropping all mixed/scalar coordinates;
// a datum on N alone, canonicalized.
QuadraticDatum quadratic_projection(const QuadraticDatum& d);

// Pre: check_qls(d) and the underlying quadratic datum dualizable. Throws
// NotQlsDualizable(1) when the inner derivation leaks outside the quadratic
// dual span, NotQlsDualizable(2) when S (x) S does.
TwistedPairPresentation extract_twisted_pair(const QuadraticDatum& d);

}  // namespace chiral
