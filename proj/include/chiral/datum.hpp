#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chiral/hermite.hpp"
#include "chiral/laurent_matrix.hpp"
#include "chiral/rational.hpp"

namespace chiral {

enum class Parity { Even, Odd };

struct GeneratorSpec {
    std::string name;
    long degree = 0;       // cohomological Z-grading
    Parity parity = Parity::Even;  // intrinsic super-parity
    Rational weight = 0;   // conformal weight

    // intrinsic parity + degree mod 2; the sign-relevant parity everywhere
    bool total_odd() const {
        return ((parity == Parity::Odd ? 1 : 0) + (degree % 2 + 2)) % 2 == 1;
    }

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

// Chiral quadratic datum (N, P) in coordinate form over the affine line with
// translation-invariant data: generators e_1..e_r span N, and P is the
// Q[t]-row-span of `relations` inside (N (x) N) (x) Q[t, t^-1], columns
// indexed by ordered pairs e_i (x) e_j at index i*r + j.
struct QuadraticDatum {
    std::vector<GeneratorSpec> generators;
    LaurentMatrix relations;

    size_t rank() const { return generators.size(); }
    size_t ambient() const { return rank() * rank(); }
    size_t col(size_t i, size_t j) const { return i * rank() + j; }

    std::optional<size_t> unit_index() const;
    bool is_qls() const { return unit_index().has_value(); }

    // structural well-formedness: unique names, matrix width, nonzero rows,
    // at most one unit generator (and a unit must be degree 0, even, weight 0)
    void check_well_formed() const;
};

struct DualizabilityReport {
    bool is_valid_datum = false;
    bool is_dualizable = false;
    LaurentMatrix canonical_matrix;  // Hermite form of the relation span
    size_t rank = 0;
    LaurentPoly determinant;         // det of the canonical matrix when full rank
    long max_pole_order = 0;         // the k with t^k P regular (locality witness)
    std::optional<std::string> failure_witness;
};

// Koszul sign attached to the ambient column e_i (x) e_j when pairing against
// dual rows: (-1)^{p(e_j) * (p(e_i) + 1)} with p the total parity.
int pairing_sign(const QuadraticDatum& d, size_t i, size_t j);

DualizabilityReport validate(const QuadraticDatum& d);

std::string dual_name(const std::string& name);

// Quadratic dual datum: suspended dual generators and the annihilator
// relations, realized as the sign-adjusted inverse transpose of the canonical
// relation matrix. Throws NotDualizable with the determinant witness.
QuadraticDatum dual_datum(const QuadraticDatum& d);

// True iff every row of p pairs with every row of q inside Q[t] (no pole at
// t = 0). p lives on e_i (x) e_j, q on the dual basis; parities come from d.
bool pairing_regular(const QuadraticDatum& d, const LaurentMatrix& p, const LaurentMatrix& q);
bool pairing_regular(const QuadraticDatum& d, const LaurentMatrix& dual_rows);

}  // namespace chiral
