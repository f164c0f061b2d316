#pragma once

#include "chiral/fock.hpp"
#include "chiral/qls.hpp"

namespace chiral {

// d on each generator state c^a = c^a_(-1)|0>, as a quadratic expression over
// the engine's own generators
using GeneratorDifferential = std::vector<QuadExpr>;

// the closed-form Chevalley-Eilenberg table d(c^a) = -1/2 f^a_bc c^b c^c
GeneratorDifferential ce_generator_differential(const ModeAlgebraSpec& spec);

// realize a quadratic expression as a state: {a, r, b, q} -> q c^a_(-r-1) c^b_(-1)|0>
FockState quad_expr_state(const Engine& e, const QuadExpr& expr);

// odd derivation extending the generator table: factors c^a_(-m-1) map to
// T^m(d c^a)/m!, then Leibniz with Koszul signs across the monomial
FockState ce_differential(const Engine& e, const GeneratorDifferential& d, const FockState& u);

// -sum kappa_ab (d c^a) c^b
FockState curving_from_kappa(const Engine& e, const std::vector<std::vector<Rational>>& kappa);
// -sum omega_ab psi_a psi_b
FockState curving_from_omega(const Engine& e, const std::vector<std::vector<Rational>>& omega);

// exact membership in T(V); the vanishing locus of global de Rham sections
bool in_translation_image(const Engine& e, const FockState& x);

// d(d(u)) == iota_(0) u on every basis state of weight <= max_weight, and
// d(iota) == 0 as a global section (translation-exact as a state)
bool cdg_identity_check(const Engine& e, const GeneratorDifferential& d, const FockState& iota,
                        const Rational& max_weight);

}  // namespace chiral
