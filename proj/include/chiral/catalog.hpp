#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chiral/datum.hpp"
#include "chiral/mc.hpp"
#include "chiral/qls.hpp"

namespace chiral {

struct LieData {
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<Rational>>> f;  // f[c][a][b]
    std::vector<std::vector<Rational>> kappa;
};

// structure constants and level * trace form derived from 2x2 matrix brackets
// in the (e, h, f) basis
LieData sl2(const Rational& level);

// abelian rank-n algebra with a prescribed symmetric kappa
LieData abelian_lie(size_t n, const std::vector<std::vector<Rational>>& kappa);

// rank-1 Heisenberg data: f = 0, kappa = [[k]]
LieData heisenberg(const Rational& k);

// change of basis x'_a = sum_p g[p][a] x_p applied to (f, kappa)
LieData change_basis(const LieData& lie, const std::vector<std::vector<Rational>>& g);

struct ExampleBundle {
    std::string name;
    QuadraticDatum datum;
    std::optional<LaurentMatrix> expected_dual_rows;  // over the full dual ambient
    std::optional<ModeAlgebraSpec> primal_engine;
    std::optional<ModeAlgebraSpec> dual_engine;
    std::optional<GeneratorDifferential> expected_d;  // over the quadratic dual generators
    std::optional<QuadExpr> expected_curving;
    std::string note;
};

// P = N (x) N, the commutative family
ExampleBundle commutative_example(size_t rank, const std::vector<long>& degrees);

// the rank-4 pure quadratic datum with off-diagonal t^-1 relations and its
// displayed dual
ExampleBundle four_generator_example();

// QLS datum of the affine Kac-Moody family; throws InvalidLieData
ExampleBundle kac_moody_example(const LieData& lie);

// QLS datum of the Weyl/Clifford family; throws InvalidPairing. When
// request_dual, omega must be non-degenerate.
ExampleBundle beta_gamma_bc_example(const std::vector<std::vector<Rational>>& omega,
                                    const std::vector<Rational>& weights,
                                    const std::vector<Parity>& parities,
                                    bool request_dual = true);

ExampleBundle beta_gamma_example();  // omega_12 = 1, weights 1/2, even pair
ExampleBundle bc_example();          // weights (1, 0), odd pair

// dual generator list produced by the suspension rules; used to build the
// dual-side engines
std::vector<GeneratorSpec> dual_generators(const std::vector<GeneratorSpec>& gens);

// closed form of I_(0) I for the Kac-Moody canonical element:
// sum f^c_ab J_c (x) c^a c^b + sum kappa_ab |0> (x) (d c^a) c^b
TensorState kac_moody_i0i(const TensorPair& pair, const LieData& lie);

}  // namespace chiral
