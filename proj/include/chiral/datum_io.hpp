#pragma once

#include <string>

#include "chiral/datum.hpp"
#include "chiral/fock.hpp"

namespace chiral {

// Line-oriented datum grammar:
//   [generators]
//   name degree parity weight        parity in {even, odd}, weight p/q or integer
//   [relations]
//   coeff t^k i j + coeff t^k i j + ...
// '#' starts a comment; the literal generator name `unit` marks the QLS unit.
QuadraticDatum parse_datum(const std::string& text);
std::string print_datum(const QuadraticDatum& d);

// Mode algebra structure files:
//   [algebra]
//   kind lie | weyl | abelian-ce
//   [generators]
//   name degree parity weight
//   [bracket]        a b c q   sets f^c_ab = q and f^c_ba = -q
//   [kappa]          a b q     sets kappa_ab = kappa_ba = q
//   [omega]          a b q     sets omega_ab = q and the graded-antisymmetric mirror
ModeAlgebraSpec parse_algebra(const std::string& text);

// Generator assignment files for hom checking:
//   [map]
//   name = coeff [gen depth] [gen depth] ... + ...
// each bracket factor is the creation mode x_{gen,(-depth)}; an empty factor
// list denotes the vacuum.
std::vector<FockState> parse_hom_map(const std::string& text, const Engine& target,
                                     const std::vector<std::string>& source_names);

}  // namespace chiral
