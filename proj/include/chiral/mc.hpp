#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chiral/tensor.hpp"

namespace chiral {

// CDG structure carried by one tensor factor: the differential's generator
// table and the curving element, both living in that factor's engine.
struct TwistedStructure {
    bool on_right = true;  // which factor carries d and iota
    GeneratorDifferential d;
    FockState iota;
};

struct MCReport {
    TensorState residual_e1;                // d I + 1/2 I_(0) I + 1/2 iota
    std::vector<TensorState> residuals_em;  // I_(m) I for 1 <= m <= m_max
    bool passed = false;
    std::vector<std::string> witnesses;     // printable nonzero residual parts
};

// Twisted Maurer-Cartan check at the vertex level. |I| must be -1.
MCReport mc_check(const TensorPair& pair, const TensorState& I, const TwistedStructure& ts,
                  long m_max, const Exec& exec = {});

enum class MCForm { Full, Weak };

// Plain (untwisted) equations: full means v_(n)v = 0 for all n >= 0 up to the
// locality bound; weak checks n = 0 only.
bool mc_plain(const Engine& e, const FockState& v, MCForm form);
bool mc_plain(const TensorPair& pair, const TensorState& v, MCForm form, const Exec& exec = {});

// Verification that a generator assignment y_a defines a homomorphism out of
// the affine vertex algebra with data (f, kappa): the three product families
//   y_a(0) y_b = f^c_ab y_c,  y_a(1) y_b = kappa_ab |0>,  y_a(m) y_b = 0 (m >= 2)
// checked exactly, then derived commutators on sampled modes via the
// Borcherds expansion.
struct HomViolation {
    size_t a = 0, b = 0;
    long n = 0;
    std::string detail;
};

struct HomReport {
    bool passed = false;
    bool products_ok = false;
    bool commutators_ok = false;
    std::vector<HomViolation> violations;
};

HomReport hom_check(const std::vector<std::vector<std::vector<Rational>>>& f,
                    const std::vector<std::vector<Rational>>& kappa, const Engine& target,
                    const std::vector<FockState>& y, unsigned seed = 1);

// Maurer-Cartan solution from a generator assignment: alpha = sum_a c^a (x) y_a
// in (CE dual) (x) (target).
TensorState hom_alpha(const TensorPair& pair, const std::vector<FockState>& y);

// Exhaustive twisted-MC solution search over the ansatz
//   alpha = sum_a c^a (x) (sum_i lambda_{a,i} basis_i),
// with basis_i the target PBW basis up to ansatz_weight, vacuum components
// excluded (they span the free shift family). Supported for small shapes
// (rank <= 2 sources, ansatz_weight <= 2) where the exact quadratic system
// triangularizes by substitution; throws Error otherwise. Each solution is
// returned as the list of target elements y_a.
std::vector<std::vector<FockState>> mc_solve(const TensorPair& pair, const TwistedStructure& ts,
                                             const Rational& ansatz_weight);

}  // namespace chiral
