#pragma once

#include <vector>

#include "chiral/laurent_matrix.hpp"

namespace chiral {

// Canonical form of the Q[t]-span of a set of Laurent rows. The span is
// rescaled by t^shift (shift = largest pole order over the module, which is
// generator-independent), reduced to row Hermite normal form over Q[t], and
// shifted back. Pivots are monic with minimal exponent; ties break by column
// index; entries above a pivot have lower degree than the pivot. Zero rows
// are dropped.
struct HermiteForm {
    LaurentMatrix rows;
    size_t rank = 0;
    long shift = 0;
};

HermiteForm hnf_over_poly(const LaurentMatrix& m);

// True iff the two row sets generate the same Q[t]-submodule of the ambient
// Laurent module (identical Hermite forms).
bool module_equal(const LaurentMatrix& a, const LaurentMatrix& b);

// Canonical generators of the submodule of elements supported entirely on the
// columns with keep[c] == true.
LaurentMatrix submodule_supported_on(const LaurentMatrix& m, const std::vector<bool>& keep);

// Hermite form echelonized with respect to a custom column order. col_order
// lists original column indices, highest elimination priority first; returned
// rows use the original layout.
HermiteForm hnf_over_poly_permuted(const LaurentMatrix& m, const std::vector<size_t>& col_order);

}  // namespace chiral
