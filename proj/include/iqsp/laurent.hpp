#pragma once

#include <vector>

#include "iqsp/common.hpp"

namespace iqsp::detail {

// Roots of a complex polynomial via the companion matrix, with Newton polish.
// Negligible leading coefficients are trimmed (roots at infinity dropped);
// trailing zeros become explicit roots at the origin.
std::vector<cxd> poly_roots(const ComplexVector& coeffs);

cxd poly_eval(const ComplexVector& coeffs, cxd z);

// Coefficients of 1 - P(z) conj(P)(1/z) as a polynomial in z after
// multiplying by z^d (degree 2d). P given by its d+1 coefficients.
ComplexVector one_minus_abs2_shifted(const ComplexVector& p);

// Fejer-Riesz style completion: Q of degree <= d with |P|^2 + |Q|^2 = 1 on
// the unit circle. `imaginary_real` selects the i*(real coefficients) branch
// used by the fixed-axis QSP gate set; otherwise the inside-disk minimal
// branch is used. Returns Q coefficients (size d+1).
ComplexVector complete_pair(const ComplexVector& p, bool imaginary_real);

// Max over a unit-circle grid of |1 - |P|^2 - |Q|^2|.
double pair_defect(const ComplexVector& p, const ComplexVector& q, int points = 512);

}  // namespace iqsp::detail
