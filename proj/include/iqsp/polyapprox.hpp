#pragma once

#include <functional>
#include <vector>

#include "iqsp/common.hpp"

namespace iqsp {

enum class Basis { Monomial, Chebyshev };
enum class Parity { Even, Odd, None };

// Real polynomial with tagged basis and parity. Coefficient k multiplies
// x^k (monomial) or T_k(x) (Chebyshev).
struct RealPolynomial {
    Basis basis = Basis::Monomial;
    Parity parity = Parity::None;
    RealVector coefficients;

    int degree() const;
    double eval(double x) const;
    // max |P| over a uniform grid on [-1,1].
    double sup_norm_grid(int points = 0) const;
    bool parity_consistent(double tol = 1e-12) const;
    bool qsp_admissible(double slack = 1e-9) const;
};

struct ComplexPolynomial {
    Basis basis = Basis::Monomial;
    ComplexVector coefficients;

    int degree() const;
    cxd eval(cxd z) const;
    double sup_norm_unit_circle(int points = 0) const;
    bool gqsp_admissible(double slack = 1e-9) const;
};

// Truncated Jacobi-Anger Chebyshev series for cos(xt) / sin(xt), rescaled by
// 1/(1+eps/4) so the result is strictly bounded by 1. Measured grid error
// against the exact function is at most eps/2.
RealPolynomial jacobi_anger_cos(double t, double eps);
RealPolynomial jacobi_anger_sin(double t, double eps);

// Smallest integer r >= max(1, ceil(t)) with (t/r)^r <= eps.
int truncation_order_r(double t, double eps);

// First k terms of the Taylor series of (2/pi) arcsin(x) (odd, monomial).
RealPolynomial arcsin_taylor(int k);

// Lagrange interpolant of arcsin at Q+1 uniform nodes on [-L, L]; Q even,
// L <= 1/pi. Odd by symmetry of the node set.
RealPolynomial arcsin_lagrange(int q, double big_l);

// Even window: ~1 on [-1/pi, 1/pi], <= eps' for |x| >= 1/pi + delta'.
RealPolynomial tophat_window(double delta_prime, double eps_prime);

// Internal helper shared with tophat_window: even Chebyshev fit of the
// erf-pair window with plateau edge `edge` and transition width `width`.
RealPolynomial erf_window(double edge, double width, double tol, int max_degree);

// Polynomial approximation of f(x) = (delta^c / 2) x^{-c} on [delta, 1]
// with the requested parity and ||P|| <= 1 on [-1, 1].
RealPolynomial neg_power_poly(double c, double delta, double eps, Parity parity);

struct ExpIASquaredPair {
    RealPolynomial cos_part;  // ~ cos(a^2), even
    RealPolynomial sin_part;  // ~ sin(a^2), even
};

// Chebyshev pair approximating (cos(a^2), sin(a^2)) on [-1,1] within eps,
// each rescaled by 1/(1+eps/4).
ExpIASquaredPair exp_i_a_squared_poly(double eps);

// Measured max error |P(x) - f(x)| over a uniform grid on [lo, hi].
double grid_error(const RealPolynomial& p, const std::function<double(double)>& f,
                  double lo, double hi, int points = 0);

}  // namespace iqsp
