#pragma once

#include <string>
#include <vector>

#include "iqsp/polyapprox.hpp"
#include "iqsp/qsp.hpp"

namespace iqsp {

// Unitary on ancillas + system whose top-left block, scaled by alpha,
// approximates the encoded operator within eps.
struct BlockEncoding {
    double alpha = 1.0;
    int ancillas = 0;
    double eps = 0.0;
    ComplexMatrix unitary;
    Eigen::Index system_dim = 0;
    long query_count = 0;
    std::string backend;

    // (<0|^ancillas x I) U (|0>^ancillas x I)
    ComplexMatrix block() const;
    // Average-case post-selection probability ||block||_F^2 / system_dim.
    double success_probability() const;
    bool well_formed(double tol = 1e-9) const;
};

// Projector-controlled phase sequence for the eigenvalue transform. The
// phases are the reflection-convention angles; global_phase carries the i^d
// factor picked up when converting from a plain QSP sequence.
struct QetSequence {
    RealVector phases;
    cxd global_phase = 1.0;
};

// Reflection phases realizing the same polynomial as a WX_SZ QSP sequence.
QetSequence qet_phases_from_qsp(const QspSequence& seq);

// One-ancilla exact encoding of sin(H) from U = e^{iH}:
// (H x I) cU^dag (Y x I) cU (H x I).
BlockEncoding be_sin(const ComplexMatrix& u);

// (pi/2, 2, eps) encoding of H from U = e^{iH}, ||H|| <= 1/2.
BlockEncoding log_block_encode(const ComplexMatrix& u, double eps);

// Eigenvalue transform of the encoded Hermitian operator; ancillas unchanged.
BlockEncoding qet_apply(const BlockEncoding& be, const QetSequence& seq);

BlockEncoding be_multiply(const BlockEncoding& a, const BlockEncoding& b);

// Multiply a bare system gate into the encoding (a 0-ancilla encoding).
BlockEncoding be_append_system_gate(const BlockEncoding& be, const ComplexMatrix& g);

// (1+eps', 6, eps') encoding of exp(i (theta/2)^2 Z).
BlockEncoding phase_square(const SignalRotation& w, double eps_prime);

// (1+eps', ., eps') encoding of exp(i (theta/2)^l Z), l <= 6.
BlockEncoding phase_power(const SignalRotation& w, int l, double eps_prime);

// Ancilla-free squaring for |theta| <= 3/5: a bare 2x2 unitary within eps of
// exp(i (theta/2)^2 Z) up to global phase.
ComplexMatrix phase_square_small(const SignalRotation& w, double eps);

// Encoding of exp(i theta1 theta2 Z / 2); backend recorded per factor.
BlockEncoding phase_multiply(const SignalRotation& w1, const SignalRotation& w2,
                             double eps);

// Encoding of the rotation with angle prod theta_i (reference accumulator
// semantics; list length a power of two, <= 8).
BlockEncoding phase_product_many(const std::vector<SignalRotation>& ws, double eps);

struct PhaseMonomial {
    double coefficient = 1.0;
    std::vector<std::pair<SignalRotation, int>> factors;  // (rotation, power)
};

// Encoding of exp(i sum_j a_j prod_i (theta_i/2)^{l_i} Z).
BlockEncoding phase_polynomial(const std::vector<PhaseMonomial>& monomials, double eps);

struct CoulombResult {
    BlockEncoding encoding;
    double magnitude = 0.0;       // |alpha * block(0,0)|
    double expected = 0.0;        // (sqrt(delta)/2) / distance
    double distance = 0.0;
};

// Two-dimensional Coulomb pipeline: difference rotations, two squarings,
// multiplication, logarithmic block-encoding, negative-power QET.
CoulombResult coulomb_block_encode(double x1, double y1, double x2, double y2,
                                   double delta, double eps);

}  // namespace iqsp
