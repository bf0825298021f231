#pragma once

#include <vector>

#include "iqsp/common.hpp"
#include "iqsp/polyapprox.hpp"

namespace iqsp {

enum class QspConvention { WZ_SX, WX_SZ };
enum class Axis { X, Z };

struct SignalRotation {
    Axis axis = Axis::Z;
    double theta = 0.0;
};

// Phase sequence phi_0..phi_d for one of the two conventions of the
// interleaved product.
struct QspSequence {
    QspConvention convention = QspConvention::WX_SZ;
    RealVector phases;

    int degree() const { return static_cast<int>(phases.size()) - 1; }
};

// theta/omega angle pair per step plus the single lambda offset of the
// two-parameter processing rotations.
struct GqspSequence {
    RealVector thetas;
    RealVector omegas;
    double lambda = 0.0;

    int degree() const { return static_cast<int>(thetas.size()) - 1; }
};

// W_Z(theta) = e^{i theta Z / 2} or W_X(theta) = e^{i theta X / 2}.
ComplexMatrix eval_signal(const SignalRotation& w);

ComplexMatrix eval_qsp(const QspSequence& seq, double theta);

// R(theta, omega, lambda) = [[e^{i(lambda+omega)} cos, e^{i omega} sin],
//                            [e^{i lambda} sin, -cos]].
ComplexMatrix gqsp_rotation(double theta, double omega, double lambda);

// (prod_{j=d..1} R_j (|0><0| x U + |1><1| x I)) R_0 ; dimension 2 dim(U).
ComplexMatrix eval_gqsp(const GqspSequence& seq, const ComplexMatrix& u);

// Same interleaving evaluated with an arbitrary 2x2 unitary in place of the
// controlled signal gate. With w = diag(z, 1) this equals the top block of
// eval_gqsp at scalar z; with w = W_Z(theta) every step carries an extra
// factor e^{-i theta/2}.
ComplexMatrix eval_gqsp_su2(const GqspSequence& seq, const ComplexMatrix& w);

struct QspSolveResult {
    QspSequence sequence;
    double residual = 0.0;
};

struct GqspSolveResult {
    GqspSequence sequence;
    double residual = 0.0;
    // Factor applied to keep |target| strictly inside the unit disk; the
    // realized polynomial is target / rescale.
    double rescale = 1.0;
};

// Phases such that <+| eval_qsp(WX_SZ) |+> reproduces the target on a grid.
QspSolveResult solve_qsp_phases(const RealPolynomial& target, int d);

// Angles such that the top-left block of eval_gqsp equals target(U).
GqspSolveResult solve_gqsp_phases(const ComplexPolynomial& target, int d);

// Angles for a W_Z-driven 2x2 sequence whose (0,0) entry realizes the Laurent
// series sum_k c[k + h] w^k, w = e^{i theta / 2}, h = (c.size()-1)/2. All
// exponents carrying weight must share the parity of h. Evaluate with
// eval_gqsp_su2(seq, W_Z(theta)).
GqspSolveResult solve_wz_laurent(const ComplexVector& laurent_coeffs);

struct IteratedComposeResult {
    SignalRotation rotation;
    long queries = 0;
};

// Composed X rotation of angle 2 arccos(P(cos(sum theta_s / 2))) with the
// (d+1) + d * sum d_s query bookkeeping. Requires P real valued in [-1,1]
// on the real interval (the purely imaginary completion branch).
IteratedComposeResult iterated_compose(const std::vector<SignalRotation>& rotations,
                                       const std::vector<int>& q,
                                       const ComplexPolynomial& target,
                                       const std::vector<long>& costs = {});

}  // namespace iqsp
