#pragma once

#include <functional>
#include <vector>

#include "iqsp/circuit.hpp"
#include "iqsp/qsp.hpp"

namespace iqsp {

enum class BandKind { Boson, Linear, Custom };

// Hermitian tridiagonal with zero diagonal: H[r, r+1] = g(r), 1-indexed rows.
struct BandedHamiltonian {
    int ncut = 2;
    BandKind kind = BandKind::Boson;
    std::function<double(int)> g;

    static BandedHamiltonian boson(int ncut);
    static BandedHamiltonian linear(int ncut);
    ComplexMatrix dense() const;
    double norm() const;
};

// One coloring class: disjoint couplings (r, r+1) with weight g(r).
struct OneSparsePart {
    int ncut = 2;
    std::vector<std::pair<int, double>> couplings;  // (lower row r, weight)

    ComplexMatrix dense() const;
    double norm() const;
};

struct TrotterPlan {
    int order = 1;  // p in {1, 2}
    int steps = 1;  // N
    double total_time = 0.0;
    double tau() const { return total_time / steps; }
};

struct SqrtRotationPlan {
    int k = 6;           // arcsin truncation order
    int l = 12;          // GQSP truncation order (Laurent half-width)
    double delta = 0.1;  // domain margin
    double eps1 = 1e-4;
    double eps2 = 1e-4;
};

std::pair<OneSparsePart, OneSparsePart> two_color_split(const BandedHamiltonian& h);

// Dense e^{-i tau H_part} assembled block-by-block from X rotations.
ComplexMatrix exact_one_sparse_step(const OneSparsePart& part, double tau);

struct UPhiResult {
    Circuit circuit;           // registers: x(n), a(1)
    RealVector phases;
    double max_error = 0.0;    // max_x |arcsin(a_x) - (pi/2) <x0|U|x0>|
    std::vector<double> gammas;  // per-x eigenphase of the ancilla block
};

// Phase-interleaved shifted-ladder sequence encoding (2/pi) arcsin(sin(x tau^2))
// in the ancilla block for every register value x.
UPhiResult build_UPhi(double tau, const SqrtRotationPlan& plan, int n);

struct SqrtRotationResult {
    Circuit circuit;  // registers: g(1), a(1), x(n)
    UPhiResult uphi;
    GqspSequence wrap;
    int laurent_half = 0;
    double max_error = 0.0;  // max_x || map_x - R_X(2 sqrt(x) tau) ||
};

// GQSP wrap of U_Phi realizing the ancilla rotation R_X(2 sqrt(x) tau).
SqrtRotationResult build_sqrt_rotation(double tau, const SqrtRotationPlan& plan, int n);

struct TrotterReport {
    StateVector state;            // final renormalized state (ncut-dim padded)
    ComplexVector system_state;   // amplitudes on rows 1..ncut
    double success_probability = 1.0;
    double fidelity = 0.0;        // |<exact|final>| vs the dense oracle
    int steps = 0;
    double tau = 0.0;
    long wall_time_ms = 0;
};

// N product-formula steps of the two-coloring, each realized either by the
// exact dense one-sparse exponentials or by the full QSP circuit pipeline
// with per-step post-selection of the GQSP qubit.
TrotterReport trotter_simulate(const BandedHamiltonian& h, const TrotterPlan& plan,
                               const SqrtRotationPlan& sqrt_plan,
                               const ComplexVector& psi0, bool exact_backend = false);

struct ErrorBudget {
    int steps = 0;
    int k = 0;
    int l = 0;
    double delta = 0.1;
};

ErrorBudget error_budget(double eps_total, double total_time,
                         const BandedHamiltonian& h, int order);

}  // namespace iqsp
