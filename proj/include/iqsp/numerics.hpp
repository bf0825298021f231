#pragma once

#include <vector>

#include "iqsp/common.hpp"

namespace iqsp {

// Dense statevector over num_qubits qubits, amplitudes in lexicographic
// basis order (qubit 0 is the most significant bit of the index).
struct StateVector {
    int num_qubits = 0;
    ComplexVector amplitudes;

    static StateVector basis(int num_qubits, std::size_t index);
    double norm() const { return amplitudes.norm(); }
};

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);
bool is_hermitian(const ComplexMatrix& h, double tol = 1e-10);
double max_abs(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli and related 2x2 constants.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

// e^{-iHt} for Hermitian H via eigendecomposition. Dimension capped at 2^12.
ComplexMatrix mat_exp(const ComplexMatrix& h, double t);

// Bessel function of the first kind J_n(t), n <= 200, |t| <= 50.
double bessel_j(int n, double t);

// Chebyshev polynomial of the first kind T_n(x), |x| <= 1.
double chebyshev_t(int n, double x);

// Fidelity-style distance modulo global phase: 1 - |tr(A^dag B)| / dim.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// max-entry distance modulo global phase (optimal phase from tr(A^dag B)).
double max_abs_mod_phase(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace iqsp
