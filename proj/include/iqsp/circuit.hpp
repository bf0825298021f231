#pragma once

#include <memory>
#include <string>
#include <vector>

#include "iqsp/numerics.hpp"

namespace iqsp {

// Contiguous qubit span inside the global layout; offset counts from the
// most significant end, matching StateVector's index order.
struct Register {
    std::string name;
    int width = 1;
    int offset = 0;
};

struct Circuit;

struct Gate {
    enum class Kind {
        XorRegister,    // dst ^= src
        AddConst,       // dst += k (mod 2^width), optionally predicated on src
        CompareLess,    // flag ^= (y < x)
        CSwapRegisters, // swap x, y when the control qubit is 1
        ControlledRx,   // RX(2 * value(src) * base_angle) on target qubit
        SingleQubit,    // fixed 2x2 on target qubit
        SubCircuit      // optionally controlled nested circuit
    };
    enum class Pred { Always, SrcOdd, SrcEven, SrcEquals };

    Kind kind;
    int r0 = -1, r1 = -1;   // register roles: src/dst, x/y
    long k = 0;             // AddConst amount / SrcEquals value
    Pred pred = Pred::Always;
    int pred_register = -1;
    long pred_value = 0;
    int target_qubit = -1;  // absolute qubit index
    double base_angle = 0.0;
    int gate_flag_qubit = -1;  // optional extra positive control
    ComplexMatrix u2;
    std::shared_ptr<Circuit> sub;
    int control_qubit = -1;    // SubCircuit control; -1 = unconditional
    bool control_value = false;
};

struct Circuit {
    std::vector<Register> registers;
    std::vector<Gate> gates;
    int total_qubits = 0;

    int add_register(const std::string& name, int width);
    const Register& reg(int idx) const { return registers.at(idx); }
    Circuit inverse() const;
};

// Exact statevector simulation; preserves the norm to 1e-10.
StateVector simulate(const Circuit& c, const StateVector& input);

// Conditional measurement of a register; returns the renormalized state and
// the branch probability.
std::pair<StateVector, double> postselect(const StateVector& s, const Register& reg,
                                          long value);

enum class ColorVariant { A, B };

// O_f on |x>|y>: y receives the partner index f(x) of the one-sparse
// coloring; rows without a partner are fixed points f(x) = x. ncut < 0
// defaults to 2^n - 1. Register 0 is x, register 1 is y.
Circuit build_Of(ColorVariant variant, int n, int ncut = -1);

// CMP |x>|y>|0> = |x>|y>|y<x>. Registers: x, y, flag(1).
Circuit build_cmp(int n);

// Controlled-RX ladder: RX(2 x tau) on the ancilla, or the shifted variant
// RX(2 x tau^2 - pi). Registers: x, ancilla(1).
Circuit build_U1(double tau, int n, bool shifted);

}  // namespace iqsp
