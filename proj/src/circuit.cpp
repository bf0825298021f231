#include "iqsp/circuit.hpp"

#include <cmath>
#include <functional>

namespace iqsp {

int Circuit::add_register(const std::string& name, int width) {
    Register r;
    r.name = name;
    r.width = width;
    r.offset = total_qubits;
    registers.push_back(r);
    total_qubits += width;
    return static_cast<int>(registers.size()) - 1;
}

namespace {

Gate invert_gate(const Gate& g) {
    Gate inv = g;
    switch (g.kind) {
        case Gate::Kind::AddConst:
            inv.k = -g.k;
            break;
        case Gate::Kind::ControlledRx:
            inv.base_angle = -g.base_angle;
            break;
        case Gate::Kind::SingleQubit:
            inv.u2 = g.u2.adjoint();
            break;
        case Gate::Kind::SubCircuit:
            inv.sub = std::make_shared<Circuit>(g.sub->inverse());
            break;
        default:
            break;  // Xor, CompareLess, CSwap are involutions
    }
    return inv;
}

}  // namespace

Circuit Circuit::inverse() const {
    Circuit inv;
    inv.registers = registers;
    inv.total_qubits = total_qubits;
    for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        inv.gates.push_back(invert_gate(*it));
    return inv;
}

namespace {

inline long reg_value(std::size_t idx, const Register& r, int total) {
    int shift = total - r.offset - r.width;
    return static_cast<long>((idx >> shift) & ((std::size_t{1} << r.width) - 1));
}

inline std::size_t with_reg_value(std::size_t idx, const Register& r, int total,
                                  long value) {
    int shift = total - r.offset - r.width;
    std::size_t mask = ((std::size_t{1} << r.width) - 1) << shift;
    return (idx & ~mask) | ((static_cast<std::size_t>(value) << shift) & mask);
}

inline bool qubit_set(std::size_t idx, int qubit, int total) {
    return (idx >> (total - 1 - qubit)) & 1;
}

bool pred_holds(const Gate& g, std::size_t idx, const Circuit& c) {
    if (g.pred == Gate::Pred::Always) return true;
    long v = reg_value(idx, c.reg(g.pred_register), c.total_qubits);
    switch (g.pred) {
        case Gate::Pred::SrcOdd:
            return v % 2 == 1;
        case Gate::Pred::SrcEven:
            return v % 2 == 0;
        case Gate::Pred::SrcEquals:
            return v == g.pred_value;
        default:
            return true;
    }
}

void apply_permutation(ComplexVector& amps,
                       const std::function<std::size_t(std::size_t)>& perm) {
    ComplexVector out = ComplexVector::Zero(amps.size());
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        if (amps[i] == cxd(0, 0)) continue;
        out[static_cast<Eigen::Index>(perm(static_cast<std::size_t>(i)))] += amps[i];
    }
    amps.swap(out);
}

void apply_two_level(ComplexVector& amps, int qubit, int total,
                     const std::function<ComplexMatrix(std::size_t)>& u_of,
                     const std::function<bool(std::size_t)>& active) {
    const std::size_t bit = std::size_t{1} << (total - 1 - qubit);
    for (std::size_t i = 0; i < static_cast<std::size_t>(amps.size()); ++i) {
        if (i & bit) continue;
        if (!active(i)) continue;
        ComplexMatrix u = u_of(i);
        cxd a0 = amps[static_cast<Eigen::Index>(i)];
        cxd a1 = amps[static_cast<Eigen::Index>(i | bit)];
        amps[static_cast<Eigen::Index>(i)] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[static_cast<Eigen::Index>(i | bit)] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void run_gates(const Circuit& c, ComplexVector& amps, int total, int ctrl_qubit,
               bool ctrl_value) {
    auto controlled = [&](std::size_t idx) {
        return ctrl_qubit < 0 || qubit_set(idx, ctrl_qubit, total) == ctrl_value;
    };
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case Gate::Kind::XorRegister: {
                const Register& src = c.reg(g.r0);
                const Register& dst = c.reg(g.r1);
                apply_permutation(amps, [&](std::size_t i) {
                    if (!controlled(i)) return i;
                    long s = reg_value(i, src, total);
                    long d = reg_value(i, dst, total);
                    return with_reg_value(i, dst, total, d ^ s);
                });
                break;
            }
            case Gate::Kind::AddConst: {
                const Register& dst = c.reg(g.r1);
                const long mod = 1L << dst.width;
                apply_permutation(amps, [&](std::size_t i) {
                    if (!controlled(i) || !pred_holds(g, i, c)) return i;
                    long d = reg_value(i, dst, total);
                    long v = ((d + g.k) % mod + mod) % mod;
                    return with_reg_value(i, dst, total, v);
                });
                break;
            }
            case Gate::Kind::CompareLess: {
                const Register& x = c.reg(g.r0);
                const Register& y = c.reg(g.r1);
                const int flag = g.target_qubit;
                apply_permutation(amps, [&](std::size_t i) {
                    if (!controlled(i)) return i;
                    bool less = reg_value(i, y, total) < reg_value(i, x, total);
                    if (!less) return i;
                    return i ^ (std::size_t{1} << (total - 1 - flag));
                });
                break;
            }
            case Gate::Kind::CSwapRegisters: {
                const Register& x = c.reg(g.r0);
                const Register& y = c.reg(g.r1);
                apply_permutation(amps, [&](std::size_t i) {
                    if (!controlled(i)) return i;
                    if (!qubit_set(i, g.control_qubit, total)) return i;
                    long vx = reg_value(i, x, total);
                    long vy = reg_value(i, y, total);
                    std::size_t j = with_reg_value(i, x, total, vy);
                    return with_reg_value(j, y, total, vx);
                });
                break;
            }
            case Gate::Kind::ControlledRx: {
                const Register& src = c.reg(g.r0);
                apply_two_level(
                    amps, g.target_qubit, total,
                    [&](std::size_t i) {
                        double phi = 2.0 * g.base_angle *
                                     static_cast<double>(reg_value(i, src, total));
                        ComplexMatrix rx(2, 2);
                        rx << std::cos(phi / 2), cxd(0, -std::sin(phi / 2)),
                            cxd(0, -std::sin(phi / 2)), std::cos(phi / 2);
                        return rx;
                    },
                    [&](std::size_t i) {
                        if (!controlled(i)) return false;
                        if (g.gate_flag_qubit >= 0 &&
                            !qubit_set(i, g.gate_flag_qubit, total))
                            return false;
                        return true;
                    });
                break;
            }
            case Gate::Kind::SingleQubit: {
                apply_two_level(
                    amps, g.target_qubit, total, [&](std::size_t) { return g.u2; },
                    [&](std::size_t i) {
                        if (!controlled(i)) return false;
                        if (g.gate_flag_qubit >= 0 &&
                            !qubit_set(i, g.gate_flag_qubit, total))
                            return false;
                        return true;
                    });
                break;
            }
            case Gate::Kind::SubCircuit: {
                if (ctrl_qubit >= 0 && g.control_qubit >= 0 &&
                    g.control_qubit != ctrl_qubit)
                    throw simulation_failure("simulate: nested controls unsupported");
                int cq = (g.control_qubit >= 0) ? g.control_qubit : ctrl_qubit;
                bool cv = (g.control_qubit >= 0) ? g.control_value : ctrl_value;
                run_gates(*g.sub, amps, total, cq, cv);
                break;
            }
        }
    }
}

}  // namespace

StateVector simulate(const Circuit& c, const StateVector& input) {
    if (input.num_qubits != c.total_qubits)
        throw domain_error("simulate: state width does not match circuit");
    StateVector out = input;
    run_gates(c, out.amplitudes, c.total_qubits, -1, false);
    return out;
}

std::pair<StateVector, double> postselect(const StateVector& s, const Register& reg,
                                          long value) {
    if (value < 0 || value >= (1L << reg.width))
        throw domain_error("postselect: value out of register range");
    StateVector out = s;
    double p = 0.0;
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
        if (reg_value(static_cast<std::size_t>(i), reg, s.num_qubits) == value)
            p += std::norm(s.amplitudes[i]);
        else
            out.amplitudes[i] = 0.0;
    }
    if (p < 1e-24) throw postselection_failure("postselect: zero-probability branch");
    out.amplitudes /= std::sqrt(p);
    return {out, p};
}

Circuit build_Of(ColorVariant variant, int n, int ncut) {
    if (n < 2) throw precondition_error("build_Of: width must be >= 2");
    if (ncut < 0) ncut = (1 << n) - 1;
    if (ncut >= (1 << n)) throw precondition_error("build_Of: ncut above register range");
    Circuit c;
    int rx = c.add_register("x", n);
    int ry = c.add_register("y", n);
    Gate xorg;
    xorg.kind = Gate::Kind::XorRegister;
    xorg.r0 = rx;
    xorg.r1 = ry;
    c.gates.push_back(xorg);
    auto add = [&](long k, Gate::Pred pred, long pv) {
        Gate g;
        g.kind = Gate::Kind::AddConst;
        g.r1 = ry;
        g.k = k;
        g.pred = pred;
        g.pred_register = rx;
        g.pred_value = pv;
        c.gates.push_back(g);
    };
    if (variant == ColorVariant::A) {
        // pairs (1,2),(3,4),...: f = x-1 if even, x+1 if odd
        add(-1, Gate::Pred::Always, 0);
        add(+2, Gate::Pred::SrcOdd, 0);
        if (ncut % 2 == 1) add(-1, Gate::Pred::SrcEquals, ncut);  // unpaired top row
    } else {
        // pairs (2,3),(4,5),...: f = x+1 if even, x-1 if odd; row 1 fixed
        add(+1, Gate::Pred::Always, 0);
        add(-2, Gate::Pred::SrcOdd, 0);
        add(+1, Gate::Pred::SrcEquals, 1);
        if (ncut % 2 == 0) add(-1, Gate::Pred::SrcEquals, ncut);
    }
    return c;
}

Circuit build_cmp(int n) {
    Circuit c;
    int rx = c.add_register("x", n);
    int ry = c.add_register("y", n);
    c.add_register("flag", 1);
    Gate g;
    g.kind = Gate::Kind::CompareLess;
    g.r0 = rx;
    g.r1 = ry;
    g.target_qubit = 2 * n;
    c.gates.push_back(g);
    return c;
}

Circuit build_U1(double tau, int n, bool shifted) {
    if (n > 10) throw precondition_error("build_U1: width must be <= 10");
    Circuit c;
    int rx = c.add_register("x", n);
    (void)rx;
    c.add_register("a", 1);
    Gate g;
    g.kind = Gate::Kind::ControlledRx;
    g.r0 = 0;
    g.target_qubit = n;
    g.base_angle = shifted ? tau * tau : tau;
    c.gates.push_back(g);
    if (shifted) {
        Gate fx;
        fx.kind = Gate::Kind::SingleQubit;
        fx.target_qubit = n;
        double phi = -kPi;
        fx.u2 = ComplexMatrix(2, 2);
        fx.u2 << std::cos(phi / 2), cxd(0, -std::sin(phi / 2)),
            cxd(0, -std::sin(phi / 2)), std::cos(phi / 2);
        c.gates.push_back(fx);
    }
    return c;
}

}  // namespace iqsp
