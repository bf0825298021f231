#include "iqsp/bosonic.hpp"

#include <chrono>
#include <cmath>

#include "iqsp/laurent.hpp"

namespace iqsp {

BandedHamiltonian BandedHamiltonian::boson(int ncut) {
    BandedHamiltonian h;
    h.ncut = ncut;
    h.kind = BandKind::Boson;
    h.g = [](int r) { return std::sqrt(static_cast<double>(r)); };
    return h;
}

BandedHamiltonian BandedHamiltonian::linear(int ncut) {
    BandedHamiltonian h;
    h.ncut = ncut;
    h.kind = BandKind::Linear;
    h.g = [](int r) { return static_cast<double>(r); };
    return h;
}

ComplexMatrix BandedHamiltonian::dense() const {
    ComplexMatrix m = ComplexMatrix::Zero(ncut, ncut);
    for (int r = 1; r < ncut; ++r) m(r - 1, r) = m(r, r - 1) = g(r);
    return m;
}

double BandedHamiltonian::norm() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense());
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix OneSparsePart::dense() const {
    ComplexMatrix m = ComplexMatrix::Zero(ncut, ncut);
    for (auto [r, w] : couplings) m(r - 1, r) = m(r, r - 1) = w;
    return m;
}

double OneSparsePart::norm() const {
    double n = 0.0;
    for (auto [r, w] : couplings) n = std::max(n, std::abs(w));
    return n;
}

std::pair<OneSparsePart, OneSparsePart> two_color_split(const BandedHamiltonian& h) {
    if (h.ncut < 2) throw precondition_error("two_color_split: ncut must be >= 2");
    OneSparsePart a, b;
    a.ncut = b.ncut = h.ncut;
    for (int r = 1; r < h.ncut; ++r) {
        if (r % 2 == 1)
            a.couplings.emplace_back(r, h.g(r));
        else
            b.couplings.emplace_back(r, h.g(r));
    }
    return {a, b};
}

ComplexMatrix exact_one_sparse_step(const OneSparsePart& part, double tau) {
    ComplexMatrix u = ComplexMatrix::Identity(part.ncut, part.ncut);
    for (auto [r, w] : part.couplings) {
        const double c = std::cos(w * tau), s = std::sin(w * tau);
        u(r - 1, r - 1) = c;
        u(r, r) = c;
        u(r - 1, r) = cxd(0, -s);
        u(r, r - 1) = cxd(0, -s);
    }
    return u;
}

namespace {

ComplexMatrix rx_matrix(double phi) {
    ComplexMatrix m(2, 2);
    m << std::cos(phi / 2), cxd(0, -std::sin(phi / 2)), cxd(0, -std::sin(phi / 2)),
        std::cos(phi / 2);
    return m;
}

ComplexMatrix zrot_matrix(double p) {
    ComplexMatrix m(2, 2);
    m << std::polar(1.0, p), 0, 0, std::polar(1.0, -p);
    return m;
}

// Per-x 2x2 of the phase-interleaved shifted ladder: the ancilla sees
// e^{i phi_0 Z} prod_j [ RX(2 x tau^2 - pi) e^{i phi_j Z} ].
ComplexMatrix uphi_block(const RealVector& phis, double tau, long x) {
    ComplexMatrix rx = rx_matrix(2.0 * x * tau * tau - kPi);
    ComplexMatrix u = zrot_matrix(phis[0]);
    for (Eigen::Index j = 1; j < phis.size(); ++j) u = u * rx * zrot_matrix(phis[j]);
    return u;
}

// Emit the U_Phi gate list for an existing layout; every gate optionally
// gated on a flag qubit so fixed-point rows see the identity.
void emit_uphi_gates(Circuit& c, const RealVector& phases, double tau, int x_reg,
                     int a_qubit, int flag_qubit) {
    auto push_zrot = [&](double p) {
        Gate g;
        g.kind = Gate::Kind::SingleQubit;
        g.target_qubit = a_qubit;
        g.gate_flag_qubit = flag_qubit;
        g.u2 = zrot_matrix(p);
        c.gates.push_back(g);
    };
    push_zrot(phases[0]);
    for (int j = 1; j < static_cast<int>(phases.size()); ++j) {
        Gate lad;
        lad.kind = Gate::Kind::ControlledRx;
        lad.r0 = x_reg;
        lad.target_qubit = a_qubit;
        lad.base_angle = tau * tau;
        lad.gate_flag_qubit = flag_qubit;
        c.gates.push_back(lad);
        Gate fx;
        fx.kind = Gate::Kind::SingleQubit;
        fx.target_qubit = a_qubit;
        fx.gate_flag_qubit = flag_qubit;
        fx.u2 = rx_matrix(-kPi);
        c.gates.push_back(fx);
        push_zrot(phases[j]);
    }
}

void emit_of_gates(Circuit& c, ColorVariant variant, int x_reg, int y_reg, int ncut) {
    Gate xorg;
    xorg.kind = Gate::Kind::XorRegister;
    xorg.r0 = x_reg;
    xorg.r1 = y_reg;
    c.gates.push_back(xorg);
    auto add = [&](long k, Gate::Pred pred, long pv) {
        Gate g;
        g.kind = Gate::Kind::AddConst;
        g.r1 = y_reg;
        g.k = k;
        g.pred = pred;
        g.pred_register = x_reg;
        g.pred_value = pv;
        c.gates.push_back(g);
    };
    if (variant == ColorVariant::A) {
        add(-1, Gate::Pred::Always, 0);
        add(+2, Gate::Pred::SrcOdd, 0);
        if (ncut % 2 == 1) add(-1, Gate::Pred::SrcEquals, ncut);
    } else {
        add(+1, Gate::Pred::Always, 0);
        add(-2, Gate::Pred::SrcOdd, 0);
        add(+1, Gate::Pred::SrcEquals, 1);
        if (ncut % 2 == 0) add(-1, Gate::Pred::SrcEquals, ncut);
    }
}

}  // namespace

UPhiResult build_UPhi(double tau, const SqrtRotationPlan& plan, int n) {
    const long xmax = (1L << n) - 1;
    if (static_cast<double>(xmax) * tau * tau > std::asin(1.0 - plan.delta))
        throw precondition_error("build_UPhi: x_max tau^2 above arcsin(1 - delta)");

    // Targets per register value: X-rotation-like block whose leading element
    // is the truncated (2/pi) arcsin at a_x = sin(x tau^2).
    RealPolynomial p1 = arcsin_taylor(plan.k);
    std::vector<ComplexMatrix> targets;
    for (long x = 0; x <= xmax; ++x) {
        double a = std::sin(x * tau * tau);
        double p = p1.eval(a);
        double q = std::sqrt(std::max(0.0, 1.0 - p * p));
        ComplexMatrix t(2, 2);
        t << p, cxd(0, q), cxd(0, q), p;
        targets.push_back(t);
    }

    auto resid = [&](const RealVector& v) {
        Eigen::VectorXd r(8 * (xmax + 1));
        for (long x = 0; x <= xmax; ++x) {
            ComplexMatrix d =
                uphi_block(v, tau, x) - targets[static_cast<std::size_t>(x)];
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    r[8 * x + 4 * i + 2 * j] = d(i, j).real();
                    r[8 * x + 4 * i + 2 * j + 1] = d(i, j).imag();
                }
        }
        return r;
    };

    int d = std::max(2 * plan.k + 1, 9);
    RealVector best;
    double best_res = 1e99;
    unsigned seed = 12345;
    for (int attempt = 0; attempt < 10 && best_res > plan.eps1 / 8.0; ++attempt) {
        RealVector v = RealVector::Zero(d + 1);
        if (attempt > 0) {
            for (int j = 0; j <= d; ++j) {
                seed = seed * 1664525u + 1013904223u;
                v[j] = 0.4 * (static_cast<double>(seed % 10007) / 10007.0 - 0.5);
            }
        }
        Eigen::VectorXd r = resid(v);
        double lm = 1e-3;
        for (int it = 0; it < 300; ++it) {
            if (r.lpNorm<Eigen::Infinity>() < 1e-12) break;
            Eigen::MatrixXd jac(r.size(), d + 1);
            const double h = 1e-7;
            for (int j = 0; j <= d; ++j) {
                RealVector v2 = v;
                v2[j] += h;
                jac.col(j) = (resid(v2) - r) / h;
            }
            Eigen::MatrixXd a = jac.transpose() * jac;
            a.diagonal().array() += lm;
            Eigen::VectorXd dv = a.ldlt().solve(-jac.transpose() * r);
            Eigen::VectorXd rn = resid(v + dv);
            if (rn.norm() < r.norm()) {
                v += dv;
                r = rn;
                lm = std::max(lm / 3.0, 1e-12);
            } else {
                lm *= 10.0;
                if (lm > 1e9) break;
            }
        }
        double res = r.lpNorm<Eigen::Infinity>();
        if (res < best_res) {
            best_res = res;
            best = v;
        }
        if (attempt >= 3 && best_res > plan.eps1 / 8.0 && attempt % 2 == 1) d += 4;
    }

    UPhiResult out;
    out.phases = best;
    Circuit c;
    c.add_register("x", n);
    c.add_register("a", 1);
    emit_uphi_gates(c, best, tau, 0, n, -1);
    out.circuit = c;

    double worst = 0.0;
    out.gammas.resize(static_cast<std::size_t>(xmax) + 1);
    for (long x = 0; x <= xmax; ++x) {
        ComplexMatrix b = uphi_block(best, tau, x);
        double a = std::sin(x * tau * tau);
        worst =
            std::max(worst, std::abs(std::asin(a) - (kPi / 2.0) * b(0, 0).real()));
        worst = std::max(worst, (kPi / 2.0) * std::abs(b(0, 0).imag()));
        out.gammas[static_cast<std::size_t>(x)] =
            std::acos(std::clamp(b(0, 0).real(), -1.0, 1.0));
    }
    out.max_error = worst;
    if (worst > plan.eps1)
        throw solver_failure("build_UPhi: per-x error above eps1", worst);
    return out;
}

namespace {

// Real-coefficient Laurent fit g(gamma) = sum c_k e^{i k gamma} with
// prescribed values at the accessed eigenphases and minimal high-order
// weight; real coefficients give the conjugate values at -gamma.
ComplexVector fit_wrap_coeffs(const std::vector<double>& gammas,
                              const std::vector<cxd>& values, int half) {
    const int m = 2 * half + 1;
    const int ncon = 2 * static_cast<int>(gammas.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(ncon, m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(ncon);
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        for (int k = -half; k <= half; ++k) {
            a(2 * j, k + half) = std::cos(k * gammas[j]);
            a(2 * j + 1, k + half) = std::sin(k * gammas[j]);
        }
        b[2 * j] = values[j].real();
        b[2 * j + 1] = values[j].imag();
    }
    Eigen::VectorXd w(m);
    for (int k = -half; k <= half; ++k)
        w[k + half] = 1.0 + std::pow(static_cast<double>(k), 4);
    Eigen::MatrixXd winv_at = w.cwiseInverse().asDiagonal() * a.transpose();
    Eigen::MatrixXd gram = a * winv_at;
    gram.diagonal().array() += 1e-12;
    Eigen::VectorXd lambda = gram.ldlt().solve(b);
    Eigen::VectorXd c = winv_at * lambda;
    ComplexVector out(m);
    for (int i = 0; i < m; ++i) out[i] = c[i];
    return out;
}

double laurent_sup(const ComplexVector& c, int half, int points = 1024) {
    double sup = 0.0;
    for (int i = 0; i < points; ++i) {
        double gq = 2.0 * kPi * i / points;
        cxd s = 0.0;
        for (int k = -half; k <= half; ++k) s += c[k + half] * std::polar(1.0, k * gq);
        sup = std::max(sup, std::abs(s));
    }
    return sup;
}

ComplexMatrix laurent_of_matrix(const ComplexVector& c, int half,
                                const ComplexMatrix& v) {
    std::vector<ComplexMatrix> pos(half + 1), neg(half + 1);
    pos[0] = neg[0] = ComplexMatrix::Identity(v.rows(), v.cols());
    for (int k = 1; k <= half; ++k) {
        pos[k] = pos[k - 1] * v;
        neg[k] = neg[k - 1] * v.adjoint();
    }
    ComplexMatrix out = ComplexMatrix::Zero(v.rows(), v.cols());
    for (int k = -half; k <= half; ++k)
        out += c[k + half] * ((k >= 0) ? pos[k] : neg[-k]);
    return out;
}

}  // namespace

SqrtRotationResult build_sqrt_rotation(double tau, const SqrtRotationPlan& plan, int n) {
    SqrtRotationResult out;
    out.uphi = build_UPhi(tau, plan, n);
    const long xmax = (1L << n) - 1;

    // g(+-gamma_x) = e^{ -+ i sqrt(x) tau }; gamma = 0 pinned to 1 for the
    // gated fixed-point subspace.
    std::vector<double> gammas{0.0};
    std::vector<cxd> values{cxd(1.0, 0.0)};
    for (long x = 0; x <= xmax; ++x) {
        gammas.push_back(out.uphi.gammas[static_cast<std::size_t>(x)]);
        values.push_back(std::polar(1.0, -std::sqrt(static_cast<double>(x)) * tau));
    }

    int half = std::max(plan.l, static_cast<int>(gammas.size()) + 2);
    ComplexVector c;
    for (;; half += 4) {
        c = fit_wrap_coeffs(gammas, values, half);
        if (laurent_sup(c, half) <= 1.0 - 1e-9) break;
        if (half > 160)
            throw construction_failure("build_sqrt_rotation: wrap fit infeasible");
    }
    out.laurent_half = half;

    ComplexPolynomial shifted;
    shifted.basis = Basis::Monomial;
    shifted.coefficients = c;  // G(z) = z^half sum c_k z^k
    GqspSolveResult wrap = solve_gqsp_phases(shifted, 2 * half);
    out.wrap = wrap.sequence;

    // Registers g(1), a(1), x(n); U_Phi lives on (a, x).
    Circuit c2;
    c2.add_register("g", 1);
    c2.add_register("a", 1);
    c2.add_register("x", n);
    auto uphi_sub = std::make_shared<Circuit>();
    uphi_sub->registers = c2.registers;
    uphi_sub->total_qubits = c2.total_qubits;
    emit_uphi_gates(*uphi_sub, out.uphi.phases, tau, 2, 1, -1);
    auto uphi_dag = std::make_shared<Circuit>(uphi_sub->inverse());

    auto push_r = [&](double th, double om, double lm) {
        Gate g;
        g.kind = Gate::Kind::SingleQubit;
        g.target_qubit = 0;
        g.u2 = gqsp_rotation(th, om, lm);
        c2.gates.push_back(g);
    };
    push_r(out.wrap.thetas[0], out.wrap.omegas[0], out.wrap.lambda);
    for (int j = 1; j < static_cast<int>(out.wrap.thetas.size()); ++j) {
        Gate cu;
        cu.kind = Gate::Kind::SubCircuit;
        cu.sub = uphi_sub;
        cu.control_qubit = 0;
        cu.control_value = false;  // |0><0| x U_Phi + |1><1| x I
        c2.gates.push_back(cu);
        push_r(out.wrap.thetas[j], out.wrap.omegas[j], 0.0);
    }
    for (int i = 0; i < half; ++i) {
        Gate du;
        du.kind = Gate::Kind::SubCircuit;
        du.sub = uphi_dag;
        c2.gates.push_back(du);
    }
    out.circuit = c2;

    // Exhaustive per-x check of the post-selected ancilla map against
    // R_X(2 sqrt(x) tau).
    double worst = 0.0;
    for (long x = 0; x <= xmax; ++x) {
        ComplexMatrix vx = uphi_block(out.uphi.phases, tau, x);
        ComplexMatrix px = laurent_of_matrix(c, half, vx);
        ComplexMatrix target = rx_matrix(2.0 * std::sqrt(static_cast<double>(x)) * tau);
        worst = std::max(worst, max_abs(ComplexMatrix(px - target)));
    }
    out.max_error = worst;
    return out;
}

namespace {

// One product-formula factor: the mirrored transfer circuit around the GQSP
// square-root rotation. Registers: g(1), a(1), e(1), x(n), y(n).
Circuit build_color_step(ColorVariant variant, double tau, const SqrtRotationResult& sr,
                         int n, int ncut) {
    Circuit c;
    c.add_register("g", 1);
    c.add_register("a", 1);
    c.add_register("e", 1);
    int rx = c.add_register("x", n);
    int ry = c.add_register("y", n);
    const int a_qubit = 1, e_qubit = 2;

    emit_of_gates(c, variant, rx, ry, ncut);
    Gate cmp;
    cmp.kind = Gate::Kind::CompareLess;
    cmp.r0 = rx;
    cmp.r1 = ry;
    cmp.target_qubit = a_qubit;
    c.gates.push_back(cmp);
    Gate csw;
    csw.kind = Gate::Kind::CSwapRegisters;
    csw.r0 = rx;
    csw.r1 = ry;
    csw.control_qubit = a_qubit;
    c.gates.push_back(csw);
    // e <- (x != y): two ordered comparators onto the same flag.
    Gate e1;
    e1.kind = Gate::Kind::CompareLess;
    e1.r0 = rx;
    e1.r1 = ry;
    e1.target_qubit = e_qubit;
    c.gates.push_back(e1);
    Gate e2;
    e2.kind = Gate::Kind::CompareLess;
    e2.r0 = ry;
    e2.r1 = rx;
    e2.target_qubit = e_qubit;
    c.gates.push_back(e2);

    // GQSP wrap on (g; a, x), U_Phi gated on e.
    auto uphi_sub = std::make_shared<Circuit>();
    uphi_sub->registers = c.registers;
    uphi_sub->total_qubits = c.total_qubits;
    emit_uphi_gates(*uphi_sub, sr.uphi.phases, tau, rx, a_qubit, e_qubit);
    auto uphi_dag = std::make_shared<Circuit>(uphi_sub->inverse());
    auto push_r = [&](double th, double om, double lm) {
        Gate g;
        g.kind = Gate::Kind::SingleQubit;
        g.target_qubit = 0;
        g.u2 = gqsp_rotation(th, om, lm);
        c.gates.push_back(g);
    };
    push_r(sr.wrap.thetas[0], sr.wrap.omegas[0], sr.wrap.lambda);
    for (int j = 1; j < static_cast<int>(sr.wrap.thetas.size()); ++j) {
        Gate cu;
        cu.kind = Gate::Kind::SubCircuit;
        cu.sub = uphi_sub;
        cu.control_qubit = 0;
        cu.control_value = false;
        c.gates.push_back(cu);
        push_r(sr.wrap.thetas[j], sr.wrap.omegas[j], 0.0);
    }
    for (int i = 0; i < sr.laurent_half; ++i) {
        Gate du;
        du.kind = Gate::Kind::SubCircuit;
        du.sub = uphi_dag;
        c.gates.push_back(du);
    }

    // Mirror: undo e, swap back, restore the comparator flag, uncompute y.
    c.gates.push_back(e2);
    c.gates.push_back(e1);
    c.gates.push_back(csw);
    c.gates.push_back(cmp);
    Circuit of_inv;
    of_inv.registers = c.registers;
    of_inv.total_qubits = c.total_qubits;
    emit_of_gates(of_inv, variant, rx, ry, ncut);
    Circuit inv = of_inv.inverse();
    for (const auto& g : inv.gates) c.gates.push_back(g);
    return c;
}

}  // namespace

TrotterReport trotter_simulate(const BandedHamiltonian& h, const TrotterPlan& plan,
                               const SqrtRotationPlan& sqrt_plan,
                               const ComplexVector& psi0, bool exact_backend) {
    if (plan.order != 1 && plan.order != 2)
        throw precondition_error("trotter_simulate: order must be 1 or 2");
    if (psi0.size() != h.ncut)
        throw precondition_error("trotter_simulate: psi0 dimension mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    auto [ha, hb] = two_color_split(h);
    const double tau = plan.tau();

    TrotterReport rep;
    rep.steps = plan.steps;
    rep.tau = tau;
    ComplexVector start = psi0 / psi0.norm();
    double prob = 1.0;

    if (exact_backend) {
        ComplexMatrix ua = exact_one_sparse_step(ha, tau);
        ComplexMatrix ub = exact_one_sparse_step(hb, tau);
        ComplexMatrix ua_half = exact_one_sparse_step(ha, tau / 2.0);
        ComplexVector psi = start;
        for (int s = 0; s < plan.steps; ++s) {
            if (plan.order == 1)
                psi = (ub * (ua * psi)).eval();
            else
                psi = (ua_half * (ub * (ua_half * psi))).eval();
        }
        rep.system_state = psi;
    } else {
        if (h.kind != BandKind::Boson && h.kind != BandKind::Custom &&
            h.kind != BandKind::Linear)
            throw precondition_error("trotter_simulate: unsupported kind");
        int n = 1;
        while ((1 << n) - 1 < h.ncut) ++n;
        if ((1 << n) - 1 != h.ncut)
            throw precondition_error(
                "trotter_simulate: circuit backend needs ncut = 2^n - 1");
        if (h.kind != BandKind::Boson)
            throw precondition_error(
                "trotter_simulate: circuit backend implements the boson kind");
        SqrtRotationResult sr_full = build_sqrt_rotation(tau, sqrt_plan, n);
        Circuit step_a = build_color_step(ColorVariant::A, tau, sr_full, n, h.ncut);
        Circuit step_b = build_color_step(ColorVariant::B, tau, sr_full, n, h.ncut);
        Circuit step_a_half;
        if (plan.order == 2) {
            SqrtRotationResult sr_half = build_sqrt_rotation(tau / 2.0, sqrt_plan, n);
            step_a_half =
                build_color_step(ColorVariant::A, tau / 2.0, sr_half, n, h.ncut);
        }
        const int total = step_a.total_qubits;
        StateVector s;
        s.num_qubits = total;
        s.amplitudes = ComplexVector::Zero(Eigen::Index{1} << total);
        for (int r = 1; r <= h.ncut; ++r)
            s.amplitudes[static_cast<Eigen::Index>(r) << n] = start[r - 1];
        const Register& greg = step_a.registers[0];
        auto run = [&](const Circuit& c) {
            s = simulate(c, s);
            auto [sp, p] = postselect(s, greg, 0);
            s = sp;
            prob *= p;
            if (prob < 1e-12)
                throw simulation_failure("trotter_simulate: success probability vanished");
        };
        for (int st = 0; st < plan.steps; ++st) {
            if (plan.order == 1) {
                run(step_a);
                run(step_b);
            } else {
                run(step_a_half);
                run(step_b);
                run(step_a_half);
            }
        }
        rep.state = s;
        rep.system_state = ComplexVector::Zero(h.ncut);
        for (int r = 1; r <= h.ncut; ++r)
            rep.system_state[r - 1] = s.amplitudes[static_cast<Eigen::Index>(r) << n];
    }

    ComplexMatrix uex = mat_exp(h.dense(), plan.total_time);
    ComplexVector exact = uex * start;
    rep.success_probability = prob;
    rep.fidelity = std::abs(exact.dot(rep.system_state));
    rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

ErrorBudget error_budget(double eps_total, double total_time,
                         const BandedHamiltonian& h, int order) {
    if (!(eps_total > 0.0 && eps_total <= 0.1))
        throw domain_error("error_budget: eps_total outside (0, 0.1]");
    if (order != 1 && order != 2)
        throw domain_error("error_budget: order must be 1 or 2");
    auto [ha, hb] = two_color_split(h);
    const double lam = std::max(ha.norm(), hb.norm());
    const double p = order;
    // 2^{p+1} Lambda^{p+1} tau^{p+1} = eps_tot / (2N) with tau = T/N.
    double n_real = std::pow(std::pow(2.0, p + 1.0) * std::pow(lam, p + 1.0) *
                                 std::pow(total_time, p + 1.0) * 2.0 / eps_total,
                             1.0 / p);
    ErrorBudget out;
    out.steps = std::max(1, static_cast<int>(std::ceil(n_real)));
    out.delta = 0.1;
    double tau = total_time / out.steps;
    while (h.ncut * tau * tau > std::asin(1.0 - out.delta)) {
        out.steps *= 2;
        tau = total_time / out.steps;
        if (out.steps > (1 << 28))
            throw construction_failure("error_budget: x_max constraint infeasible");
    }
    const double eps_step = eps_total / (2.0 * out.steps);
    const double eps1 = eps_step / 2.0, eps2 = eps_step / 2.0;
    double amax = std::sin(h.ncut * tau * tau);
    int k = 1;
    auto arcsin_scaled = [](double x) { return (2.0 / kPi) * std::asin(x); };
    for (; k < 40; ++k)
        if (grid_error(arcsin_taylor(k), arcsin_scaled, -amax, amax, 101) <=
            eps1 * (2.0 / kPi) / 2.0)
            break;
    out.k = k;
    out.l = std::max(4, static_cast<int>(std::ceil(std::log(1.0 / eps2))) + 2);
    return out;
}

}  // namespace iqsp
