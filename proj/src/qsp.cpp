#include "iqsp/qsp.hpp"

#include <algorithm>
#include <cmath>

#include "iqsp/laurent.hpp"
#include "iqsp/numerics.hpp"

namespace iqsp {

using detail::complete_pair;
using detail::poly_eval;

ComplexMatrix eval_signal(const SignalRotation& w) {
    if (!std::isfinite(w.theta)) throw domain_error("eval_signal: non-finite angle");
    ComplexMatrix m(2, 2);
    const double h = 0.5 * w.theta;
    if (w.axis == Axis::Z) {
        m << std::polar(1.0, h), 0, 0, std::polar(1.0, -h);
    } else {
        m << std::cos(h), cxd(0, std::sin(h)), cxd(0, std::sin(h)), std::cos(h);
    }
    return m;
}

namespace {

ComplexMatrix phase_gate(Axis axis, double phi) {
    // e^{i phi X} or e^{i phi Z}
    return eval_signal({axis, 2.0 * phi});
}

}  // namespace

ComplexMatrix eval_qsp(const QspSequence& seq, double theta) {
    if (seq.phases.size() < 1) throw domain_error("eval_qsp: empty phase vector");
    const Axis sig = (seq.convention == QspConvention::WZ_SX) ? Axis::Z : Axis::X;
    const Axis proc = (seq.convention == QspConvention::WZ_SX) ? Axis::X : Axis::Z;
    ComplexMatrix u = phase_gate(proc, seq.phases[0]);
    ComplexMatrix w = eval_signal({sig, theta});
    for (Eigen::Index k = 1; k < seq.phases.size(); ++k)
        u = u * w * phase_gate(proc, seq.phases[k]);
    return u;
}

ComplexMatrix gqsp_rotation(double theta, double omega, double lambda) {
    ComplexMatrix r(2, 2);
    r << std::polar(1.0, lambda + omega) * std::cos(theta),
        std::polar(1.0, omega) * std::sin(theta),
        std::polar(1.0, lambda) * std::sin(theta), -std::cos(theta);
    return r;
}

ComplexMatrix eval_gqsp(const GqspSequence& seq, const ComplexMatrix& u) {
    if (seq.thetas.size() != seq.omegas.size() || seq.thetas.size() < 1)
        throw domain_error("eval_gqsp: malformed sequence");
    if (!is_unitary(u)) throw domain_error("eval_gqsp: signal not unitary");
    const Eigen::Index n = u.rows();
    ComplexMatrix ctrl0 = ComplexMatrix::Identity(2 * n, 2 * n);
    ctrl0.topLeftCorner(n, n) = u;
    ComplexMatrix id2 = ComplexMatrix::Identity(n, n);
    ComplexMatrix acc =
        kron(gqsp_rotation(seq.thetas[0], seq.omegas[0], seq.lambda), id2);
    for (Eigen::Index j = 1; j < seq.thetas.size(); ++j)
        acc = kron(gqsp_rotation(seq.thetas[j], seq.omegas[j], 0.0), id2) * ctrl0 * acc;
    return acc;
}

ComplexMatrix eval_gqsp_su2(const GqspSequence& seq, const ComplexMatrix& w) {
    ComplexMatrix acc = gqsp_rotation(seq.thetas[0], seq.omegas[0], seq.lambda);
    for (Eigen::Index j = 1; j < seq.thetas.size(); ++j)
        acc = gqsp_rotation(seq.thetas[j], seq.omegas[j], 0.0) * w * acc;
    return acc;
}

namespace {

// -------- GQSP completion + layer stripping ---------------------------------

struct StrippedGqsp {
    GqspSequence seq;
    bool ok = true;
};

StrippedGqsp gqsp_strip(ComplexVector p, ComplexVector q) {
    const int d = static_cast<int>(p.size()) - 1;
    StrippedGqsp out;
    out.seq.thetas = RealVector::Zero(d + 1);
    out.seq.omegas = RealVector::Zero(d + 1);
    for (int j = d; j >= 1; --j) {
        const cxd pd = p[j], qd = q[j];
        double theta, omega;
        if (std::abs(pd) < 1e-300 && std::abs(qd) < 1e-300) {
            theta = 0.0;
            omega = 0.0;
        } else {
            theta = std::atan2(std::abs(qd), std::abs(pd));
            omega = std::arg(pd) - std::arg(qd);
            if (std::abs(qd) < 1e-300) omega = 0.0;
        }
        out.seq.thetas[j] = theta;
        out.seq.omegas[j] = omega;
        const double c = std::cos(theta), s = std::sin(theta);
        const cxd em = std::polar(1.0, -omega);
        ComplexVector zp(j + 1), qn(j + 1);
        for (int k = 0; k <= j; ++k) {
            zp[k] = em * c * p[k] + s * q[k];
            qn[k] = em * s * p[k] - c * q[k];
        }
        // zp must lose its constant term, qn its degree-j term.
        ComplexVector pnew(j), qnew(j);
        for (int k = 0; k < j; ++k) {
            pnew[k] = zp[k + 1];
            qnew[k] = qn[k];
        }
        p = pnew;
        q = qnew;
    }
    const cxd p0 = p[0], q0 = q[0];
    out.seq.thetas[0] = std::atan2(std::abs(q0), std::abs(p0));
    out.seq.lambda = (std::abs(q0) > 1e-300) ? std::arg(q0) : 0.0;
    out.seq.omegas[0] = std::arg(p0) - out.seq.lambda;
    return out;
}

double gqsp_residual(const GqspSequence& seq, const ComplexVector& p, int points = 257) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        cxd z = std::polar(1.0, 2.0 * kPi * i / points);
        ComplexMatrix w(2, 2);
        w << z, 0, 0, 1;
        cxd got = eval_gqsp_su2(seq, w)(0, 0);
        worst = std::max(worst, std::abs(got - poly_eval(p, z)));
    }
    return worst;
}

// Damped Gauss-Newton polish of GQSP angles against the target coefficients.
void gqsp_polish(GqspSequence& seq, const ComplexVector& p, int iters = 60) {
    const int d = seq.degree();
    const int npar = 2 * (d + 1) + 1;
    const int ngrid = std::max(2 * npar, 64);
    auto resid = [&](const GqspSequence& s) {
        Eigen::VectorXd r(2 * ngrid);
        for (int i = 0; i < ngrid; ++i) {
            cxd z = std::polar(1.0, 2.0 * kPi * i / ngrid);
            ComplexMatrix w(2, 2);
            w << z, 0, 0, 1;
            cxd e = eval_gqsp_su2(s, w)(0, 0) - poly_eval(p, z);
            r[2 * i] = e.real();
            r[2 * i + 1] = e.imag();
        }
        return r;
    };
    auto pack = [&](const GqspSequence& s) {
        Eigen::VectorXd v(npar);
        for (int j = 0; j <= d; ++j) {
            v[j] = s.thetas[j];
            v[d + 1 + j] = s.omegas[j];
        }
        v[npar - 1] = s.lambda;
        return v;
    };
    auto unpack = [&](const Eigen::VectorXd& v) {
        GqspSequence s = seq;
        for (int j = 0; j <= d; ++j) {
            s.thetas[j] = v[j];
            s.omegas[j] = v[d + 1 + j];
        }
        s.lambda = v[npar - 1];
        return s;
    };
    Eigen::VectorXd v = pack(seq);
    double lm = 1e-6;
    Eigen::VectorXd r = resid(seq);
    for (int it = 0; it < iters; ++it) {
        if (r.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::MatrixXd jac(r.size(), npar);
        const double h = 1e-7;
        for (int j = 0; j < npar; ++j) {
            Eigen::VectorXd v2 = v;
            v2[j] += h;
            jac.col(j) = (resid(unpack(v2)) - r) / h;
        }
        Eigen::MatrixXd a = jac.transpose() * jac;
        a.diagonal().array() += lm;
        Eigen::VectorXd dv = a.ldlt().solve(-jac.transpose() * r);
        Eigen::VectorXd vn = v + dv;
        Eigen::VectorXd rn = resid(unpack(vn));
        if (rn.norm() < r.norm()) {
            v = vn;
            r = rn;
            lm = std::max(lm / 3.0, 1e-12);
        } else {
            lm *= 10.0;
            if (lm > 1e8) break;
        }
    }
    seq = unpack(v);
}

GqspSolveResult solve_gqsp_from_coeffs(ComplexVector p) {
    // Nudge strictly inside the disk so the completion roots stay resolvable.
    double sup = 0.0;
    for (int i = 0; i < 1024; ++i)
        sup = std::max(sup, std::abs(poly_eval(p, std::polar(1.0, 2.0 * kPi * i / 1024))));
    if (sup > 1.0 + 1e-9)
        throw precondition_error("solve_gqsp_phases: |target| exceeds 1 on the circle");
    double rescale = 1.0;
    if (sup > 1.0 - 1e-12) {
        rescale = sup / (1.0 - 1e-12);
        p /= rescale;
    }

    ComplexVector q = complete_pair(p, false);
    GqspSolveResult res;
    res.rescale = rescale;
    res.sequence = gqsp_strip(p, q).seq;
    res.residual = gqsp_residual(res.sequence, p);
    // The finite-difference polish is quadratic in the step count; above a
    // hundred-odd angles the stripped result has to stand on its own.
    if (res.residual > 1e-10 && p.size() <= 130) {
        gqsp_polish(res.sequence, p);
        res.residual = gqsp_residual(res.sequence, p);
    }
    if (res.residual > 1e-8)
        throw solver_failure("solve_gqsp_phases: residual above 1e-8", res.residual);
    return res;
}

}  // namespace

GqspSolveResult solve_gqsp_phases(const ComplexPolynomial& target, int d) {
    if (target.basis != Basis::Monomial)
        throw precondition_error("solve_gqsp_phases: monomial basis expected");
    int deg = target.degree();
    if (deg > d) throw precondition_error("solve_gqsp_phases: degree above d");
    ComplexVector p = target.coefficients.head(deg + 1);
    return solve_gqsp_from_coeffs(p);
}

GqspSolveResult solve_wz_laurent(const ComplexVector& laurent_coeffs) {
    const int size = static_cast<int>(laurent_coeffs.size());
    if (size % 2 == 0) throw precondition_error("solve_wz_laurent: odd size expected");
    const int h = (size - 1) / 2;
    for (int k = -h; k <= h; ++k)
        if ((k - h) % 2 != 0 && std::abs(laurent_coeffs[k + h]) > 1e-12)
            throw precondition_error("solve_wz_laurent: exponent parity mismatch");
    // G(z) with z = w^2: g_j = c_{2j - h}; the physical W_Z gate supplies the
    // w^{-1} prefactor per step that turns z-powers back into signed powers.
    ComplexVector g = ComplexVector::Zero(h + 1);
    for (int j = 0; j <= h; ++j) g[j] = laurent_coeffs[2 * j];
    return solve_gqsp_from_coeffs(g);
}

namespace {

// -------- fixed-axis (Theorem 1 style) solve --------------------------------

RealVector chebyshev_coeffs_of(const RealPolynomial& f, int deg) {
    // Project onto T_0..T_deg by Chebyshev-node quadrature.
    const int n = deg + 1;
    RealVector c = RealVector::Zero(n);
    std::vector<double> fx(n);
    for (int i = 0; i < n; ++i) fx[i] = f.eval(std::cos(kPi * (i + 0.5) / n));
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += fx[i] * std::cos(kPi * k * (i + 0.5) / n);
        c[k] = 2.0 * acc / n;
    }
    c[0] *= 0.5;
    return c;
}

ComplexMatrix eval_wzsx_product(const RealVector& phis, cxd w) {
    // e^{i phi_0 X} prod_k diag(w, 1/w) e^{i phi_k X}
    auto xrot = [](double phi) {
        ComplexMatrix m(2, 2);
        m << std::cos(phi), cxd(0, std::sin(phi)), cxd(0, std::sin(phi)), std::cos(phi);
        return m;
    };
    ComplexMatrix u = xrot(phis[0]);
    ComplexMatrix wz(2, 2);
    wz << w, 0, 0, 1.0 / w;
    for (Eigen::Index k = 1; k < phis.size(); ++k) u = u * wz * xrot(phis[k]);
    return u;
}

double qsp_residual_vs_poly(const RealVector& phis, const RealPolynomial& f,
                            int points = 257) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        double u = kPi * i / (points - 1);
        cxd got = eval_wzsx_product(phis, std::polar(1.0, u))(0, 0);
        worst = std::max(worst, std::abs(got - f.eval(std::cos(u))));
    }
    return worst;
}

void qsp_polish(RealVector& phis, const RealPolynomial& f, int iters = 80) {
    const int npar = static_cast<int>(phis.size());
    const int ngrid = std::max(2 * npar + 8, 48);
    auto resid = [&](const RealVector& v) {
        Eigen::VectorXd r(2 * ngrid);
        for (int i = 0; i < ngrid; ++i) {
            double u = kPi * (i + 0.5) / ngrid;
            cxd e = eval_wzsx_product(v, std::polar(1.0, u))(0, 0) - f.eval(std::cos(u));
            r[2 * i] = e.real();
            r[2 * i + 1] = e.imag();
        }
        return r;
    };
    Eigen::VectorXd r = resid(phis);
    double lm = 1e-6;
    for (int it = 0; it < iters; ++it) {
        if (r.lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::MatrixXd jac(r.size(), npar);
        const double h = 1e-7;
        for (int j = 0; j < npar; ++j) {
            RealVector v2 = phis;
            v2[j] += h;
            jac.col(j) = (resid(v2) - r) / h;
        }
        Eigen::MatrixXd a = jac.transpose() * jac;
        a.diagonal().array() += lm;
        Eigen::VectorXd dv = a.ldlt().solve(-jac.transpose() * r);
        RealVector vn = phis + dv;
        Eigen::VectorXd rn = resid(vn);
        if (rn.norm() < r.norm()) {
            phis = vn;
            r = rn;
            lm = std::max(lm / 3.0, 1e-12);
        } else {
            lm *= 10.0;
            if (lm > 1e8) break;
        }
    }
}

// Strip phases from the (A, B) pair in the z = w^2 variable for the
// fixed-X-axis gate set. Per step the constant term of A and the top term of
// B must vanish simultaneously; validity of the pair makes both conditions
// agree.
bool qsp_strip(ComplexVector a, ComplexVector b, RealVector& phis) {
    const int d = static_cast<int>(a.size()) - 1;
    phis = RealVector::Zero(d + 1);
    for (int j = d; j >= 1; --j) {
        // tan(phi_j) = a_0 / (i b_0) = b_j / (i a_j)
        double t1n = 0.0, t1d = 0.0;
        cxd num, den;
        if (std::abs(b[0]) >= std::abs(a[j])) {
            num = a[0];
            den = cxd(0, 1) * b[0];
        } else {
            num = b[j];
            den = cxd(0, 1) * a[j];
        }
        double phi;
        if (std::abs(den) < 1e-300 && std::abs(num) < 1e-300) {
            phi = 0.0;
        } else {
            cxd ratio = num / den;
            phi = std::atan(ratio.real());
            t1n = std::abs(ratio.imag());
            t1d = std::abs(ratio.real()) + 1.0;
            if (t1n > 1e-6 * t1d) return false;  // pair not in this gate class
        }
        phis[j] = phi;
        const double c = std::cos(phi), s = std::sin(phi);
        ComplexVector an(j), bn(j);
        for (int k = 0; k < j; ++k) {
            // [A', B'] = [c A - i s B, -i s A + c B], then A'' = A'/z.
            an[k] = c * a[k + 1] - cxd(0, s) * b[k + 1];
            bn[k] = -cxd(0, s) * a[k] + c * b[k];
        }
        a = an;
        b = bn;
    }
    // Base: A0 = cos(phi_0), B0 = i sin(phi_0).
    phis[0] = std::atan2((b[0] / cxd(0, 1)).real(), a[0].real());
    return true;
}

}  // namespace

QspSolveResult solve_qsp_phases(const RealPolynomial& target, int d) {
    const int deg = target.degree();
    if (deg > d) throw precondition_error("solve_qsp_phases: degree above d");
    if (!target.parity_consistent())
        throw precondition_error("solve_qsp_phases: coefficients break declared parity");
    const bool want_odd = (d % 2 == 1);
    if (target.parity == Parity::None ||
        (target.parity == Parity::Odd) != want_odd)
        throw precondition_error("solve_qsp_phases: parity must equal d mod 2");
    if (!target.qsp_admissible())
        throw precondition_error("solve_qsp_phases: target exceeds 1 on [-1,1]");

    RealPolynomial f = target;
    double sup = f.sup_norm_grid();
    if (sup > 1.0 - 1e-12) {
        f.coefficients *= (1.0 - 1e-12) / sup;
    }

    // A(w) = f((w + 1/w)/2) has Laurent coefficients t_|k|/2 from the
    // Chebyshev expansion; in z = w^2 it becomes a degree-deg polynomial.
    RealVector cheb = chebyshev_coeffs_of(f, deg);
    ComplexVector a = ComplexVector::Zero(deg + 1);
    for (int j = 0; j <= deg; ++j) {
        int k = 2 * j - deg;
        int kk = std::abs(k);
        a[j] = (kk == 0) ? cheb[0] : 0.5 * cheb[kk];
    }
    ComplexVector b = complete_pair(a, true);
    RealVector phis;
    bool stripped = qsp_strip(a, b, phis);
    if (!stripped || phis.size() != deg + 1) {
        phis = RealVector::Zero(deg + 1);
        phis[0] = kPi / 4;
        if (deg >= 1) phis[deg] = -kPi / 4;
    }
    double res = qsp_residual_vs_poly(phis, f);
    if (res > 1e-10) {
        qsp_polish(phis, f);
        res = qsp_residual_vs_poly(phis, f);
    }
    if (res > 1e-8)
        throw solver_failure("solve_qsp_phases: residual above 1e-8", res);

    // Pad to the requested length with identity pairs W e^{i pi/2 X} W e^{-i pi/2 X}.
    RealVector full = RealVector::Zero(d + 1);
    full.head(deg + 1) = phis;
    for (int j = deg + 1; j <= d; j += 2) {
        full[j] = kPi / 2;
        full[j + 1] = -kPi / 2;
    }
    QspSolveResult out;
    out.sequence.convention = QspConvention::WX_SZ;
    out.sequence.phases = full;
    out.residual = res;
    return out;
}

IteratedComposeResult iterated_compose(const std::vector<SignalRotation>& rotations,
                                       const std::vector<int>& q,
                                       const ComplexPolynomial& target,
                                       const std::vector<long>& costs) {
    if (rotations.empty() || q.empty())
        throw precondition_error("iterated_compose: empty input");
    for (const auto& r : rotations)
        if (r.axis != Axis::X)
            throw precondition_error("iterated_compose: X-axis rotations expected");
    for (int s : q)
        if (s < 1 || s > static_cast<int>(rotations.size()))
            throw precondition_error("iterated_compose: index out of range");
    // GQSP admissibility in the Chebyshev embedding a = cos(u), plus the
    // Q = i|Q| branch: P must be real valued within [-1, 1] on the interval.
    for (int i = 0; i <= 200; ++i) {
        double x = -1.0 + 2.0 * i / 200.0;
        cxd v = target.eval(cxd(x, 0.0));
        if (std::abs(v.imag()) > 1e-9 || std::abs(v.real()) > 1.0 + 1e-9)
            throw precondition_error(
                "iterated_compose: P must be real in [-1,1] for an X-rotation output");
    }

    double sum = 0.0;
    ComplexMatrix prod = ComplexMatrix::Identity(2, 2);
    for (int s : q) {
        sum += rotations[static_cast<std::size_t>(s - 1)].theta;
        prod = prod * eval_signal(rotations[static_cast<std::size_t>(s - 1)]);
    }
    // Angle addition holds exactly; cross-check the matrix product path.
    const double a_scalar = std::cos(0.5 * sum);
    const double a_matrix = prod(0, 0).real();
    if (std::abs(a_scalar - a_matrix) > 1e-9)
        throw simulation_failure("iterated_compose: angle addition check failed");

    double p = std::clamp(target.eval(cxd(a_scalar, 0.0)).real(), -1.0, 1.0);
    IteratedComposeResult out;
    out.rotation = SignalRotation{Axis::X, 2.0 * std::acos(p)};
    const long d = target.degree();
    long sum_ds = 0;
    for (int s : q)
        sum_ds += costs.empty() ? 1 : costs.at(static_cast<std::size_t>(s - 1));
    out.queries = (d + 1) + d * sum_ds;
    return out;
}

}  // namespace iqsp
