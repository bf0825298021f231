#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "iqsp/numerics.hpp"
#include "iqsp/qsp.hpp"

using namespace iqsp;

namespace {

ComplexVector plus_state() {
    ComplexVector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

cxd bra_plus_ket_plus(const ComplexMatrix& u) {
    ComplexVector p = plus_state();
    return (p.adjoint() * u * p)(0, 0);
}

RealPolynomial random_admissible(int deg, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    RealPolynomial p;
    p.basis = Basis::Chebyshev;
    p.parity = (deg % 2) ? Parity::Odd : Parity::Even;
    p.coefficients = RealVector::Zero(deg + 1);
    for (int k = deg % 2; k <= deg; k += 2) p.coefficients[k] = g(rng);
    p.coefficients *= 0.9 / p.sup_norm_grid();
    return p;
}

}  // namespace

TEST_CASE("eval_signal conventions") {
    ComplexMatrix wz = eval_signal({Axis::Z, 0.0});
    CHECK(max_abs(ComplexMatrix(wz - ComplexMatrix::Identity(2, 2))) < 1e-15);
    ComplexMatrix wx = eval_signal({Axis::X, kPi});
    CHECK(std::abs(wx(0, 0)) < 1e-15);
    CHECK(std::abs(wx(0, 1) - cxd(0, 1)) < 1e-15);
    // angle addition
    ComplexMatrix a = eval_signal({Axis::Z, 0.4}) * eval_signal({Axis::Z, 0.9});
    CHECK(max_abs(ComplexMatrix(a - eval_signal({Axis::Z, 1.3}))) < 1e-14);
}

TEST_CASE("eval_qsp zero phases give Chebyshev and matches direct product") {
    const double theta = 0.7;
    const double a = std::cos(theta / 2);
    QspSequence seq;
    seq.convention = QspConvention::WX_SZ;
    seq.phases = RealVector::Zero(4);  // d = 3
    ComplexMatrix u = eval_qsp(seq, theta);
    CHECK(std::abs(bra_plus_ket_plus(u).real() - (4 * a * a * a - 3 * a)) < 1e-12);

    // d = 0 gives the bare processing rotation
    QspSequence s0;
    s0.phases = RealVector::Zero(1);
    s0.phases[0] = 0.3;
    ComplexMatrix u0 = eval_qsp(s0, theta);
    CHECK(max_abs(ComplexMatrix(u0 - eval_signal({Axis::Z, 0.6}))) < 1e-14);

    // random sequence vs step-by-step product
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    QspSequence r;
    r.phases = RealVector::Zero(6);
    for (int i = 0; i < 6; ++i) r.phases[i] = g(rng);
    ComplexMatrix lhs = eval_qsp(r, theta);
    ComplexMatrix rhs = eval_signal({Axis::Z, 2 * r.phases[0]});
    for (int k = 1; k < 6; ++k)
        rhs = rhs * eval_signal({Axis::X, theta}) * eval_signal({Axis::Z, 2 * r.phases[k]});
    CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-13);
    CHECK(is_unitary(lhs, 1e-10));
}

TEST_CASE("convention equivalence") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + trial % 9;
        QspSequence wx, wz;
        wx.convention = QspConvention::WX_SZ;
        wz.convention = QspConvention::WZ_SX;
        wx.phases = wz.phases = RealVector::Zero(d + 1);
        for (int i = 0; i <= d; ++i) wx.phases[i] = wz.phases[i] = g(rng);
        double theta = 2.0 * g(rng);
        cxd lhs = eval_qsp(wz, theta)(0, 0);
        cxd rhs = bra_plus_ket_plus(eval_qsp(wx, theta));
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("P/Q normalization over random sequences") {
    std::mt19937 rng(23);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + trial;
        QspSequence s;
        s.convention = QspConvention::WX_SZ;
        s.phases = RealVector::Zero(d + 1);
        for (int i = 0; i <= d; ++i) s.phases[i] = g(rng);
        for (int i = 0; i <= 100; ++i) {
            double a = -1.0 + 2.0 * i / 100.0;
            double theta = 2.0 * std::acos(a);
            ComplexMatrix u = eval_qsp(s, theta);
            cxd p = u(0, 0);
            double row = std::norm(p) + std::norm(u(0, 1));
            CHECK(std::abs(row - 1.0) < 1e-9);  // |P|^2 + (1-a^2)|Q|^2 = 1
        }
    }
}

TEST_CASE("gqsp rotation matrix is unitary and d=0 sequence works") {
    ComplexMatrix r = gqsp_rotation(0.3, -0.8, 1.1);
    CHECK(is_unitary(r, 1e-12));
    GqspSequence s;
    s.thetas = RealVector::Zero(1);
    s.omegas = RealVector::Zero(1);
    s.lambda = 0.0;
    ComplexMatrix u = eval_gqsp(s, ComplexMatrix::Identity(2, 2));
    CHECK(std::abs(u(0, 0) - cxd(1, 0)) < 1e-14);  // P = 1 constant
}

TEST_CASE("solve_gqsp_phases round trips") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int deg : {1, 4, 9, 14}) {
        ComplexPolynomial target;
        target.basis = Basis::Monomial;
        target.coefficients = ComplexVector::Zero(deg + 1);
        for (int k = 0; k <= deg; ++k) target.coefficients[k] = cxd(g(rng), g(rng));
        target.coefficients *= 0.92 / target.sup_norm_unit_circle();
        GqspSolveResult res = solve_gqsp_phases(target, deg);
        CHECK(res.residual <= 1e-8);
        // evaluate on a few scalar points via the 2x2 embedding
        for (int i = 0; i < 12; ++i) {
            cxd z = std::polar(1.0, 2 * kPi * i / 12.0);
            ComplexMatrix u(1, 1);
            u(0, 0) = z;
            ComplexMatrix m = eval_gqsp(res.sequence, u);
            CHECK(std::abs(m(0, 0) - target.eval(z)) < 2e-8);
        }
    }
}

TEST_CASE("gqsp monomial target implements powers of U") {
    ComplexPolynomial mono;
    mono.basis = Basis::Monomial;
    mono.coefficients = ComplexVector::Zero(4);
    mono.coefficients[3] = 1.0;
    GqspSolveResult res = solve_gqsp_phases(mono, 3);
    // random 4x4 unitary
    ComplexMatrix h(4, 4);
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(i, j) = cxd(g(rng), g(rng));
    h = 0.5 * (h + h.adjoint()).eval();
    ComplexMatrix u = mat_exp(h, 1.0);
    ComplexMatrix m = eval_gqsp(res.sequence, u);
    ComplexMatrix block = m.topLeftCorner(4, 4);
    CHECK(max_abs(ComplexMatrix(block - u * u * u)) < 1e-7);
}

TEST_CASE("solve_qsp_phases Chebyshev targets collapse to offset phases") {
    RealPolynomial t1;
    t1.basis = Basis::Monomial;
    t1.parity = Parity::Odd;
    t1.coefficients = RealVector::Zero(2);
    t1.coefficients[1] = 1.0;
    QspSolveResult r1 = solve_qsp_phases(t1, 1);
    CHECK(r1.residual <= 1e-9);
    for (double theta : {0.3, 1.2, 2.5}) {
        double a = std::cos(theta / 2);
        cxd v = bra_plus_ket_plus(eval_qsp(r1.sequence, theta));
        CHECK(std::abs(v - cxd(a, 0)) < 1e-8);
    }

    RealPolynomial t3;
    t3.basis = Basis::Chebyshev;
    t3.parity = Parity::Odd;
    t3.coefficients = RealVector::Zero(4);
    t3.coefficients[3] = 1.0;
    QspSolveResult r3 = solve_qsp_phases(t3, 3);
    for (double theta : {0.3, 1.2}) {
        double a = std::cos(theta / 2);
        cxd v = bra_plus_ket_plus(eval_qsp(r3.sequence, theta));
        CHECK(std::abs(v - cxd(4 * a * a * a - 3 * a, 0)) < 1e-8);
    }
    // zero-phase evaluation reproduces T_3 as the real part (angle addition)
    QspSequence zero;
    zero.phases = RealVector::Zero(4);
    double a = std::cos(0.45);
    CHECK(std::abs(bra_plus_ket_plus(eval_qsp(zero, 0.9)).real() -
                   (4 * a * a * a - 3 * a)) < 1e-12);
}

TEST_CASE("solve_qsp_phases arcsin target with padding") {
    RealPolynomial t = arcsin_taylor(5);  // degree 9
    QspSolveResult r = solve_qsp_phases(t, 11);
    CHECK(r.sequence.phases.size() == 12);
    CHECK(r.residual <= 1e-8);
    for (double theta : {0.2, 1.0, 2.0}) {
        double a = std::cos(theta / 2);
        cxd v = bra_plus_ket_plus(eval_qsp(r.sequence, theta));
        CHECK(std::abs(v - cxd(t.eval(a), 0)) < 1e-7);
    }
}

TEST_CASE("solve_qsp_phases validates preconditions") {
    RealPolynomial bad;
    bad.basis = Basis::Monomial;
    bad.parity = Parity::Odd;
    bad.coefficients = RealVector::Zero(2);
    bad.coefficients[1] = 1.0;
    CHECK_THROWS_AS(solve_qsp_phases(bad, 2), precondition_error);  // parity mismatch
    RealPolynomial big = bad;
    big.coefficients[1] = 1.5;
    CHECK_THROWS_AS(solve_qsp_phases(big, 1), precondition_error);  // not admissible
}

TEST_CASE("solver round trip on 50 random admissible targets") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        int deg = 1 + static_cast<int>(seed % 12);
        RealPolynomial p = random_admissible(deg, 1000 + seed);
        QspSolveResult r = solve_qsp_phases(p, deg);
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double a = -1.0 + 2.0 * i / 40.0;
            double theta = 2.0 * std::acos(a);
            worst = std::max(worst,
                             std::abs(bra_plus_ket_plus(eval_qsp(r.sequence, theta)) -
                                      cxd(p.eval(a), 0)));
        }
        CHECK(worst < 1e-7);
    }
}

TEST_CASE("wz laurent solver realizes mixed-sign exponents") {
    // target: e^{i 0.35 sin(u)} truncated, exponent parity even
    const int h = 10;
    ComplexVector c = ComplexVector::Zero(2 * h + 1);
    for (int k = -h; k <= h; ++k) {
        if ((k - h) % 2 != 0) continue;
        // coefficients of e^{i b sin u}: J_k(b) with alternating structure
        c[k + h] = bessel_j(std::abs(k), 0.35) * ((k < 0 && (k % 2) != 0) ? -1.0 : 1.0);
    }
    GqspSolveResult res = solve_wz_laurent(c);
    for (double theta : {0.0, 0.8, 2.0, 4.0}) {
        cxd want = 0.0;
        for (int k = -h; k <= h; ++k)
            want += c[k + h] * std::polar(1.0, k * theta / 2.0);
        ComplexMatrix v = eval_gqsp_su2(res.sequence, eval_signal({Axis::Z, theta}));
        CHECK(std::abs(v(0, 0) - want) < 1e-8);
    }
}

TEST_CASE("iterated_compose angle addition and composition") {
    std::vector<SignalRotation> rots = {{Axis::X, 0.4}, {Axis::X, 0.7}, {Axis::X, -0.2}};
    ComplexPolynomial ident;
    ident.basis = Basis::Monomial;
    ident.coefficients = ComplexVector::Zero(2);
    ident.coefficients[1] = 1.0;
    // P = identity: angle 2 arccos(cos(sum/2)) = |sum| for sum in [0, 2pi)
    IteratedComposeResult r = iterated_compose(rots, {1, 2}, ident);
    CHECK(std::abs(r.rotation.theta - 1.1) < 1e-12);
    CHECK(r.queries == 2 + 1 * 2);

    // P = T_2: doubling
    ComplexPolynomial t2;
    t2.basis = Basis::Monomial;
    t2.coefficients = ComplexVector::Zero(3);
    t2.coefficients[0] = -1.0;
    t2.coefficients[2] = 2.0;
    IteratedComposeResult r2 = iterated_compose({{Axis::X, 0.9}}, {1}, t2);
    CHECK(std::abs(r2.rotation.theta - 2 * 0.9 / 2.0 * 2.0) < 1e-12);

    // brute-force matrix cross-check for a generic admissible P
    ComplexPolynomial p;
    p.basis = Basis::Monomial;
    p.coefficients = ComplexVector::Zero(3);
    p.coefficients[0] = 0.2;
    p.coefficients[1] = 0.3;
    p.coefficients[2] = 0.25;
    IteratedComposeResult r3 = iterated_compose(rots, {1, 2, 3, 2}, p);
    ComplexMatrix prod = ComplexMatrix::Identity(2, 2);
    for (int s : {1, 2, 3, 2}) prod = prod * eval_signal(rots[s - 1]);
    double a = prod(0, 0).real();
    double want = 2 * std::acos(p.eval(cxd(a, 0)).real());
    CHECK(std::abs(r3.rotation.theta - want) < 1e-9);
}
