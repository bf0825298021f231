#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "iqsp/blockenc.hpp"
#include "iqsp/numerics.hpp"

using namespace iqsp;

TEST_CASE("be_sin projects the exact sine of the generator") {
    // H = (pi/6) Z: block is diag(1/2, -1/2)
    ComplexMatrix h = (kPi / 6.0) * pauli_z();
    ComplexMatrix u = mat_exp(h, -1.0);  // e^{iH}
    BlockEncoding be = be_sin(u);
    CHECK(be.ancillas == 1);
    ComplexMatrix blk = be.block();
    CHECK(std::abs(blk(0, 0) - cxd(0.5, 0)) < 1e-12);
    CHECK(std::abs(blk(1, 1) - cxd(-0.5, 0)) < 1e-12);
    CHECK(is_unitary(be.unitary, 1e-12));

    // H = 0 gives a zero block
    BlockEncoding z = be_sin(ComplexMatrix::Identity(2, 2));
    CHECK(max_abs(z.block()) < 1e-14);

    // sweep: top-left traces sin(theta/2)
    for (double th = -1.0; th <= 1.01; th += 0.25) {
        BlockEncoding s = be_sin(eval_signal({Axis::Z, th}));
        CHECK(std::abs(s.block()(0, 0) - cxd(std::sin(th / 2), 0)) < 1e-12);
    }
}

TEST_CASE("qet_apply identity phases return the encoding") {
    BlockEncoding be = be_sin(eval_signal({Axis::Z, 0.9}));
    QetSequence id;
    id.phases = RealVector::Zero(2);
    BlockEncoding out = qet_apply(be, id);
    CHECK(max_abs(ComplexMatrix(out.unitary - be.unitary)) < 1e-14);
}

TEST_CASE("qet_apply matches the eigen-oracle for odd Chebyshev") {
    // reflection-style exact encoding of a random Hermitian 4x4 block
    std::mt19937 rng(2);
    std::normal_distribution<double> g;
    ComplexMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cxd(g(rng), g(rng));
    a = 0.5 * (a + a.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
    a /= 1.3 * es.eigenvalues().cwiseAbs().maxCoeff();
    ComplexMatrix s = ComplexMatrix::Identity(4, 4) - a * a;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es2(s);
    ComplexMatrix sqrt_s = es2.operatorSqrt();
    BlockEncoding be;
    be.alpha = 1.0;
    be.ancillas = 1;
    be.eps = 0.0;
    be.system_dim = 4;
    be.unitary = ComplexMatrix::Zero(8, 8);
    be.unitary.topLeftCorner(4, 4) = a;
    be.unitary.topRightCorner(4, 4) = sqrt_s;
    be.unitary.bottomLeftCorner(4, 4) = sqrt_s;
    be.unitary.bottomRightCorner(4, 4) = -a;
    REQUIRE(is_unitary(be.unitary, 1e-10));

    RealPolynomial t3;
    t3.basis = Basis::Chebyshev;
    t3.parity = Parity::Odd;
    t3.coefficients = RealVector::Zero(4);
    t3.coefficients[3] = 1.0;
    QspSolveResult solved = solve_qsp_phases(t3, 3);
    QetSequence seq = qet_phases_from_qsp(solved.sequence);
    BlockEncoding out = qet_apply(be, seq);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eo(a);
    ComplexMatrix want = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        double lam = eo.eigenvalues()[i];
        double t3v = 4 * lam * lam * lam - 3 * lam;
        want += t3v * eo.eigenvectors().col(i) * eo.eigenvectors().col(i).adjoint();
    }
    CHECK(max_abs(ComplexMatrix(out.block() - want)) < 1e-7);
}

TEST_CASE("log_block_encode recovers the generator") {
    for (double eps : {1e-3, 1e-5}) {
        for (double theta = 0.1; theta <= 0.91; theta += 0.2) {
            BlockEncoding be = log_block_encode(eval_signal({Axis::Z, theta}), eps);
            CHECK(be.ancillas == 2);
            CHECK(be.alpha == kPi / 2);
            ComplexMatrix h = 0.5 * theta * pauli_z();
            CHECK(max_abs(ComplexMatrix(h - be.alpha * be.block())) <= eps);
            CHECK(is_unitary(be.unitary, 1e-9));
        }
    }
    // H = 0
    BlockEncoding z = log_block_encode(ComplexMatrix::Identity(2, 2), 1e-4);
    CHECK(max_abs(z.block()) * z.alpha <= 1e-4);
    // query scaling trend
    long q4 = log_block_encode(eval_signal({Axis::Z, 0.5}), 1e-4).query_count;
    long q8 = log_block_encode(eval_signal({Axis::Z, 0.5}), 1e-8).query_count;
    CHECK(q8 <= 3 * q4);
}

TEST_CASE("be_multiply composes blocks and bookkeeping") {
    BlockEncoding a = log_block_encode(eval_signal({Axis::Z, 0.6}), 1e-5);
    BlockEncoding id;
    id.alpha = 1.0;
    id.ancillas = 0;
    id.eps = 0.0;
    id.system_dim = 2;
    id.unitary = ComplexMatrix::Identity(2, 2);
    BlockEncoding same = be_multiply(a, id);
    CHECK(max_abs(ComplexMatrix(same.block() - a.block())) < 1e-12);

    BlockEncoding prod = be_multiply(a, a);
    CHECK(prod.ancillas == 4);
    CHECK(prod.alpha == doctest::Approx((kPi / 2) * (kPi / 2)));
    ComplexMatrix want = a.block() * a.block();
    CHECK(max_abs(ComplexMatrix(prod.block() - want)) < 1e-9);
    // Z^2 = I sign structure
    BlockEncoding l3 = log_block_encode(eval_signal({Axis::Z, 0.3}), 1e-6);
    BlockEncoding sq = be_multiply(l3, l3);
    ComplexMatrix expect =
        (0.15 * 0.15) / (kPi / 2) / (kPi / 2) * ComplexMatrix::Identity(2, 2);
    CHECK(max_abs(ComplexMatrix(sq.block() - expect)) < 1e-5);
}

TEST_CASE("phase_square against the matrix exponential oracle") {
    for (double theta : {0.0, 0.4, 0.8, -0.6, 1.0}) {
        BlockEncoding be = phase_square({Axis::Z, theta}, 1e-3);
        CHECK(be.ancillas == 6);
        ComplexMatrix target = mat_exp(pauli_z(), -(theta / 2) * (theta / 2));
        CHECK(phase_distance(ComplexMatrix(be.alpha * be.block()), target) <= 1e-3);
        CHECK(be.success_probability() > 0.8);
    }
    CHECK_THROWS_AS(phase_square({Axis::Z, 1.5}, 1e-3), precondition_error);
}

TEST_CASE("phase_square_small is 2x2 and matches the oracle") {
    for (double theta : {0.0, 0.25, 0.5, -0.45, 0.6}) {
        ComplexMatrix v = phase_square_small({Axis::Z, theta}, 1e-2);
        CHECK(v.rows() == 2);
        CHECK(is_unitary(v, 1e-9));
        ComplexMatrix target = mat_exp(pauli_z(), -(theta / 2) * (theta / 2));
        CHECK(max_abs_mod_phase(v, target) <= 1e-2);
    }
    // evenness in theta
    ComplexMatrix p = phase_square_small({Axis::Z, 0.37}, 1e-2);
    ComplexMatrix m = phase_square_small({Axis::Z, -0.37}, 1e-2);
    CHECK(max_abs_mod_phase(p, m) < 2e-2);
    CHECK_THROWS_AS(phase_square_small({Axis::Z, 0.7}, 1e-2), precondition_error);
}

TEST_CASE("phase_square_small agrees with the six-ancilla backend") {
    for (double theta : {0.2, 0.45, 0.6}) {
        ComplexMatrix small = phase_square_small({Axis::Z, theta}, 1e-2);
        BlockEncoding big = phase_square({Axis::Z, theta}, 1e-3);
        ComplexMatrix big_eff = big.alpha * big.block();
        CHECK(max_abs_mod_phase(small, big_eff) <= 1.1e-2);
    }
}

TEST_CASE("phase_power matches oracle and crosses paths") {
    BlockEncoding p1 = phase_power({Axis::Z, 0.7}, 1, 1e-3);
    CHECK(p1.ancillas == 0);
    CHECK(max_abs(ComplexMatrix(p1.unitary - eval_signal({Axis::Z, 0.7}))) < 1e-14);

    BlockEncoding p2 = phase_power({Axis::Z, 0.8}, 2, 1e-3);
    BlockEncoding s2 = phase_square({Axis::Z, 0.8}, 1e-3);
    CHECK(phase_distance(ComplexMatrix(p2.alpha * p2.block()),
                         ComplexMatrix(s2.alpha * s2.block())) < 2e-3);

    BlockEncoding p3 = phase_power({Axis::Z, 0.9}, 3, 1e-3);
    CHECK(p3.ancillas == 8);
    ComplexMatrix t3 = mat_exp(pauli_z(), -std::pow(0.45, 3));
    CHECK(phase_distance(ComplexMatrix(p3.alpha * p3.block()), t3) <= 1e-3);

    BlockEncoding p5 = phase_power({Axis::Z, 0.4}, 5, 1e-2);
    CHECK(p5.ancillas == 0);
    ComplexMatrix t5 = mat_exp(pauli_z(), -std::pow(0.2, 5));
    CHECK(max_abs_mod_phase(p5.unitary, t5) <= 1e-2);

    CHECK_THROWS_AS(phase_power({Axis::Z, 0.9}, 5, 1e-2), unsupported_size);
    CHECK_THROWS_AS(phase_power({Axis::Z, 0.9}, 7, 1e-2), unsupported_size);
}

TEST_CASE("phase_multiply realizes the product of angles") {
    BlockEncoding z = phase_multiply({Axis::Z, 0.3}, {Axis::Z, 0.0}, 1e-3);
    ComplexMatrix zb = z.alpha * z.block();
    CHECK(phase_distance(zb, ComplexMatrix::Identity(2, 2)) < 1e-3);

    BlockEncoding s = phase_multiply({Axis::Z, 0.25}, {Axis::Z, 0.3}, 1e-3);
    CHECK(s.ancillas == 0);
    ComplexMatrix target = mat_exp(pauli_z(), -0.25 * 0.3 / 2.0);
    CHECK(max_abs_mod_phase(ComplexMatrix(s.alpha * s.block()), target) <= 1e-3);

    // mixed path: 0.4 x 0.4, the sum goes through the six-ancilla backend
    BlockEncoding m = phase_multiply({Axis::Z, 0.4}, {Axis::Z, 0.4}, 1e-3);
    ComplexMatrix t2 = mat_exp(pauli_z(), -0.08);
    CHECK(phase_distance(ComplexMatrix(m.alpha * m.block()), t2) <= 1e-3);

    BlockEncoding ab = phase_multiply({Axis::Z, 0.35}, {Axis::Z, -0.2}, 1e-3);
    BlockEncoding ba = phase_multiply({Axis::Z, -0.2}, {Axis::Z, 0.35}, 1e-3);
    CHECK(phase_distance(ComplexMatrix(ab.alpha * ab.block()),
                         ComplexMatrix(ba.alpha * ba.block())) < 2e-3);
}

TEST_CASE("phase_product_many reference accumulator semantics") {
    BlockEncoding z = phase_product_many({{Axis::Z, 0.3}, {Axis::Z, 0.0}}, 1e-3);
    CHECK(phase_distance(ComplexMatrix(z.alpha * z.block()),
                         ComplexMatrix::Identity(2, 2)) < 1e-3);
    BlockEncoding two = phase_product_many({{Axis::Z, 0.25}, {Axis::Z, 0.3}}, 1e-3);
    BlockEncoding mul = phase_multiply({Axis::Z, 0.25}, {Axis::Z, 0.3}, 1e-3);
    CHECK(phase_distance(ComplexMatrix(two.alpha * two.block()),
                         ComplexMatrix(mul.alpha * mul.block())) < 2e-3);
    std::vector<SignalRotation> ws = {
        {Axis::Z, 0.3}, {Axis::Z, 0.4}, {Axis::Z, 0.5}, {Axis::Z, 0.2}};
    BlockEncoding four = phase_product_many(ws, 1e-2);
    double acc = 0.3 * 0.4 * 0.5 * 0.2;
    ComplexMatrix target = mat_exp(pauli_z(), -acc / 2.0);
    CHECK(max_abs_mod_phase(ComplexMatrix(four.alpha * four.block()), target) <= 1e-2);
}

TEST_CASE("phase_polynomial combines monomials") {
    PhaseMonomial m1;
    m1.coefficient = 1.0;
    m1.factors = {{{Axis::Z, 0.3}, 1}, {{Axis::Z, 0.2}, 1}};
    BlockEncoding one = phase_polynomial({m1}, 1e-2);
    ComplexMatrix t1 = mat_exp(pauli_z(), -2.0 * 0.15 * 0.1 / 2.0);
    CHECK(max_abs_mod_phase(ComplexMatrix(one.alpha * one.block()), t1) <= 1e-2);

    PhaseMonomial a, b;
    a.coefficient = 1.0;
    a.factors = {{{Axis::Z, 0.3}, 1}};
    b.coefficient = 1.0;
    b.factors = {{{Axis::Z, 0.4}, 1}};
    BlockEncoding sum = phase_polynomial({a, b}, 1e-2);
    ComplexMatrix ts = mat_exp(pauli_z(), -(0.15 + 0.2));
    CHECK(max_abs_mod_phase(ComplexMatrix(sum.alpha * sum.block()), ts) <= 1e-2);

    PhaseMonomial c, d;
    c.coefficient = 0.5;
    c.factors = {{{Axis::Z, 0.4}, 1}, {{Axis::Z, 0.6}, 1}};
    d.coefficient = 0.25;
    d.factors = {{{Axis::Z, 0.5}, 2}};
    BlockEncoding poly = phase_polynomial({c, d}, 1e-2);
    double expo = 0.5 * 0.2 * 0.3 + 0.25 * 0.25 * 0.25;
    ComplexMatrix tp = mat_exp(pauli_z(), -expo);
    CHECK(max_abs_mod_phase(ComplexMatrix(poly.alpha * poly.block()), tp) <= 1e-2);
}

TEST_CASE("coulomb pipeline magnitude") {
    CHECK_THROWS_AS(coulomb_block_encode(0.1, 0.1, 0.1, 0.1, 0.25, 1e-2),
                    promise_violation);
    CoulombResult r = coulomb_block_encode(0.25, 0.0, -0.25, 0.0, 0.25, 1e-2);
    CHECK(std::abs(r.expected - 0.5) < 1e-12);
    CHECK(std::abs(r.magnitude - r.expected) <= 1e-2);
    CHECK(r.encoding.ancillas == 3);
    CoulombResult rs = coulomb_block_encode(-0.25, 0.0, 0.25, 0.0, 0.25, 1e-2);
    CHECK(std::abs(rs.magnitude - r.magnitude) < 1e-9);
}
