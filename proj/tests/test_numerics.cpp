#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "iqsp/numerics.hpp"

using namespace iqsp;

namespace {

ComplexMatrix random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cxd(g(rng), g(rng));
    return 0.5 * (m + m.adjoint());
}

// 40-term power series oracle for J_0.
double bessel0_series_oracle(double t) {
    double sum = 0.0, term = 1.0;
    for (int m = 0; m < 40; ++m) {
        if (m > 0) term *= -(t * t / 4.0) / (m * m);
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("mat_exp on trivial generators") {
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    CHECK(max_abs(ComplexMatrix(mat_exp(zero, 1.0) - ComplexMatrix::Identity(2, 2))) <
          1e-14);

    ComplexMatrix uz = mat_exp(pauli_z(), kPi / 2);
    CHECK(std::abs(uz(0, 0) - std::polar(1.0, -kPi / 2)) < 1e-12);
    CHECK(std::abs(uz(1, 1) - std::polar(1.0, kPi / 2)) < 1e-12);

    ComplexMatrix ux = mat_exp(pauli_x(), 0.3);
    ComplexMatrix expect = std::cos(0.3) * ComplexMatrix::Identity(2, 2) -
                           cxd(0, std::sin(0.3)) * pauli_x();
    CHECK(max_abs(ComplexMatrix(ux - expect)) < 1e-12);
}

TEST_CASE("mat_exp rejects non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(mat_exp(m, 1.0), symmetry_violation);
}

TEST_CASE("mat_exp group property") {
    for (unsigned seed : {1u, 2u, 3u}) {
        ComplexMatrix h = random_hermitian(6, seed);
        double t1 = 0.37, t2 = -1.21;
        ComplexMatrix lhs = mat_exp(h, t1) * mat_exp(h, t2);
        ComplexMatrix rhs = mat_exp(h, t1 + t2);
        CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-9);
        CHECK(is_unitary(mat_exp(h, t1)));
    }
}

TEST_CASE("bessel_j values and recurrence") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(1, 0.0) == 0.0);
    CHECK(std::abs(bessel_j(0, 1.0) - bessel0_series_oracle(1.0)) < 1e-12);
    CHECK(std::abs(bessel_j(0, 1.0) - 0.7651976865579666) < 1e-12);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(0.3, 40.0);
    std::uniform_int_distribution<int> un(1, 60);
    for (int i = 0; i < 200; ++i) {
        double t = ut(rng);
        int n = un(rng);
        double lhs = bessel_j(n - 1, t) + bessel_j(n + 1, t);
        double rhs = 2.0 * n / t * bessel_j(n, t);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
    CHECK_THROWS_AS(bessel_j(201, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_j(1, 51.0), domain_error);
}

TEST_CASE("chebyshev_t values and recurrence") {
    CHECK(chebyshev_t(0, 0.7) == 1.0);
    CHECK(chebyshev_t(1, -0.3) == -0.3);
    CHECK(std::abs(chebyshev_t(2, 0.5) - (-0.5)) < 1e-15);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng);
        int n = 1 + (i % 30);
        CHECK(std::abs(chebyshev_t(n + 1, x) -
                       (2 * x * chebyshev_t(n, x) - chebyshev_t(n - 1, x))) < 1e-10);
        CHECK(std::abs(chebyshev_t(n, x) - std::cos(n * std::acos(x))) < 1e-9);
    }
    CHECK_THROWS_AS(chebyshev_t(2, 1.5), domain_error);
}

TEST_CASE("statevector basis and norms") {
    StateVector s = StateVector::basis(3, 5);
    CHECK(s.amplitudes.size() == 8);
    CHECK(std::abs(s.amplitudes[5] - cxd(1, 0)) == 0.0);
    CHECK(std::abs(s.norm() - 1.0) < 1e-15);
}

TEST_CASE("phase distance ignores global phase") {
    ComplexMatrix h = random_hermitian(4, 9);
    ComplexMatrix u = mat_exp(h, 0.7);
    CHECK(phase_distance(u, std::polar(1.0, 1.234) * u) < 1e-12);
    CHECK(max_abs_mod_phase(u, ComplexMatrix(std::polar(1.0, -2.1) * u)) < 1e-12);
}
