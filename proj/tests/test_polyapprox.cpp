#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iqsp/numerics.hpp"
#include "iqsp/polyapprox.hpp"

using namespace iqsp;

TEST_CASE("truncation_order_r scan oracle") {
    // brute-force scan oracle
    auto oracle = [](double t, double eps) {
        int r = std::max(1, static_cast<int>(std::ceil(t)));
        while (std::pow(t / r, r) > eps) ++r;
        return r;
    };
    CHECK(truncation_order_r(1.0, std::exp(-1.0) * 0.999) == oracle(1.0, std::exp(-1.0) * 0.999));
    CHECK(truncation_order_r(2.0, 1e-6) == oracle(2.0, 1e-6));
    int prev = 0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
        int r = truncation_order_r(3.0, eps);
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("jacobi_anger_cos matches cosine on the grid") {
    for (double t : {1.0, 2.0, -1.5}) {
        for (double eps : {1e-4, 1e-8}) {
            RealPolynomial p = jacobi_anger_cos(t, eps);
            CHECK(p.parity == Parity::Even);
            CHECK(p.parity_consistent());
            auto f = [&](double x) { return std::cos(x * t); };
            CHECK(grid_error(p, f, -1.0, 1.0) <= eps / 2);
            CHECK(std::abs(p.eval(0.0) - 1.0) <= eps / 2);
            CHECK(p.sup_norm_grid() <= 1.0 + 1e-12);
        }
    }
    // degree grows as eps tightens
    CHECK(jacobi_anger_cos(2.0, 1e-4).degree() >= jacobi_anger_cos(2.0, 1e-2).degree());
    CHECK_THROWS_AS(jacobi_anger_cos(0.0, 1e-4), domain_error);
    CHECK_THROWS_AS(jacobi_anger_cos(1.0, 0.9), domain_error);
}

TEST_CASE("jacobi_anger_sin matches sine and is odd in t") {
    for (double eps : {1e-4, 1e-8}) {
        RealPolynomial p = jacobi_anger_sin(1.0, eps);
        CHECK(p.parity == Parity::Odd);
        auto f = [](double x) { return std::sin(x); };
        CHECK(grid_error(p, f, -1.0, 1.0) <= eps / 2);
        CHECK(std::abs(p.eval(0.0)) <= eps / 2);
    }
    RealPolynomial plus = jacobi_anger_sin(1.0, 1e-6);
    RealPolynomial minus = jacobi_anger_sin(-1.0, 1e-6);
    CHECK(std::abs(plus.eval(0.5) + minus.eval(0.5)) < 1e-12);
}

TEST_CASE("arcsin_taylor series") {
    RealPolynomial p1 = arcsin_taylor(1);
    CHECK(p1.degree() == 1);
    CHECK(std::abs(p1.coefficients[1] - 2.0 / kPi) < 1e-15);
    for (int k : {1, 5, 20}) {
        RealPolynomial p = arcsin_taylor(k);
        CHECK(p.eval(0.0) == 0.0);
        CHECK(p.parity_consistent());
        double abs_sum = p.coefficients.cwiseAbs().sum();
        CHECK(abs_sum <= 1.0 + 1e-12);
    }
    RealPolynomial p20 = arcsin_taylor(20);
    CHECK(std::abs(p20.eval(0.5) - (2.0 / kPi) * std::asin(0.5)) < 1e-6);
}

TEST_CASE("arcsin_lagrange interpolation and bound") {
    const double L = 1.0 / kPi;
    RealPolynomial p = arcsin_lagrange(8, L);
    // interpolation property at the nodes
    for (int i = 0; i <= 8; ++i) {
        double x = -L + 2 * L * i / 8;
        CHECK(std::abs(p.eval(x) - std::asin(x)) < 1e-12);
    }
    double bound = 2 * std::exp(1.0) * std::pow(2 * L, 9) / (1 - std::exp(1.0) * L);
    auto f = [](double x) { return std::asin(x); };
    double err8 = grid_error(p, f, -L, L);
    CHECK(err8 <= bound);
    // doubling Q shrinks the measured error markedly
    double err16 = grid_error(arcsin_lagrange(16, L), f, -L, L);
    CHECK(err16 < err8 * std::pow(2 * L, 8));
    CHECK_THROWS_AS(arcsin_lagrange(7, L), domain_error);
    CHECK_THROWS_AS(arcsin_lagrange(8, 0.5), domain_error);
}

TEST_CASE("tophat_window plateau and tail") {
    const double dp = (kPi - 3.0) / (3.0 * kPi);
    for (double ep : {1e-2, 1e-3}) {
        RealPolynomial w = tophat_window(dp, ep);
        CHECK(w.parity == Parity::Even);
        CHECK(w.eval(0.0) >= 1.0 - ep);
        CHECK(std::abs(w.eval(1.0)) <= ep);
        CHECK(std::abs(w.eval(0.5) - w.eval(-0.5)) < 1e-13);
        CHECK(w.sup_norm_grid() <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(tophat_window(0.2, 1e-3), domain_error);
}

TEST_CASE("neg_power_poly approximates the scaled inverse square root") {
    const double delta = 0.25, eps = 1e-3;
    RealPolynomial p = neg_power_poly(0.5, delta, eps, Parity::Even);
    auto f = [&](double x) { return 0.5 * std::sqrt(delta) / std::sqrt(std::abs(x)); };
    CHECK(grid_error(p, f, delta, 1.0) <= eps);
    CHECK(std::abs(p.eval(delta) - 0.5) <= eps + 1e-12);
    CHECK(std::abs(p.eval(1.0) - 0.5 * std::sqrt(delta)) <= eps + 1e-12);
    CHECK(p.sup_norm_grid() <= 1.0 + 1e-9);
}

TEST_CASE("exp_i_a_squared_poly pair") {
    for (double eps : {1e-3, 1e-5}) {
        ExpIASquaredPair pair = exp_i_a_squared_poly(eps);
        CHECK(std::abs(pair.cos_part.eval(0.0) - 1.0) <= eps);
        CHECK(std::abs(pair.sin_part.eval(0.0)) <= eps);
        CHECK(std::abs(pair.cos_part.eval(1.0) - std::cos(1.0)) <= eps);
        CHECK(std::abs(pair.sin_part.eval(1.0) - std::sin(1.0)) <= eps);
        CHECK(std::abs(pair.cos_part.eval(0.6) - pair.cos_part.eval(-0.6)) < 1e-13);
        CHECK(std::abs(pair.sin_part.eval(0.6) - pair.sin_part.eval(-0.6)) < 1e-13);
    }
}

TEST_CASE("jacobi-anger identity for exp(i a^2)") {
    // |J_0(a) + 2 sum_n i^n J_n(a) T_n(a) - e^{i a^2}| <= eps for M >= M*.
    const int M = 28;
    for (double a = -0.9; a <= 0.91; a += 0.2) {
        cxd sum = bessel_j(0, a);
        for (int n = 1; n <= M; ++n)
            sum += 2.0 * std::pow(cxd(0, 1), n) * bessel_j(n, a) * chebyshev_t(n, a);
        cxd expect = std::exp(cxd(0, a * a));
        CHECK(std::abs(sum - expect) < 1e-10);
    }
}
