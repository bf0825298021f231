#include "iqsp/polyapprox.hpp"

#include <cmath>

#include "iqsp/numerics.hpp"

namespace iqsp {

int RealPolynomial::degree() const {
    for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k)
        if (coefficients[k] != 0.0) return static_cast<int>(k);
    return 0;
}

double RealPolynomial::eval(double x) const {
    const Eigen::Index n = coefficients.size();
    if (n == 0) return 0.0;
    if (basis == Basis::Monomial) {
        double acc = 0.0;
        for (Eigen::Index k = n - 1; k >= 0; --k) acc = acc * x + coefficients[k];
        return acc;
    }
    // Clenshaw for Chebyshev series.
    double b1 = 0.0, b2 = 0.0;
    for (Eigen::Index k = n - 1; k >= 1; --k) {
        double b0 = 2.0 * x * b1 - b2 + coefficients[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + coefficients[0];
}

double RealPolynomial::sup_norm_grid(int points) const {
    if (points <= 0) points = grid_points();
    double m = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = -1.0 + 2.0 * i / (points - 1);
        m = std::max(m, std::abs(eval(x)));
    }
    return m;
}

bool RealPolynomial::parity_consistent(double tol) const {
    if (parity == Parity::None) return true;
    const int rem = (parity == Parity::Even) ? 1 : 0;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k)
        if (k % 2 == rem && std::abs(coefficients[k]) > tol) return false;
    return true;
}

bool RealPolynomial::qsp_admissible(double slack) const {
    return sup_norm_grid() <= 1.0 + slack;
}

int ComplexPolynomial::degree() const {
    for (Eigen::Index k = coefficients.size() - 1; k >= 0; --k)
        if (coefficients[k] != cxd(0, 0)) return static_cast<int>(k);
    return 0;
}

cxd ComplexPolynomial::eval(cxd z) const {
    const Eigen::Index n = coefficients.size();
    if (n == 0) return 0.0;
    if (basis == Basis::Monomial) {
        cxd acc = 0.0;
        for (Eigen::Index k = n - 1; k >= 0; --k) acc = acc * z + coefficients[k];
        return acc;
    }
    cxd b1 = 0.0, b2 = 0.0;
    for (Eigen::Index k = n - 1; k >= 1; --k) {
        cxd b0 = 2.0 * z * b1 - b2 + coefficients[k];
        b2 = b1;
        b1 = b0;
    }
    return z * b1 - b2 + coefficients[0];
}

double ComplexPolynomial::sup_norm_unit_circle(int points) const {
    if (points <= 0) points = grid_points();
    double m = 0.0;
    for (int i = 0; i < points; ++i) {
        double phi = 2.0 * kPi * i / points;
        m = std::max(m, std::abs(eval(std::polar(1.0, phi))));
    }
    return m;
}

bool ComplexPolynomial::gqsp_admissible(double slack) const {
    return sup_norm_unit_circle() <= 1.0 + slack;
}

double grid_error(const RealPolynomial& p, const std::function<double(double)>& f,
                  double lo, double hi, int points) {
    if (points <= 0) points = grid_points();
    double m = 0.0;
    for (int i = 0; i < points; ++i) {
        double x = lo + (hi - lo) * i / (points - 1);
        m = std::max(m, std::abs(p.eval(x) - f(x)));
    }
    return m;
}

int truncation_order_r(double t, double eps) {
    if (t <= 0.0) throw domain_error("truncation_order_r: t must be positive");
    if (!(eps > 0.0 && eps < std::exp(-1.0)))
        throw domain_error("truncation_order_r: eps outside (0, 1/e)");
    int r = std::max(1, static_cast<int>(std::ceil(t)));
    // (t/r)^r is monotone decreasing for r >= t, so a linear scan terminates.
    while (r * (std::log(t) - std::log(r)) > std::log(eps)) {
        ++r;
        if (r > 1000000) throw construction_failure("truncation_order_r: no r found");
    }
    return r;
}

namespace {

int jacobi_anger_R(double t, double eps) {
    return truncation_order_r(std::exp(1.0) * std::abs(t) / 2.0, 1.25 * eps) / 2;
}

void check_ja_args(double t, double eps) {
    if (t == 0.0) throw domain_error("jacobi_anger: t must be nonzero");
    if (!(eps > 0.0 && eps < std::exp(-1.0)))
        throw domain_error("jacobi_anger: eps outside (0, 1/e)");
}

}  // namespace

RealPolynomial jacobi_anger_cos(double t, double eps) {
    check_ja_args(t, eps);
    int R = std::max(1, jacobi_anger_R(t, eps));
    RealPolynomial p;
    p.basis = Basis::Chebyshev;
    p.parity = Parity::Even;
    p.coefficients = RealVector::Zero(2 * R + 1);
    const double scale = 1.0 / (1.0 + eps / 4.0);
    p.coefficients[0] = bessel_j(0, t) * scale;
    for (int k = 1; k <= R; ++k) {
        double sgn = (k % 2) ? -1.0 : 1.0;
        p.coefficients[2 * k] = 2.0 * sgn * bessel_j(2 * k, t) * scale;
    }
    return p;
}

RealPolynomial jacobi_anger_sin(double t, double eps) {
    check_ja_args(t, eps);
    int R = std::max(1, jacobi_anger_R(t, eps));
    RealPolynomial p;
    p.basis = Basis::Chebyshev;
    p.parity = Parity::Odd;
    p.coefficients = RealVector::Zero(2 * R + 2);
    const double scale = 1.0 / (1.0 + eps / 4.0);
    for (int k = 0; k <= R; ++k) {
        double sgn = (k % 2) ? -1.0 : 1.0;
        p.coefficients[2 * k + 1] = 2.0 * sgn * bessel_j(2 * k + 1, t) * scale;
    }
    return p;
}

RealPolynomial arcsin_taylor(int k) {
    if (k < 1) throw domain_error("arcsin_taylor: k must be >= 1");
    RealPolynomial p;
    p.basis = Basis::Monomial;
    p.parity = Parity::Odd;
    p.coefficients = RealVector::Zero(2 * k);
    double binom_scaled = 1.0;  // (2l choose l) / 4^l
    for (int l = 0; l < k; ++l) {
        if (l > 0) binom_scaled *= (2.0 * l - 1.0) / (2.0 * l);
        p.coefficients[2 * l + 1] = binom_scaled / (2.0 * l + 1.0) * (2.0 / kPi);
    }
    return p;
}

RealPolynomial arcsin_lagrange(int q, double big_l) {
    if (q < 2 || q % 2 != 0) throw domain_error("arcsin_lagrange: Q must be even >= 2");
    if (!(big_l > 0.0 && big_l <= 1.0 / kPi))
        throw domain_error("arcsin_lagrange: L outside (0, 1/pi]");
    // Q+1 uniform nodes on [-L, L]; solve the Vandermonde system for monomial
    // coefficients. Node count stays small so this is well conditioned enough.
    const int n = q + 1;
    Eigen::MatrixXd v(n, n);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        double x = -big_l + 2.0 * big_l * i / (n - 1);
        double pw = 1.0;
        for (int j = 0; j < n; ++j) {
            v(i, j) = pw;
            pw *= x;
        }
        y[i] = std::asin(x);
    }
    Eigen::VectorXd c = v.colPivHouseholderQr().solve(y);
    RealPolynomial p;
    p.basis = Basis::Monomial;
    p.parity = Parity::Odd;
    p.coefficients = c;
    // Interpolating an odd function on a symmetric grid: even coefficients are
    // numerical noise, zero them to keep the declared parity exact.
    for (int j = 0; j < n; j += 2) p.coefficients[j] = 0.0;
    return p;
}

double erf_inverse(double y) {
    // Newton iteration on erf(x) = y; adequate for the window sizing.
    double x = 0.5;
    for (int it = 0; it < 60; ++it) {
        double f = std::erf(x) - y;
        double d = 2.0 / std::sqrt(kPi) * std::exp(-x * x);
        if (d < 1e-300) break;
        double step = f / d;
        x -= step;
        if (std::abs(step) < 1e-12) break;
    }
    return x;
}

RealPolynomial erf_window(double edge, double width, double tol, int max_degree) {
    auto f = [&](double x) {
        return 0.5 * (std::erf((x + edge) / width) - std::erf((x - edge) / width));
    };
    std::vector<int> degrees;
    for (int d = 16; d < max_degree; d = d * 3 / 2) degrees.push_back(d + d % 2);
    degrees.push_back(max_degree);
    for (int deg : degrees) {
        // Chebyshev interpolation at deg+1 Chebyshev nodes, even part only.
        const int n = deg + 1;
        RealVector c = RealVector::Zero(n);
        std::vector<double> fx(n);
        for (int i = 0; i < n; ++i)
            fx[i] = f(std::cos(kPi * (i + 0.5) / n));
        for (int k = 0; k < n; k += 2) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += fx[i] * std::cos(kPi * k * (i + 0.5) / n);
            c[k] = 2.0 * acc / n;
        }
        c[0] *= 0.5;
        RealPolynomial p;
        p.basis = Basis::Chebyshev;
        p.parity = Parity::Even;
        p.coefficients = c;
        if (grid_error(p, f, -1.0, 1.0) <= tol) return p;
    }
    throw construction_failure("erf_window: degree cap reached");
}

RealPolynomial tophat_window(double delta_prime, double eps_prime) {
    const double dmax = (kPi - 3.0) / (3.0 * kPi);
    if (!(delta_prime > 0.0 && delta_prime <= dmax))
        throw domain_error("tophat_window: delta' outside (0, (pi-3)/(3 pi)]");
    if (!(eps_prime > 0.0 && eps_prime < 0.5))
        throw domain_error("tophat_window: eps' outside (0, 1/2)");
    // Transition centered half way through the allowed band so the plateau
    // still reaches 1-eps' at 1/pi and the tail is below eps' at 1/pi+delta'.
    const double edge = 1.0 / kPi + delta_prime / 2.0;
    const double width = delta_prime / (2.0 * erf_inverse(1.0 - eps_prime));
    RealPolynomial p;
    try {
        p = erf_window(edge, width, eps_prime / 4.0, 2000);
    } catch (const construction_failure&) {
        throw construction_failure("tophat_window: infeasible (delta', eps') pair");
    }
    // Measured acceptance of the window properties.
    const int pts = grid_points();
    double sup = p.sup_norm_grid(pts);
    if (sup > 1.0) {
        p.coefficients /= sup + 1e-15;
    }
    for (int i = 0; i < pts; ++i) {
        double x = -1.0 + 2.0 * i / (pts - 1);
        double w = p.eval(x);
        if (std::abs(x) <= 1.0 / kPi && w < 1.0 - eps_prime)
            throw construction_failure("tophat_window: plateau below 1-eps'");
        if (std::abs(x) >= 1.0 / kPi + delta_prime && std::abs(w) > eps_prime)
            throw construction_failure("tophat_window: tail above eps'");
    }
    return p;
}

RealPolynomial neg_power_poly(double c, double delta, double eps, Parity parity) {
    if (!(delta > 0.0 && delta <= 0.5) || !(eps > 0.0 && eps <= 0.5))
        throw domain_error("neg_power_poly: delta, eps outside (0, 1/2]");
    if (c <= 0.0) throw domain_error("neg_power_poly: c must be positive");
    if (parity == Parity::None) throw domain_error("neg_power_poly: parity required");
    auto f = [&](double x) { return 0.5 * std::pow(delta, c) * std::pow(std::abs(x), -c); };
    const int rem = (parity == Parity::Even) ? 0 : 1;
    for (int half = 4; 2 * half + 1 <= 2000; half = half * 3 / 2) {
        // Least-squares fit on [delta, 1] in the fixed-parity Chebyshev basis,
        // with light Tikhonov damping to keep the off-interval excursion tame.
        const int m = 4 * half + 40;
        Eigen::MatrixXd A(m + half + 1, half + 1);
        Eigen::VectorXd y = Eigen::VectorXd::Zero(m + half + 1);
        for (int i = 0; i < m; ++i) {
            double x = delta + (1.0 - delta) * i / (m - 1);
            for (int j = 0; j <= half; ++j)
                A(i, j) = chebyshev_t(2 * j + rem, x);
            y[i] = f(x);
        }
        for (int j = 0; j <= half; ++j) {
            A.row(m + j).setZero();
            A(m + j, j) = 1e-7;
        }
        Eigen::VectorXd sol = A.colPivHouseholderQr().solve(y);
        RealPolynomial p;
        p.basis = Basis::Chebyshev;
        p.parity = parity;
        p.coefficients = RealVector::Zero(2 * half + 1 + rem);
        for (int j = 0; j <= half; ++j) p.coefficients[2 * j + rem] = sol[j];
        double sup = p.sup_norm_grid();
        if (sup > 1.0) p.coefficients /= sup + 1e-15;
        auto fs = [&](double x) { return f(x); };
        if (grid_error(p, fs, delta, 1.0) <= eps) return p;
    }
    throw construction_failure("neg_power_poly: degree cap reached");
}

ExpIASquaredPair exp_i_a_squared_poly(double eps) {
    if (!(eps > 0.0 && eps < 0.5))
        throw domain_error("exp_i_a_squared_poly: eps outside (0, 1/2)");
    auto fit_even = [&](const std::function<double(double)>& f) {
        for (int deg = 8; deg <= 256; deg += 4) {
            const int n = deg + 1;
            RealVector coef = RealVector::Zero(n);
            std::vector<double> fx(n);
            for (int i = 0; i < n; ++i)
                fx[i] = f(std::cos(kPi * (i + 0.5) / n));
            for (int k = 0; k < n; k += 2) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i)
                    acc += fx[i] * std::cos(kPi * k * (i + 0.5) / n);
                coef[k] = 2.0 * acc / n;
            }
            coef[0] *= 0.5;
            RealPolynomial p;
            p.basis = Basis::Chebyshev;
            p.parity = Parity::Even;
            p.coefficients = coef / (1.0 + eps / 4.0);
            if (grid_error(p, [&](double x) { return f(x) / (1.0 + eps / 4.0); },
                           -1.0, 1.0) <= eps / 4.0)
                return p;
        }
        throw construction_failure("exp_i_a_squared_poly: fit did not converge");
    };
    ExpIASquaredPair pair;
    pair.cos_part = fit_even([](double a) { return std::cos(a * a); });
    pair.sin_part = fit_even([](double a) { return std::sin(a * a); });
    return pair;
}

}  // namespace iqsp
