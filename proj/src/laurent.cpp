#include "iqsp/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace iqsp::detail {

cxd poly_eval(const ComplexVector& coeffs, cxd z) {
    cxd acc = 0.0;
    for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * z + coeffs[k];
    return acc;
}

namespace {

cxd poly_deriv_eval(const ComplexVector& coeffs, cxd z) {
    cxd acc = 0.0;
    for (Eigen::Index k = coeffs.size() - 1; k >= 1; --k)
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

}  // namespace

std::vector<cxd> poly_roots(const ComplexVector& coeffs) {
    const double mx = coeffs.cwiseAbs().maxCoeff();
    if (mx == 0.0) return {};
    Eigen::Index hi = coeffs.size() - 1;
    while (hi > 0 && std::abs(coeffs[hi]) < 1e-14 * mx) --hi;
    Eigen::Index lo = 0;
    while (lo < hi && std::abs(coeffs[lo]) < 1e-14 * mx) ++lo;

    std::vector<cxd> roots(static_cast<std::size_t>(lo), cxd(0, 0));
    const Eigen::Index n = hi - lo;
    if (n >= 1) {
        ComplexMatrix comp = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[lo + i] / coeffs[hi];
        Eigen::ComplexEigenSolver<ComplexMatrix> es(comp, false);
        for (Eigen::Index i = 0; i < n; ++i) {
            cxd r = es.eigenvalues()[i];
            for (int it = 0; it < 3; ++it) {
                cxd d = poly_deriv_eval(coeffs, r);
                if (std::abs(d) < 1e-300) break;
                cxd step = poly_eval(coeffs, r) / d;
                if (!std::isfinite(std::abs(step)) || std::abs(step) > 0.5) break;
                r -= step;
            }
            roots.push_back(r);
        }
    }
    return roots;
}

ComplexVector one_minus_abs2_shifted(const ComplexVector& p) {
    const Eigen::Index d = p.size() - 1;
    ComplexVector s = ComplexVector::Zero(2 * d + 1);
    for (Eigen::Index k = 0; k <= d; ++k)
        for (Eigen::Index l = 0; l <= d; ++l)
            s[k - l + d] -= p[k] * std::conj(p[l]);
    s[d] += 1.0;
    return s;
}

double pair_defect(const ComplexVector& p, const ComplexVector& q, int points) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        cxd z = std::polar(1.0, 2.0 * kPi * i / points);
        double v = 1.0 - std::norm(poly_eval(p, z)) - std::norm(poly_eval(q, z));
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

namespace {

// Minimum-phase spectral factorization via the cepstrum: for R bounded away
// from zero on the circle, returns b with |b(z)|^2 = R(z) and, for real
// Laurent R, real coefficients. Well conditioned whenever the dynamic range
// of R is moderate.
ComplexVector cepstral_factor(const ComplexVector& p, Eigen::Index d) {
    const int n = 4096;
    std::vector<double> logr(n);
    for (int i = 0; i < n; ++i) {
        cxd z = std::polar(1.0, 2.0 * kPi * i / n);
        double r = 1.0 - std::norm(poly_eval(p, z));
        logr[i] = std::log(std::max(r, 1e-300));
    }
    // causal cepstrum: l_0 = c_0 / 2, l_k = c_k for k >= 1
    std::vector<cxd> l(d + 1, 0.0);
    for (Eigen::Index k = 0; k <= d; ++k) {
        cxd acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += logr[i] * std::polar(1.0, -2.0 * kPi * k * i / n);
        l[k] = acc / static_cast<double>(n);
    }
    l[0] *= 0.5;
    // b = exp of the causal series, truncated at degree d
    ComplexVector b = ComplexVector::Zero(d + 1);
    b[0] = std::exp(l[0]);
    for (Eigen::Index m = 1; m <= d; ++m) {
        cxd acc = 0.0;
        for (Eigen::Index k = 1; k <= m; ++k)
            acc += static_cast<double>(k) * l[k] * b[m - k];
        b[m] = acc / static_cast<double>(m);
    }
    return b;
}

}  // namespace

ComplexVector complete_pair(const ComplexVector& p, bool imaginary_real) {
    const Eigen::Index d = p.size() - 1;
    ComplexVector s = one_minus_abs2_shifted(p);
    const double smax = s.cwiseAbs().maxCoeff();
    ComplexVector q = ComplexVector::Zero(d + 1);
    if (smax < 1e-24) return q;  // |P| = 1 on the circle, Q = 0

    // Conditioning probe: R's dynamic range on the circle decides between the
    // cepstral factorization and explicit root pairing.
    double rmin = 1e300, rmax = 0.0;
    for (int i = 0; i < 512; ++i) {
        cxd z = std::polar(1.0, 2.0 * kPi * (i + 0.37) / 512);
        double r = std::max(0.0, 1.0 - std::norm(poly_eval(p, z)));
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmin > 0.0 && rmax / rmin < 1e8) {
        ComplexVector b = cepstral_factor(p, d);
        if (imaginary_real) {
            for (Eigen::Index k = 0; k <= d; ++k) b[k] = cxd(0.0, b[k].real());
        }
        if (pair_defect(p, b) < 1e-10) return b;
        // fall through to the root method when the cepstrum truncates badly
    }

    std::vector<cxd> roots = poly_roots(s);
    // Roots come in (rho, 1/conj(rho)) pairs; keep the inside-disk member of
    // each pair. Near-circle pairs are resolved by magnitude ordering, ties
    // by non-negative imaginary part first.
    std::sort(roots.begin(), roots.end(), [](cxd a, cxd b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (std::abs(ma - mb) > 1e-12) return ma < mb;
        if (std::abs(a.imag() - b.imag()) > 1e-12) return a.imag() > b.imag();
        return a.real() < b.real();
    });
    std::vector<cxd> inside(roots.begin(),
                            roots.begin() + std::min<std::size_t>(roots.size(), d));
    if (imaginary_real) {
        // Keep the set closed under conjugation so the product has real
        // coefficients: greedily re-pair near-real-axis mismatches.
        for (auto& r : inside)
            if (std::abs(r.imag()) < 1e-12) r = cxd(r.real(), 0.0);
    }

    ComplexVector prod = ComplexVector::Zero(d + 1);
    prod[0] = 1.0;
    Eigen::Index used = 0;
    for (cxd r : inside) {
        for (Eigen::Index k = used + 1; k >= 1; --k) prod[k] = prod[k - 1] - r * prod[k];
        prod[0] = -r * prod[0];
        ++used;
    }
    // Scale so |Q|^2 matches 1-|P|^2 on the circle (average over a grid).
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 257; ++i) {
        cxd z = std::polar(1.0, 2.0 * kPi * (i + 0.31) / 257);
        double want = std::max(0.0, 1.0 - std::norm(poly_eval(p, z)));
        double have = std::norm(poly_eval(prod, z));
        num += want * have;
        den += have * have;
    }
    double gamma2 = (den > 0) ? num / den : 0.0;
    cxd gamma = std::sqrt(std::max(0.0, gamma2));
    if (imaginary_real) gamma *= cxd(0, 1);
    q = prod * gamma;
    return q;
}

}  // namespace iqsp::detail
