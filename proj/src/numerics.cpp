#include "iqsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace iqsp {

int grid_points() {
    if (const char* env = std::getenv("IQSP_GRID_POINTS")) {
        int n = std::atoi(env);
        if (n >= 11) return n;
    }
    return kDefaultGridPoints;
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
    StateVector s;
    s.num_qubits = num_qubits;
    s.amplitudes = ComplexVector::Zero(std::size_t{1} << num_qubits);
    s.amplitudes[static_cast<Eigen::Index>(index)] = 1.0;
    return s;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
    return max_abs(d) <= tol;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
    if (h.rows() != h.cols()) return false;
    return max_abs(ComplexMatrix(h - h.adjoint())) <= tol;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix hadamard() {
    ComplexMatrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

ComplexMatrix mat_exp(const ComplexMatrix& h, double t) {
    if (h.rows() != h.cols()) throw domain_error("mat_exp: matrix not square");
    if (h.rows() > 4096) throw unsupported_size("mat_exp: dimension above 2^12");
    if (!is_hermitian(h, 1e-10))
        throw symmetry_violation("mat_exp: input is not Hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
    ComplexVector phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        phases[k] = std::exp(cxd(0.0, -es.eigenvalues()[k] * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

double bessel_series(int n, double t) {
    // Power series sum_m (-1)^m (t/2)^{n+2m} / (m! (n+m)!), safe for small t.
    double half = 0.5 * t;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= -half * half / (static_cast<double>(m) * (n + m));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

double bessel_miller(int n, double t) {
    // Downward recurrence, normalized via J_0(t) + 2 sum_k J_{2k}(t) = 1.
    int start = std::max(n, static_cast<int>(std::abs(t))) + 30;
    if (start % 2) ++start;
    std::vector<double> j(start + 2, 0.0);
    j[start + 1] = 0.0;
    j[start] = 1e-30;
    for (int k = start; k >= 1; --k) {
        j[k - 1] = 2.0 * k / t * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int m = k - 1; m <= start + 1; ++m) j[m] *= 1e-250;
        }
    }
    double norm = j[0];
    for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
    return j[n] / norm;
}

}  // namespace

double bessel_j(int n, double t) {
    if (n < 0 || n > 200) throw domain_error("bessel_j: order out of range [0,200]");
    if (std::abs(t) > 50.0) throw domain_error("bessel_j: |t| above 50");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    double sign = 1.0;
    if (t < 0.0) {
        t = -t;
        if (n % 2) sign = -1.0;
    }
    if (t < 14.0 || n > t) return sign * bessel_series(n, t);
    return sign * bessel_miller(n, t);
}

double chebyshev_t(int n, double x) {
    if (n < 0) throw domain_error("chebyshev_t: negative order");
    if (std::abs(x) > 1.0 + 1e-14) throw domain_error("chebyshev_t: |x| > 1");
    if (n == 0) return 1.0;
    double tm = 1.0, tc = x;
    for (int k = 2; k <= n; ++k) {
        double tn = 2.0 * x * tc - tm;
        tm = tc;
        tc = tn;
    }
    return tc;
}

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return 1.0 - std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

double max_abs_mod_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
    cxd tr = (a.adjoint() * b).trace();
    cxd phase = (std::abs(tr) < 1e-300) ? cxd(1, 0) : tr / std::abs(tr);
    return max_abs(ComplexMatrix(a * phase - b));
}

}  // namespace iqsp
