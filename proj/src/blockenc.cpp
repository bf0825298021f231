#include "iqsp/blockenc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "iqsp/laurent.hpp"
#include "iqsp/numerics.hpp"

namespace iqsp {

ComplexMatrix BlockEncoding::block() const {
    return unitary.topLeftCorner(system_dim, system_dim);
}

double BlockEncoding::success_probability() const {
    ComplexMatrix b = block();
    return b.squaredNorm() / static_cast<double>(system_dim);
}

bool BlockEncoding::well_formed(double tol) const {
    if (unitary.rows() != (Eigen::Index{1} << ancillas) * system_dim) return false;
    if (!is_unitary(unitary, 1e-9)) return false;
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(alpha * block()));
    return svd.singularValues()[0] <= alpha + eps + tol;
}

QetSequence qet_phases_from_qsp(const QspSequence& seq) {
    // Rfl(x) = -i e^{i pi/4 Z} W_X(x) e^{i pi/4 Z}: shifting the interleaved
    // phases by pi/4 at the ends and pi/2 inside maps the fixed-axis sequence
    // onto the reflection convention, up to a global i^d.
    const int d = seq.degree();
    QetSequence out;
    out.phases = seq.phases;
    out.phases[0] -= kPi / 4;
    out.phases[d] -= kPi / 4;
    for (int j = 1; j < d; ++j) out.phases[j] -= kPi / 2;
    out.global_phase = std::pow(cxd(0, 1), d);
    return out;
}

BlockEncoding be_sin(const ComplexMatrix& u) {
    if (!is_unitary(u)) throw precondition_error("be_sin: input not unitary");
    const Eigen::Index n = u.rows();
    ComplexMatrix cu = ComplexMatrix::Identity(2 * n, 2 * n);
    cu.bottomRightCorner(n, n) = u;
    ComplexMatrix cud = ComplexMatrix::Identity(2 * n, 2 * n);
    cud.bottomRightCorner(n, n) = u.adjoint();
    ComplexMatrix hI = kron(hadamard(), ComplexMatrix::Identity(n, n));
    ComplexMatrix yI = kron(pauli_y(), ComplexMatrix::Identity(n, n));
    BlockEncoding be;
    be.alpha = 1.0;
    be.ancillas = 1;
    be.eps = 0.0;
    be.system_dim = n;
    be.unitary = hI * cud * yI * cu * hI;
    be.query_count = 2;
    be.backend = "sin-circuit";
    return be;
}

BlockEncoding qet_apply(const BlockEncoding& be, const QetSequence& seq) {
    if (seq.phases.size() < 1) throw precondition_error("qet_apply: empty sequence");
    const Eigen::Index dim = be.unitary.rows();
    const Eigen::Index n = be.system_dim;
    auto refl = [&](double phi) {
        ComplexVector d(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            d[i] = std::polar(1.0, (i < n) ? phi : -phi);
        return d;
    };
    const int d = static_cast<int>(seq.phases.size()) - 1;
    ComplexMatrix m = refl(seq.phases[0]).asDiagonal();
    for (int j = 1; j <= d; ++j) {
        // Alternate U and U^dag; for the Hermitian encodings used here both
        // coincide, for general ones this is the singular-value convention.
        m = m * ((j % 2 == 1) ? be.unitary : ComplexMatrix(be.unitary.adjoint()));
        m = m * ComplexMatrix(refl(seq.phases[j]).asDiagonal());
    }
    BlockEncoding out = be;
    out.unitary = seq.global_phase * m;
    out.query_count = be.query_count * d;
    return out;
}

namespace {

// |0><0| x U_{+phi} + |1><1| x U_{-phi} conjugated by H on the selector
// qubit: the block becomes the real part of the transform polynomial.
BlockEncoding qet_real_pair(const BlockEncoding& be, const QspSequence& solved) {
    QetSequence plus = qet_phases_from_qsp(solved);
    QspSequence negated = solved;
    negated.phases = -negated.phases;
    QetSequence minus = qet_phases_from_qsp(negated);
    BlockEncoding up = qet_apply(be, plus);
    BlockEncoding um = qet_apply(be, minus);
    const Eigen::Index m = up.unitary.rows();
    ComplexMatrix sel = ComplexMatrix::Zero(2 * m, 2 * m);
    sel.topLeftCorner(m, m) = up.unitary;
    sel.bottomRightCorner(m, m) = um.unitary;
    ComplexMatrix hI = kron(hadamard(), ComplexMatrix::Identity(m, m));
    BlockEncoding out = up;
    out.ancillas = be.ancillas + 1;
    out.unitary = hI * sel * hI;
    out.query_count = up.query_count;
    return out;
}

}  // namespace

BlockEncoding log_block_encode(const ComplexMatrix& u, double eps) {
    if (!(eps > 0.0 && eps <= 0.5))
        throw domain_error("log_block_encode: eps outside (0, 1/2]");
    if (!is_unitary(u)) throw precondition_error("log_block_encode: input not unitary");
    // Truncation order for the arcsin series on [-1/2, 1/2] (delta = 1/2).
    const double target_err = 0.45 * eps * (2.0 / kPi);
    int k = 2;
    auto arcsin_scaled = [](double x) { return (2.0 / kPi) * std::asin(x); };
    for (; k < 60; ++k)
        if (grid_error(arcsin_taylor(k), arcsin_scaled, -0.5, 0.5, 401) <= target_err)
            break;
    RealPolynomial target = arcsin_taylor(k);
    QspSolveResult solved = solve_qsp_phases(target, target.degree());

    BlockEncoding out = qet_real_pair(be_sin(u), solved.sequence);
    out.alpha = kPi / 2.0;
    out.eps = eps;
    out.query_count = 2 * target.degree();
    out.backend = "log-block-encoding";
    return out;
}

BlockEncoding be_multiply(const BlockEncoding& a, const BlockEncoding& b) {
    if (a.system_dim != b.system_dim)
        throw domain_error("be_multiply: system dimension mismatch");
    const Eigen::Index da = Eigen::Index{1} << a.ancillas;
    const Eigen::Index db = Eigen::Index{1} << b.ancillas;
    const Eigen::Index n = a.system_dim;
    const Eigen::Index dim = da * db * n;
    if (dim > 4096) throw unsupported_size("be_multiply: dimension above 2^12");
    // Layout [anc_a, anc_b, system]: b acts on (anc_b, system), a on
    // (anc_a, system) with anc_b riding along.
    ComplexMatrix ub = kron(ComplexMatrix::Identity(da, da), b.unitary);
    ComplexMatrix ua = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index ia = 0; ia < da; ++ia)
        for (Eigen::Index ja = 0; ja < da; ++ja)
            for (Eigen::Index s = 0; s < n; ++s)
                for (Eigen::Index t = 0; t < n; ++t) {
                    cxd v = a.unitary(ia * n + s, ja * n + t);
                    if (v == cxd(0, 0)) continue;
                    for (Eigen::Index ib = 0; ib < db; ++ib)
                        ua((ia * db + ib) * n + s, (ja * db + ib) * n + t) = v;
                }
    BlockEncoding out;
    out.alpha = a.alpha * b.alpha;
    out.ancillas = a.ancillas + b.ancillas;
    out.eps = a.alpha * b.eps + b.alpha * a.eps;
    out.system_dim = n;
    out.unitary = ua * ub;
    out.query_count = a.query_count + b.query_count;
    out.backend = a.backend;
    return out;
}

BlockEncoding be_append_system_gate(const BlockEncoding& be, const ComplexMatrix& g) {
    if (!is_unitary(g)) throw precondition_error("be_append_system_gate: not unitary");
    BlockEncoding out = be;
    const Eigen::Index da = Eigen::Index{1} << be.ancillas;
    out.unitary = be.unitary * kron(ComplexMatrix::Identity(da, da), g);
    return out;
}

namespace {

// Laurent coefficients of the truncated Jacobi-Anger expansion of e^{i t x}:
// even exponents carry the cosine Chebyshev weights, odd ones the sine's.
ComplexVector jacobi_anger_laurent(double t, double eps, int* half_out) {
    RealPolynomial pc = jacobi_anger_cos(t, eps);
    RealPolynomial ps = jacobi_anger_sin(t, eps);
    const int h = std::max(pc.degree(), ps.degree());
    ComplexVector c = ComplexVector::Zero(2 * h + 1);
    c[h] = pc.coefficients[0];
    for (int k = 1; k <= h; ++k) {
        cxd ck(0, 0);
        if (k % 2 == 0 && k < static_cast<int>(pc.coefficients.size()))
            ck = 0.5 * pc.coefficients[k];
        if (k % 2 == 1 && k < static_cast<int>(ps.coefficients.size()))
            ck = cxd(0, 0.5 * ps.coefficients[k]);
        c[h + k] = ck;
        c[h - k] = ck;
    }
    *half_out = h;
    return c;
}

// e^{i t H_enc} for a block-encoded Hermitian operator H_enc = alpha * block:
// qubitize with one ancilla, walk with the reflection about the encoding
// subspace, then run the Jacobi-Anger pair over the walk as a single GQSP
// sequence with a trailing negative-power correction.
BlockEncoding exp_of_encoding(const BlockEncoding& be, double eps) {
    const double t = be.alpha;
    const Eigen::Index dim = be.unitary.rows();
    if (4 * dim > 4096) throw unsupported_size("exp_of_encoding: dimension above 2^12");

    ComplexMatrix v = ComplexMatrix::Zero(2 * dim, 2 * dim);
    v.topRightCorner(dim, dim) = be.unitary;
    v.bottomLeftCorner(dim, dim) = be.unitary.adjoint();
    const Eigen::Index n = be.system_dim;
    ComplexMatrix pi_proj = ComplexMatrix::Zero(2 * dim, 2 * dim);
    for (Eigen::Index s = 0; s < n; ++s)
        for (int qa = 0; qa < 2; ++qa)
            for (int qb = 0; qb < 2; ++qb)
                pi_proj(qa * dim + s, qb * dim + s) = 0.5;
    ComplexMatrix w =
        (2.0 * pi_proj - ComplexMatrix::Identity(2 * dim, 2 * dim)) * v;

    int half = 0;
    ComplexVector c = jacobi_anger_laurent(t, eps, &half);
    ComplexPolynomial shifted;
    shifted.basis = Basis::Monomial;
    shifted.coefficients = c;  // G(z) = z^half sum_k c_k z^k
    GqspSolveResult seq = solve_gqsp_phases(shifted, 2 * half);

    ComplexMatrix ug = eval_gqsp(seq.sequence, w);
    ComplexMatrix wdag = w.adjoint();
    ComplexMatrix corr = ComplexMatrix::Identity(2 * dim, 2 * dim);
    for (int i = 0; i < half; ++i) corr = corr * wdag;
    ug = kron(ComplexMatrix::Identity(2, 2), corr) * ug;

    // Rotate the |+> qubitization state to |0> so the block sits at all-zero.
    ComplexMatrix hq = kron(ComplexMatrix::Identity(2, 2),
                            kron(hadamard(), ComplexMatrix::Identity(dim, dim)));
    BlockEncoding out;
    out.alpha = (1.0 + eps / 4.0) * seq.rescale;
    out.ancillas = be.ancillas + 2;
    out.eps = eps + 2.0 * be.eps;
    out.system_dim = n;
    out.unitary = hq * ug * hq;
    out.query_count = be.query_count * 3 * half;
    out.backend = be.backend;
    return out;
}

BlockEncoding trivial_encoding(const ComplexMatrix& u2, const char* backend) {
    BlockEncoding be;
    be.alpha = 1.0;
    be.ancillas = 0;
    be.eps = 0.0;
    be.system_dim = u2.rows();
    be.unitary = u2;
    be.query_count = 1;
    be.backend = backend;
    return be;
}

// ---------------------------------------------------------------------------
// Ancilla-free squaring engine: two W_Z-driven Laurent sequences. Stage one
// synthesizes the windowed arcsin payload in phase, stage two applies the
// cos/sin-of-square pair to the sine of that phase.
// ---------------------------------------------------------------------------

struct SmallSquare {
    GqspSequence stage1, stage2;
    ComplexMatrix calib1{2, 2};  // fixed diagonal correction after stage 1
    ComplexMatrix calib2{2, 2};  // fixed diagonal correction after stage 2
    long queries = 0;

    ComplexMatrix stage1_eval(const ComplexMatrix& oracle) const {
        return eval_gqsp_su2(stage1, oracle) * calib1;
    }
    ComplexMatrix eval(const ComplexMatrix& oracle) const {
        return eval_gqsp_su2(stage2, stage1_eval(oracle)) * calib2;
    }
};

// In-place radix-2 FFT, n a power of two.
void fft_pow2(std::vector<cxd>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        cxd wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cxd w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                cxd u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// All Fourier coefficients of f over u in [0, 2pi) on a 8192 grid.
std::vector<cxd> fourier_all(const std::function<cxd(double)>& f, int grid = 8192) {
    std::vector<cxd> vals(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) vals[static_cast<std::size_t>(i)] = f(2.0 * kPi * i / grid);
    fft_pow2(vals, false);
    for (auto& v : vals) v /= static_cast<double>(grid);
    return vals;  // vals[k] = c_k for k >= 0, vals[grid+k] = c_k for k < 0
}

// Smallest centered window [-h, h] whose out-of-window coefficient mass is
// within the budget; returns the centered array.
ComplexVector fourier_window_auto(const std::vector<cxd>& all, int parity, double budget,
                                  int* h_out, int h_max = 400) {
    const int grid = static_cast<int>(all.size());
    auto coef = [&](int k) { return all[static_cast<std::size_t>((k % grid + grid) % grid)]; };
    double total_tail = 0.0;
    for (int k = h_max + 1; k <= grid / 2; ++k)
        total_tail += std::abs(coef(k)) + std::abs(coef(-k));
    int h = -1;
    std::vector<double> mass(static_cast<std::size_t>(h_max) + 1, 0.0);
    // mass[j] = sum of |c_k| over |k| > j
    double acc = total_tail;
    for (int k = h_max; k >= 1; --k) {
        acc += std::abs(coef(k)) + std::abs(coef(-k));
        mass[static_cast<std::size_t>(k - 1)] = acc;
    }
    for (int j = 1; j <= h_max; ++j) {
        if ((j % 2 + 2) % 2 != parity % 2) continue;
        if (mass[static_cast<std::size_t>(j)] <= budget) {
            h = j;
            break;
        }
    }
    if (h < 0)
        throw construction_failure("fourier_window_auto: tail budget unreachable");
    ComplexVector c = ComplexVector::Zero(2 * h + 1);
    for (int k = -h; k <= h; ++k)
        if (((k - h) % 2 + 2) % 2 == 0) c[k + h] = coef(k);
    *h_out = h;
    return c;
}

ComplexMatrix nearest_diag_inverse(const ComplexMatrix& v) {
    ComplexMatrix c = ComplexMatrix::Identity(2, 2);
    if (std::abs(v(0, 0)) > 1e-9) c(0, 0) = std::conj(v(0, 0) / std::abs(v(0, 0)));
    if (std::abs(v(1, 1)) > 1e-9) c(1, 1) = std::conj(v(1, 1) / std::abs(v(1, 1)));
    return c;
}

// Smooth bump: 1 for |x| <= a, 0 for |x| >= b.
double smooth_bump(double x, double a, double b) {
    double ax = std::abs(x);
    if (ax <= a) return 1.0;
    if (ax >= b) return 0.0;
    double s = (ax - a) / (b - a);
    double t = std::exp(-1.0 / std::max(1e-12, 1.0 - s));
    double t0 = std::exp(-1.0 / std::max(1e-12, s));
    return t / (t + t0);
}

// Unit-circle sup of a centered Laurent array.
double laurent_circle_sup(const ComplexVector& c, int h, int points = 1024) {
    double sup = 0.0;
    for (int i = 0; i < points; ++i) {
        double u = 2.0 * kPi * i / points;
        cxd s = 0.0;
        for (int k = -h; k <= h; ++k) s += c[k + h] * std::polar(1.0, k * u);
        sup = std::max(sup, std::abs(s));
    }
    return sup;
}

void clamp_inside_disk(ComplexVector& c, int h) {
    double sup = laurent_circle_sup(c, h);
    if (sup > 1.0 - 1e-10) c /= sup * (1.0 + 1e-10);
}

// chi_arc: half-angle payload on |u| <= arc (odd). The squaring output is
// exp(i sin^2(chi) Z) up to the stage tolerances. Tails are budgeted against
// eps^2 because the off-diagonal leakage scales as sqrt(1 - |F|^2).
SmallSquare build_small_square(const std::function<double(double)>& chi_arc, double arc,
                               double eps) {
    SmallSquare sq;
    const double tail_budget = std::min(eps / 16.0, eps * eps / 16.0);
    const double blend_hi = std::min(arc + 0.45, 1.45);
    // Stage 1: chi(u) = u + eta(u) with eta the pi-periodization of
    // (chi_arc - u) restricted to the fundamental half-period.
    auto eta = [&](double u) {
        double uw = std::fmod(u + kPi / 2.0, kPi);
        if (uw < 0) uw += kPi;
        uw -= kPi / 2.0;  // wrapped to [-pi/2, pi/2)
        double b = smooth_bump(uw, arc, blend_hi);
        return (b == 0.0) ? 0.0 : (chi_arc(uw) - uw) * b;
    };
    auto t1 = [&](double u) { return std::polar(1.0, u + eta(u)); };
    int h1 = 0;
    ComplexVector c1 = fourier_window_auto(fourier_all(t1), 1, tail_budget, &h1);
    clamp_inside_disk(c1, h1);
    GqspSolveResult s1 = solve_wz_laurent(c1);
    sq.stage1 = s1.sequence;
    {
        ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        ComplexMatrix v0 = eval_gqsp_su2(sq.stage1, id);
        sq.calib1 = nearest_diag_inverse(v0);
    }

    // Stage 2: cos/sin-of-square pair applied to a = sin(v), v the stage-1
    // phase; even Laurent by the evenness of both polynomials.
    ExpIASquaredPair pair = exp_i_a_squared_poly(std::min(0.4, eps / 4.0));
    auto t2 = [&](double v) {
        double a = std::sin(v);
        return cxd(pair.cos_part.eval(a), pair.sin_part.eval(a));
    };
    int h2 = 0;
    ComplexVector c2 = fourier_window_auto(fourier_all(t2), 0, tail_budget, &h2);
    clamp_inside_disk(c2, h2);
    GqspSolveResult s2 = solve_wz_laurent(c2);
    sq.stage2 = s2.sequence;
    {
        ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        ComplexMatrix u0 = eval_gqsp_su2(sq.stage2, sq.stage1_eval(id));
        sq.calib2 = nearest_diag_inverse(u0);
    }
    sq.queries = static_cast<long>(sq.stage1.degree()) * sq.stage2.degree();
    return sq;
}

// Shared payload of the lemma pipeline: arcsin Lagrange times window.
std::function<double(double)> lemma_payload() {
    RealPolynomial pq = arcsin_lagrange(8, 1.0 / kPi);
    RealPolynomial pw = erf_window(0.43, 0.06, 2e-4, 128);
    return [pq, pw](double u) {
        double x = std::sin(u);
        return pq.eval(x) * pw.eval(x);
    };
}

// Bias-corrected payload: chi = arcsin(u) so the final sin^2(chi) equals u^2
// exactly on the arc. Used inside the multiplication gadgets, where the
// polarization identity needs the squared angles to cancel to first order.
std::function<double(double)> corrected_payload() {
    return [](double u) { return std::asin(std::clamp(u, -1.0, 1.0)); };
}

}  // namespace

ComplexMatrix phase_square_small(const SignalRotation& w, double eps) {
    if (w.axis != Axis::Z)
        throw precondition_error("phase_square_small: Z-axis signal expected");
    if (std::abs(w.theta) > 0.6 + 1e-12)
        throw precondition_error("phase_square_small: |theta| must be <= 3/5");
    if (!(eps > 0.0 && eps < 1.0 - std::asin(1.0 / 3.0)))
        throw precondition_error("phase_square_small: eps >= 1 - arcsin(1/3)");
    SmallSquare sq = build_small_square(lemma_payload(), 0.31, eps);
    return sq.eval(eval_signal(w));
}

BlockEncoding phase_square(const SignalRotation& w, double eps_prime) {
    if (w.axis != Axis::Z)
        throw precondition_error("phase_square: Z-axis signal expected");
    if (std::abs(w.theta) > 1.0 + 1e-12)
        throw precondition_error("phase_square: |theta| must be <= 1");
    if (!(eps_prime > 0.0 && eps_prime < 0.5))
        throw domain_error("phase_square: eps' outside (0, 1/2)");
    BlockEncoding lbe = log_block_encode(eval_signal(w), eps_prime / 8.0);
    BlockEncoding sqd = be_multiply(lbe, lbe);
    sqd = be_append_system_gate(sqd, pauli_z());
    BlockEncoding out = exp_of_encoding(sqd, eps_prime / 4.0);
    out.eps = eps_prime;
    out.backend = "six-ancilla";
    return out;
}

BlockEncoding phase_power(const SignalRotation& w, int l, double eps_prime) {
    if (w.axis != Axis::Z)
        throw precondition_error("phase_power: Z-axis signal expected");
    if (l < 1 || l > 6) throw unsupported_size("phase_power: l outside [1, 6]");
    if (std::abs(w.theta) > 1.0 + 1e-12)
        throw precondition_error("phase_power: |theta| must be <= 1");
    if (!(eps_prime > 0.0 && eps_prime < 0.5))
        throw domain_error("phase_power: eps' outside (0, 1/2)");
    if (l == 1) return trivial_encoding(eval_signal(w), "oracle");
    if (l <= 4) {
        BlockEncoding lbe = log_block_encode(eval_signal(w), eps_prime / (8.0 * l));
        BlockEncoding prod = lbe;
        for (int i = 1; i < l; ++i) prod = be_multiply(prod, lbe);
        if (l % 2 == 0) prod = be_append_system_gate(prod, pauli_z());
        BlockEncoding out = exp_of_encoding(prod, eps_prime / 4.0);
        out.eps = eps_prime;
        out.backend = "2l+2-ancilla";
        return out;
    }
    // l in {5, 6}: the multiplied pipeline exceeds the 2^12 dense cap; use the
    // ancilla-free chain, valid for small input angles.
    if (std::abs(w.theta) > 0.47)
        throw unsupported_size(
            "phase_power: l > 4 needs |theta| <= 0.47 (ancilla-free chain)");
    const double step_eps = eps_prime / (2.0 * l);
    SmallSquare sq = build_small_square(corrected_payload(), 0.31, step_eps);
    ComplexMatrix base = eval_signal(w);
    ComplexMatrix acc = sq.eval(base);  // ~ W_Z(theta^2/2)
    long queries = sq.queries;
    const ComplexMatrix x = pauli_x();
    for (int p = 3; p <= l; ++p) {
        // acc <- multiply(acc, base): SQ(acc*base) X SQ(acc) SQ(base) X
        ComplexMatrix m =
            sq.eval(acc * base) * x * sq.eval(acc) * sq.eval(base) * x;
        acc = m;
        queries += 4 * sq.queries;
    }
    BlockEncoding out = trivial_encoding(acc, "ancilla-free-chain");
    out.eps = eps_prime;
    out.alpha = 1.0;
    out.query_count = queries;
    return out;
}

namespace {

enum class MulBackend { Small, Big };

MulBackend backend_for(double angle) {
    if (std::abs(angle) <= 0.6) return MulBackend::Small;
    if (std::abs(angle) <= 1.0 + 1e-12) return MulBackend::Big;
    throw precondition_error("phase multiplication: angle outside squaring range");
}

}  // namespace

BlockEncoding phase_multiply(const SignalRotation& w1, const SignalRotation& w2,
                             double eps) {
    if (w1.axis != Axis::Z || w2.axis != Axis::Z)
        throw precondition_error("phase_multiply: Z-axis signals expected");
    const double t1 = w1.theta, t2 = w2.theta, ts = t1 + t2;
    MulBackend b1 = backend_for(t1), b2 = backend_for(t2), bs = backend_for(ts);
    int bigs = (b1 == MulBackend::Big) + (b2 == MulBackend::Big) + (bs == MulBackend::Big);
    if (bigs > 1)
        throw precondition_error(
            "phase_multiply: at most one factor may need the six-ancilla backend");
    const double part = eps / 3.0;
    const ComplexMatrix x = pauli_x();

    SmallSquare sq = build_small_square(corrected_payload(), 0.31, part);
    auto small_sq = [&](double th) { return sq.eval(eval_signal({Axis::Z, th})); };

    if (bigs == 0) {
        ComplexMatrix v = small_sq(ts) * x * small_sq(t1) * small_sq(t2) * x;
        BlockEncoding out = trivial_encoding(v, "ancilla-free");
        out.eps = eps;
        out.query_count = 3 * sq.queries;
        return out;
    }
    // One factor through the six-ancilla squaring; the remaining 2x2 factors
    // are folded onto the system register around it per
    // target = SQ(ts) X SQ(t1) SQ(t2) X.
    double big_angle = (bs == MulBackend::Big) ? ts : (b1 == MulBackend::Big ? t1 : t2);
    BlockEncoding big = phase_square({Axis::Z, big_angle}, part);
    ComplexMatrix pre = ComplexMatrix::Identity(2, 2);
    ComplexMatrix post = ComplexMatrix::Identity(2, 2);
    if (bs == MulBackend::Big) {
        post = x * small_sq(t1) * small_sq(t2) * x;
    } else if (b1 == MulBackend::Big) {
        pre = small_sq(ts) * x;
        post = small_sq(t2) * x;
    } else {
        pre = small_sq(ts) * x * small_sq(t1);
        post = x;
    }
    const Eigen::Index da = Eigen::Index{1} << big.ancillas;
    BlockEncoding out = big;
    out.unitary = kron(ComplexMatrix::Identity(da, da), pre) * big.unitary *
                  kron(ComplexMatrix::Identity(da, da), post);
    out.eps = eps;
    out.backend = "mixed";
    out.query_count = big.query_count + 3 * sq.queries;
    return out;
}

BlockEncoding phase_product_many(const std::vector<SignalRotation>& ws, double eps) {
    const std::size_t m = ws.size();
    if (m == 0 || (m & (m - 1)) != 0 || m > 8)
        throw precondition_error("phase_product_many: length must be a power of two <= 8");
    for (const auto& w : ws) {
        if (w.axis != Axis::Z)
            throw precondition_error("phase_product_many: Z-axis signals expected");
        if (std::abs(w.theta) > 0.6)
            throw precondition_error("phase_product_many: |theta| must be <= 3/5");
    }
    if (m == 1) return trivial_encoding(eval_signal(ws[0]), "oracle");
    if (m == 2) return phase_multiply(ws[0], ws[1], eps);

    // Sequential reduction in ascending magnitude keeps every pair sum inside
    // the ancilla-free window; feasibility is checked with the exact
    // accumulator before any circuit is built.
    std::vector<double> angles;
    for (const auto& w : ws) angles.push_back(w.theta);
    std::sort(angles.begin(), angles.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    double acc = angles[0] * angles[1];
    if (std::abs(angles[0] + angles[1]) > 0.6)
        throw precondition_error("phase_product_many: pair sum outside small window");
    for (std::size_t i = 2; i < m; ++i) {
        if (std::abs(acc + angles[i]) > 0.6)
            throw precondition_error("phase_product_many: pair sum outside small window");
        acc *= angles[i];
    }

    const double step_eps = eps / static_cast<double>(m - 1);
    SmallSquare sq = build_small_square(corrected_payload(), 0.31, step_eps);
    const ComplexMatrix x = pauli_x();
    auto mul = [&](const ComplexMatrix& va, const ComplexMatrix& vb) {
        return sq.eval(va * vb) * x * sq.eval(va) * sq.eval(vb) * x;
    };
    ComplexMatrix v = eval_signal({Axis::Z, angles[0]});
    v = mul(v, eval_signal({Axis::Z, angles[1]}));
    long queries = 3 * sq.queries;
    for (std::size_t i = 2; i < m; ++i) {
        v = mul(v, eval_signal({Axis::Z, angles[i]}));
        queries += 3 * sq.queries;
    }
    BlockEncoding out = trivial_encoding(v, "ancilla-free");
    out.eps = eps;
    out.query_count = queries;
    return out;
}

BlockEncoding phase_polynomial(const std::vector<PhaseMonomial>& monomials, double eps) {
    if (monomials.empty() || monomials.size() > 4)
        throw precondition_error("phase_polynomial: 1..4 monomials supported");
    const double mono_eps = eps / static_cast<double>(monomials.size());
    SmallSquare sq = build_small_square(corrected_payload(), 0.31, mono_eps / 4.0);
    const ComplexMatrix x = pauli_x();
    auto mul = [&](const ComplexMatrix& va, const ComplexMatrix& vb) {
        return sq.eval(va * vb) * x * sq.eval(va) * sq.eval(vb) * x;
    };

    ComplexMatrix total = ComplexMatrix::Identity(2, 2);
    long queries = 0;
    for (const auto& mono : monomials) {
        // Build the power-unit angles 2 (theta/2)^l = theta^l / 2^{l-1}.
        std::vector<double> units;
        std::vector<ComplexMatrix> unit_mats;
        for (const auto& [rot, power] : mono.factors) {
            if (rot.axis != Axis::Z)
                throw precondition_error("phase_polynomial: Z-axis signals expected");
            if (power < 1 || power > 3)
                throw precondition_error("phase_polynomial: powers 1..3 supported");
            if (std::abs(rot.theta) > 0.6)
                throw precondition_error("phase_polynomial: |theta| must be <= 3/5");
            ComplexMatrix v = eval_signal(rot);
            double ang = rot.theta;
            if (power >= 2) {
                v = sq.eval(v);
                queries += sq.queries;
                ang = ang * ang / 2.0;
            }
            if (power == 3) {
                if (std::abs(ang + rot.theta) > 0.6)
                    throw precondition_error("phase_polynomial: cube outside window");
                v = mul(v, eval_signal(rot));
                queries += 3 * sq.queries;
                ang *= rot.theta;
            }
            units.push_back(ang);
            unit_mats.push_back(v);
        }
        // Fictitious angle carries the coefficient: target W_Z angle is
        // 2 a prod (theta/2)^l = prod(units) * fict.
        double unit_prod = 1.0;
        for (double u : units) unit_prod *= u;
        double target_angle =
            2.0 * mono.coefficient *
            [&] {
                double p = 1.0;
                for (const auto& [rot, power] : mono.factors)
                    p *= std::pow(rot.theta / 2.0, power);
                return p;
            }();
        ComplexMatrix mono_mat;
        if (units.empty()) {
            mono_mat = eval_signal({Axis::Z, target_angle});
        } else {
            double fict = target_angle / unit_prod;
            if (std::abs(fict) > 0.6)
                throw precondition_error("phase_polynomial: coefficient outside window");
            // Sequential multiply with a sign search so every pair sum stays
            // inside the window; a flipped sign is undone by inverting.
            for (int sign = -1; sign <= 1; sign += 2) {
                std::vector<std::pair<double, ComplexMatrix>> items;
                items.emplace_back(sign * fict, eval_signal({Axis::Z, sign * fict}));
                for (std::size_t i = 0; i < units.size(); ++i)
                    items.emplace_back(units[i], unit_mats[i]);
                std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
                    return std::abs(a.first) < std::abs(b.first);
                });
                bool ok = true;
                double acc = items[0].first;
                ComplexMatrix v = items[0].second;
                for (std::size_t i = 1; i < items.size(); ++i) {
                    if (std::abs(acc + items[i].first) > 0.6) {
                        ok = false;
                        break;
                    }
                    v = mul(v, items[i].second);
                    queries += 3 * sq.queries;
                    acc *= items[i].first;
                }
                if (!ok && sign < 0) continue;
                if (!ok)
                    throw precondition_error("phase_polynomial: monomial outside window");
                mono_mat = (sign < 0) ? ComplexMatrix(v.adjoint()) : v;
                break;
            }
        }
        total = total * mono_mat;
    }
    BlockEncoding out = trivial_encoding(total, "ancilla-free");
    out.eps = eps;
    out.query_count = queries;
    return out;
}

CoulombResult coulomb_block_encode(double x1, double y1, double x2, double y2,
                                   double delta, double eps) {
    if (std::abs(x1) > 0.25 || std::abs(y1) > 0.25 || std::abs(x2) > 0.25 ||
        std::abs(y2) > 0.25)
        throw precondition_error("coulomb: coordinates must satisfy |.| <= 1/4");
    const double d2 = (x1 - x2) * (x1 - x2) + (y1 - y2) * (y1 - y2);
    if (d2 < delta) throw promise_violation("coulomb: squared distance below delta");
    if (!(delta > 0.0 && delta <= 0.5))
        throw domain_error("coulomb: delta outside (0, 1/2]");

    // Difference rotations e^{i dx Z} = W_Z(2 dx); wide-arc squarings with the
    // arcsin-corrected payload so sin^2(chi) = u^2 exactly on the arc.
    SmallSquare sq = build_small_square(corrected_payload(), 0.52, eps / 16.0);
    ComplexMatrix vx = sq.eval(eval_signal({Axis::Z, 2.0 * (x1 - x2)}));
    ComplexMatrix vy = sq.eval(eval_signal({Axis::Z, 2.0 * (y1 - y2)}));
    ComplexMatrix vsum = vx * vy;  // ~ e^{i d^2 Z}

    BlockEncoding lbe = log_block_encode(vsum, eps / 8.0);
    const double delta_eff = delta / (kPi / 2.0);
    RealPolynomial np = neg_power_poly(0.5, delta_eff, eps / 4.0, Parity::Even);
    QspSolveResult solved = solve_qsp_phases(np, np.degree());
    BlockEncoding enc = qet_real_pair(lbe, solved.sequence);
    enc.alpha = 1.0;
    enc.eps = eps;
    enc.backend = "coulomb";

    CoulombResult res;
    res.encoding = enc;
    res.distance = std::sqrt(d2);
    res.expected = 0.5 * std::sqrt(delta) / res.distance;
    res.magnitude = std::abs(enc.alpha * enc.block()(0, 0));
    return res;
}

}  // namespace iqsp
