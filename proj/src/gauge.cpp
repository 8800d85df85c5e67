#include "temb/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace temb {

AbdValues AbdExact::to_double() const {
    return {temb::to_double(alpha), temb::to_double(beta), temb::to_double(delta)};
}

AbdValues closed_form_abd(int A) {
    if (A <= 0) throw std::invalid_argument("A must be positive");
    const double la = factorial_log(2 * A - 1).log_abs - pochhammer_log(2 * A, A).log_abs - factorial_log(A - 1).log_abs;
    AbdValues v;
    v.alpha = std::exp(la);
    v.beta = -static_cast<double>(A) * v.alpha / (2.0 * A - 1.0);
    v.delta = v.alpha * (3.0 * A - 1.0) / (2.0 * A - 1.0);
    return v;
}

AbdExact closed_form_abd_exact(int A) {
    if (A <= 0) throw std::invalid_argument("A must be positive");
    AbdExact v;
    v.alpha = rational(factorial(2 * A - 1), pochhammer(2 * A, A) * factorial(A - 1));
    v.beta = -mpq_class(A) * v.alpha / mpq_class(2 * A - 1);
    v.delta = v.alpha - v.beta;
    return v;
}

GaugePair build_gauges(const ReducedHexGraph& rg, const SignedIncidence&, const BoundarySlices& s, double tol) {
    const auto n = static_cast<std::size_t>(rg.size());
    const cd w3 = sixth_root(2);
    const cd w3c = sixth_root(-2);
    const cd e1 = sixth_root(1);
    const cd e1c = sixth_root(-1);
    GaugePair out;
    const auto b1 = static_cast<std::size_t>(rg.b[0]);
    const auto b2 = static_cast<std::size_t>(rg.b[1]);
    out.alpha = s.rows[0].values[b1];
    out.beta = s.rows[0].values[b2];
    out.delta = out.alpha - out.beta;
    if (!(std::abs(out.delta) > 0.0)) throw std::runtime_error("degenerate gauge normalisation");

    out.Fb.resize(n);
    out.Fw.resize(n);
    for (std::size_t b = 0; b < n; ++b)
        out.Fb[b] = (w3 * s.rows[1].values[b] + s.rows[2].values[b] + w3c * s.rows[0].values[b]) / out.delta;
    for (std::size_t w = 0; w < n; ++w)
        out.Fw[w] = -s.cols[0].values[w] + e1 * s.cols[1].values[w] + e1c * s.cols[2].values[w];

    if (std::abs(out.Fb[b1] + 1.0) > tol) throw std::runtime_error("black gauge normalisation F(b1) = -1 failed");

    for (std::size_t w = 0; w < n; ++w) {
        if (rg.whites[w].label != 0) continue;
        cd sum = 0.0;
        double scale = 0.0;
        for (int e : rg.white_edges[w]) {
            const auto& ed = rg.edges[static_cast<std::size_t>(e)];
            const cd v = out.Fb[static_cast<std::size_t>(ed.b)];
            sum += static_cast<double>(ed.sign) * v;
            scale = std::max(scale, std::abs(v));
        }
        if (scale > 0.0) out.kernel_residual_black = std::max(out.kernel_residual_black, std::abs(sum) / scale);
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (rg.blacks[b].label != 0) continue;
        cd sum = 0.0;
        double scale = 0.0;
        for (int e : rg.black_edges[b]) {
            const auto& ed = rg.edges[static_cast<std::size_t>(e)];
            const cd v = out.Fw[static_cast<std::size_t>(ed.w)];
            sum += static_cast<double>(ed.sign) * v;
            scale = std::max(scale, std::abs(v));
        }
        if (scale > 0.0) out.kernel_residual_white = std::max(out.kernel_residual_white, std::abs(sum) / scale);
    }
    const double worst = std::max(out.kernel_residual_black, out.kernel_residual_white);
    if (!(worst <= tol)) throw std::runtime_error("gauge kernel residual " + std::to_string(worst) + " exceeds tolerance");
    return out;
}

cd PhaseTriple::value() const {
    return to_double(c[0]) + to_double(c[1]) * sixth_root(1) + to_double(c[2]) * sixth_root(-1);
}

PhaseTriple& PhaseTriple::operator+=(const PhaseTriple& o) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += o.c[i];
    return *this;
}

PhaseTriple& PhaseTriple::operator*=(const mpq_class& s) {
    for (auto& v : c) v *= s;
    return *this;
}

KernelFunctions::KernelFunctions(int A) : A_(A), abd_(closed_form_abd_exact(A)) {
    c_ = mpq_class(1, 1) / mpq_class(pochhammer(2 * A, A) * factorial(A - 1));
    r_.reserve(static_cast<std::size_t>(A));
    for (long k = 0; k < A; ++k) {
        mpq_class r = mpq_class(1, 1) / mpq_class(pochhammer(-2L * A - k, A) * neg_poch_quotient(k, k, A));
        r_.push_back(r);
    }
}

namespace {

QComplex reciprocal_shift(const QComplex& z, const mpq_class& shift) {
    QComplex d(z.re - shift, z.im);
    if (d.is_zero()) throw std::domain_error("evaluation at a pole");
    return QComplex(mpq_class(1)) / d;
}

cd combine_f(const std::array<QComplex, 3>& p) {
    return sixth_root(2) * p[0].to_cd() + p[1].to_cd() + sixth_root(-2) * p[2].to_cd();
}

QComplex scaled(const QComplex& q, const mpq_class& s) { return {q.re * s, q.im * s}; }

}  // namespace

std::array<QComplex, 3> KernelFunctions::f_parts(const QComplex& z) const {
    std::array<QComplex, 3> p;
    p[0] = scaled(reciprocal_shift(z, A_ - 1), c_);
    for (long k = 0; k < A_; ++k) p[1] += scaled(reciprocal_shift(z, k), r_[static_cast<std::size_t>(k)]);
    p[2] = scaled(reciprocal_shift(z, -2 * A_), c_);
    return p;
}

cd KernelFunctions::f(cd z) const { return combine_f(f_parts(QComplex::from(z))); }

cd KernelFunctions::f_tilde(cd z) const { return f_parts(QComplex::from(z))[1].to_cd(); }

cd KernelFunctions::f_scaled(cd w) const {
    const QComplex z = scaled(QComplex::from(w), A_);
    auto p = f_parts(z);
    const mpq_class s = mpq_class(A_) * mpq_class(factorial(2 * A_ - 1)) / abd_.delta;
    for (auto& q : p) q = scaled(q, s);
    return combine_f(p);
}

cd KernelFunctions::f_tilde_scaled(cd w) const {
    const QComplex z = scaled(QComplex::from(w), A_);
    const mpq_class s = mpq_class(2 * pochhammer(2 * A_, A_) * factorial(A_));
    return scaled(f_parts(z)[1], s).to_cd();
}

cd KernelFunctions::g(cd z) const {
    const double a = A_;
    if (z == cd(-1.0) || z == cd(-a)) throw std::domain_error("evaluation at a pole");
    return -1.0 + sixth_root(1) * a / (1.0 + z) + sixth_root(-1) * a / (-a - z);
}

cd KernelFunctions::gbar(cd z) const {
    const double a = A_;
    if (z == cd(-1.0) || z == cd(-a)) throw std::domain_error("evaluation at a pole");
    return -1.0 + sixth_root(-1) * a / (1.0 + z) + sixth_root(1) * a / (-a - z);
}

std::array<mpq_class, 3> KernelFunctions::poly_parts(long z) const {
    const long A = A_;
    const mpz_class lead = pochhammer(-2 * A - z, A);
    std::array<mpq_class, 3> p;
    p[0] = c_ * mpq_class(lead * neg_poch_quotient(z, A - 1, A));
    p[1] = 0;
    for (long k = 0; k < A; ++k) p[1] += r_[static_cast<std::size_t>(k)] * mpq_class(lead * neg_poch_quotient(z, k, A));
    mpz_class q = -1;
    for (long i = 1; i < A; ++i) q *= -2 * A - z + i;
    p[2] = c_ * mpq_class(q * pochhammer(-z, A));
    return p;
}

PhaseTriple KernelFunctions::g_parts(long z) const {
    if (z == -1 || z == -A_) throw std::domain_error("evaluation at a pole");
    PhaseTriple t;
    t.c[0] = -1;
    t.c[1] = rational(A_, 1 + z);
    t.c[2] = rational(A_, -A_ - z);
    return t;
}

cd black_gauge_contour(const KernelFunctions& kf, int x, int n) {
    const long A = kf.A();
    const long p = 2 * A - n + 1;
    std::array<mpq_class, 3> s{0, 0, 0};
    for (long j = 0; j < p; ++j) {
        const auto parts = kf.poly_parts(x - j);
        const mpz_class den = lagrange_denominator(j, p);
        for (std::size_t i = 0; i < 3; ++i) s[i] += parts[i] / mpq_class(den);
    }
    mpq_class scale = mpq_class(factorial(2 * A - n)) / kf.abd().delta;
    if ((x + n) % 2 != 0) scale = -scale;
    return sixth_root(2) * to_double(s[0] * scale) + to_double(s[1] * scale) + sixth_root(-2) * to_double(s[2] * scale);
}

cd white_gauge_contour(const KernelFunctions& kf, int y, int m) {
    const long A = kf.A();
    const long len = 2 * A - m - 1;
    PhaseTriple acc;
    for (auto& v : acc.c) v = 0;
    for (long k = std::max(y, 0); k < A; ++k) {
        PhaseTriple t = kf.g_parts(k);
        t *= rational(pochhammer(k - y + 1, len), pochhammer(-2 * A - k, A) * neg_poch_quotient(k, k, A));
        acc += t;
    }
    if (y <= -1) acc.c[1] += rational(A * pochhammer(-y, len), pochhammer(-2 * A + 1, A) * factorial(A));
    if (y <= -A) acc.c[2] -= rational(A * pochhammer(-A - y + 1, len), pochhammer(-A, A) * pochhammer(A, A));
    mpq_class scale = rational(factorial(2 * A - 1), factorial(len));
    if ((y + m) % 2 != 0) scale = -scale;
    acc *= scale;
    return acc.value();
}

}  // namespace temb
