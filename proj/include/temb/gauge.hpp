#pragma once

#include <array>
#include <vector>

#include <gmpxx.h>

#include "temb/exact.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"

namespace temb {

struct AbdValues {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
};

struct AbdExact {
    mpq_class alpha;
    mpq_class beta;
    mpq_class delta;
    AbdValues to_double() const;
};

// alpha = (2A-1)! / ((2A)_A (A-1)!), beta = -A alpha / (2A-1), delta = alpha - beta.
AbdValues closed_form_abd(int A);
AbdExact closed_form_abd_exact(int A);

struct GaugePair {
    std::vector<cd> Fb;  // per reduced black vertex
    std::vector<cd> Fw;  // per reduced white vertex
    double alpha = 0.0;  // R(w1, b1) read off the slices
    double beta = 0.0;   // R(w1, b2) read off the slices
    double delta = 0.0;
    double kernel_residual_black = 0.0;  // max |K^T Fb| relative to the local size of Fb
    double kernel_residual_white = 0.0;  // max |K Fw| relative to the local size of Fw
};

// Builds the black and white gauge functions from the six boundary slices of K^{-1}.
GaugePair build_gauges(const ReducedHexGraph& rg, const SignedIncidence& k, const BoundarySlices& s, double tol = 1e-8);

// Coefficients of a value c0 + c1 e^{i pi/3} + c2 e^{-i pi/3}; the three parts are exact rationals.
struct PhaseTriple {
    std::array<mpq_class, 3> c;
    cd value() const;
    PhaseTriple& operator+=(const PhaseTriple& o);
    PhaseTriple& operator*=(const mpq_class& s);
};

// Rational parts of f_A and g_A, evaluated exactly at a Gaussian-rational point.
class KernelFunctions {
public:
    explicit KernelFunctions(int A);
    int A() const { return A_; }
    const AbdExact& abd() const { return abd_; }

    cd f(cd z) const;
    cd g(cd z) const;
    cd gbar(cd z) const;
    cd f_tilde(cd z) const;
    // Rescaled forms compared with the limiting kernel functions.
    cd f_scaled(cd w) const;        // A (2A-1)! / delta * f_A(A w)
    cd f_tilde_scaled(cd w) const;  // 2 (2A)_A A! f~_A(A w)
    cd g_scaled(cd w) const { return g(cd(A_) * w); }

    // Parts of the polynomial P(z) = (-2A-z)_A (-z)_A f_A(z) at an integer point, in the basis
    // e^{2 pi i/3}, 1, e^{-2 pi i/3}.
    std::array<mpq_class, 3> poly_parts(long z) const;
    // Parts of g_A at an integer point that is not a pole, in the basis 1, e^{i pi/3}, e^{-i pi/3}.
    PhaseTriple g_parts(long z) const;

private:
    int A_;
    AbdExact abd_;
    mpq_class c_;
    std::vector<mpq_class> r_;
    std::array<QComplex, 3> f_parts(const QComplex& z) const;
};

// Gauge values from the single-contour formulas, valid at every non-contracted vertex.
cd black_gauge_contour(const KernelFunctions& kf, int x, int n);
cd white_gauge_contour(const KernelFunctions& kf, int y, int m);

}  // namespace temb
