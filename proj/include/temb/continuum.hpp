#pragma once

#include <array>
#include <vector>

#include "temb/exact.hpp"

namespace temb {

enum class Region { liquid, frozen, arctic };
const char* to_string(Region r);

// Action function with principal logarithms; throws std::domain_error on a branch cut.
cd action_S(cd z, double chi, double eta);
cd action_dS(cd z, double chi, double eta);
cd action_d2S(cd z, double chi, double eta);

bool in_rescaled_hexagon(double chi, double eta);
double critical_discriminant(double chi, double eta);

struct CriticalPoint {
    cd zeta;
    cd other;  // the second root of the critical equation
    Region region = Region::liquid;
    double discriminant = 0.0;
    int interval = 0;  // 1..6 for frozen points
};

// Upper-half-plane critical point; the larger real root in frozen regions.
CriticalPoint critical_point(double chi, double eta, double arctic_tol = 1e-8);

// Index j of the interval I_j of R minus {-2, -1, -1/2, 0, 1} containing t; 0 at a puncture.
int real_interval(double t);
// z(I_j) = e^{-i (j+1) pi/3} and theta(I_j) = (-1)^j / 2.
cd interval_vertex(int j);
double interval_height(int j);

inline constexpr std::array<double, 5> kPunctures{-2.0, -1.0, -0.5, 0.0, 1.0};

cd eval_f(cd z);
cd eval_g(cd z);
cd eval_gbar(cd z);
cd eval_f_factored(cd z);
cd eval_g_factored(cd z);
// The real-coefficient partial fractions of f * gbar.
cd eval_fgbar_partial(cd z);

struct SurfacePoint {
    cd z;
    double theta = 0.0;
    double theta_imag = 0.0;      // imaginary part of the raw theta integral
    double min_pole_distance = 0.0;  // closest approach of the path to a pole
};

// Limit maps by adaptive Gauss-Legendre quadrature along conj(zeta) -> -3 -> zeta.
SurfacePoint limit_point(cd zeta);
cd limit_z(cd zeta);
double limit_theta(cd zeta);

// The same maps from the partial-fraction antiderivative with continuous logarithm branches.
SurfacePoint limit_point_antiderivative(cd zeta);

struct SurfaceCheck {
    int samples = 0;
    double conformality = 0.0;
    int spacelike_failures = 0;
    double harmonicity = 0.0;
    double theta_imag = 0.0;
    double quadrature_gap = 0.0;
    double metric_residual = 0.0;  // |dz dz* - (d theta)^2| from finite differences of the computed maps
};

SurfaceCheck surface_checks(const std::vector<cd>& samples, double h = 1e-3);

// Winding number of z around the origin as zeta traverses the boundary of the upper half plane.
int boundary_winding(int samples_per_unit = 200);

struct ImageCheck {
    int points = 0;
    double min_separation = 0.0;
    double min_jacobian = 0.0;
    double max_jacobian = 0.0;
    bool injective() const { return min_separation > 1e-9; }
    bool orientation_preserving() const { return min_jacobian > 0.0; }
};

// Composed map (chi, eta) -> z(zeta(chi, eta)) on a grid of liquid points.
ImageCheck liquid_image_check(int grid, double min_discriminant = 0.05);

}  // namespace temb
