#pragma once

#include <array>
#include <string>
#include <vector>

#include "temb/exact.hpp"
#include "temb/gauge.hpp"
#include "temb/lattice.hpp"

namespace temb {

// Dual vertices are the interior faces 0..F-1 followed by the boundary vertices v1..v6 as F..F+5.
struct TEmbedding {
    int A = 0;
    std::vector<cd> T;  // per interior face, in ReducedHexGraph::faces order
    std::vector<cd> O;
    std::array<cd, 6> Tv{};  // T(v1..v6)
    std::array<cd, 6> Ov{};
    std::vector<cd> dT;  // per reduced edge
    std::vector<cd> dO;
    std::vector<std::array<int, 2>> sides;  // per reduced edge: dual vertices (left, right)
    std::array<int, 6> corner_edge{};       // reduced edge crossed to reach v_j
    std::array<int, 6> corner_face{};       // interior face adjacent to v_j

    int face_count() const { return static_cast<int>(T.size()); }
    cd T_at(int dual) const { return dual < face_count() ? T[static_cast<std::size_t>(dual)] : Tv[static_cast<std::size_t>(dual - face_count())]; }
    cd O_at(int dual) const { return dual < face_count() ? O[static_cast<std::size_t>(dual)] : Ov[static_cast<std::size_t>(dual - face_count())]; }
};

// T(v_j) = -e^{i j pi/3} and O(v_j) = (-1)^j / 2 for j = 1..6.
cd boundary_vertex_T(int j);
double boundary_vertex_O(int j);

// Integrates dT = Fb K Fw and dO = Fb K conj(Fw) along the canonical path v1 -> (0, n) -> (x, n).
TEmbedding integrate(const ReducedHexGraph& rg, const GaugePair& gp);

// T (or O) by a second spanning path that follows the lower-left boundary and then climbs columns.
std::vector<cd> integrate_alternative(const ReducedHexGraph& rg, const TEmbedding& emb, bool origami);

struct ClosureReport {
    double vertex_residual = 0.0;  // max |sum of dT| around interior primal vertices, dT and dO
    double edge_residual = 0.0;    // max |T(R) - T(L) - dT| over interior dual edges, T and O
    double max() const { return vertex_residual > edge_residual ? vertex_residual : edge_residual; }
};

ClosureReport verify_closed(const ReducedHexGraph& rg, const TEmbedding& emb);

struct PerfectnessReport {
    ClosureReport closure;
    double boundary_T_error = 0.0;
    double boundary_O_error = 0.0;
    double bisector_error = 0.0;      // radians
    double white_angle_error = 0.0;   // max |sum of white sectors - pi| over interior dual vertices
    double black_angle_error = 0.0;
    double min_sector = 0.0;          // smallest sector angle
    int nonpositive_faces = 0;        // dual faces with area <= 0
    double area_sum = 0.0;
    double area_error = 0.0;          // |area_sum - 3 sqrt(3) / 2|
    double length_ratio_error = 0.0;  // max | |dO| - |dT| | / |dT|
    double max_abs_O = 0.0;

    struct Tolerances {
        double position = 1e-9;
        double angle = 1e-6;
        double closure = 1e-10;
        double length = 1e-12;
        double area = 1e-9;
    };
    bool passes(const Tolerances& tol) const;
    bool passes() const { return passes(Tolerances{}); }
};

PerfectnessReport verify_perfect(const ReducedHexGraph& rg, const TEmbedding& emb);

// Sector angles around an interior dual vertex, in the counterclockwise order of its face cycle.
// Entry i is the angle inside the primal vertex cycle[(i + 1) % size].
std::vector<double> sector_angles(const ReducedHexGraph& rg, const TEmbedding& emb, int face);

// Signed area of the dual face of a primal vertex (positive for a properly oriented embedding).
double dual_face_area(const ReducedHexGraph& rg, const TEmbedding& emb, VertexRef v);

struct RigidityStats {
    double scale = 0.5;
    int faces = 0;
    int edges = 0;
    double min_edge = 0.0;  // min A |dT| over dual edges inside the region
    double max_edge = 0.0;
    double min_angle = 0.0;  // over sectors at dual vertices inside the region
    double max_angle = 0.0;
};

// Hexagon with vertices -s e^{i j pi/3}; the region used for rigidity statistics.
bool in_scaled_hexagon(cd p, double s);
RigidityStats rigidity_report(const ReducedHexGraph& rg, const TEmbedding& emb, double scale = 0.5);

// Values at face (x, n) from the exact double-residue formulas (A <= 4).
std::pair<cd, cd> exact_TO_oracle(int x, int n, int A);

struct OrigamiRoots {
    std::vector<cd> eta_b;
    std::vector<cd> eta_w;
    std::vector<VertexRef> flagged;  // vertices with a vanishing gauge value
    double max_dT_phase_error = 0.0;  // radians from eta_b^- eta_w^- R
    double max_dO_relation_error = 0.0;  // max |dO - eta_w^2 dT| / |dT|
};

OrigamiRoots origami_roots(const ReducedHexGraph& rg, const GaugePair& gp, const TEmbedding& emb);

struct SymmetryReport {
    double imaginary_axis = 0.0;  // max distance after reflecting across iR
    double plus_60 = 0.0;         // across e^{i pi/3} R
    double minus_60 = 0.0;        // across e^{-i pi/3} R
    double max() const;
};

SymmetryReport reflection_symmetry(const TEmbedding& emb);

}  // namespace temb
