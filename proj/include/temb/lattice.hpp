#pragma once

#include <array>
#include <string>
#include <vector>

namespace temb {

enum class Color : int { black = 0, white = 1 };
enum class EdgeType : int { I = 1, II = 2, III = 3 };

const char* to_string(Color c);
const char* to_string(EdgeType t);

// A vertex is named by the coordinates of its unique type-I edge; y is the row index.
struct VertexId {
    int x = 0;
    int y = 0;
    Color color = Color::black;
    bool operator==(const VertexId&) const = default;
};

// The face lying to the left of the type-I edge (x, n).
struct FaceId {
    int x = 0;
    int n = 0;
    bool operator==(const FaceId&) const = default;
};

struct VertexRef {
    Color color = Color::black;
    int index = -1;
    bool operator==(const VertexRef&) const = default;
};

// Oriented crossing of a black-white edge: walking from `left` to `right` keeps the black vertex on
// the right, and dT of the edge equals T(right) - T(left).
struct DualCrossing {
    FaceId left;
    FaceId right;
};

DualCrossing edge_crossing(int bx, int by, EdgeType type);

// Offset of the white neighbour of black (x, y) reached by an edge of the given type.
std::array<int, 2> white_offset(EdgeType type);

class HexGraph {
public:
    struct Edge {
        int b = -1;
        int w = -1;
        EdgeType type = EdgeType::I;
    };

    int A = 0;
    std::vector<VertexId> blacks;  // lexicographic on (y, x)
    std::vector<VertexId> whites;  // lexicographic on (y, x)
    std::vector<bool> black_boundary;
    std::vector<bool> white_boundary;
    std::vector<Edge> edges;  // grouped by black vertex, then by edge type
    std::vector<std::vector<int>> black_edges;
    std::vector<std::vector<int>> white_edges;
    std::vector<FaceId> faces;  // interior faces, lexicographic on (n, x)

    int black_index(int x, int y) const;
    int white_index(int x, int y) const;
    int face_index(int x, int n) const;
    bool has_face(int x, int n) const { return face_index(x, n) >= 0; }
    int edge_index(int b, int w) const;

    // Counterclockwise boundary cycle of an interior face, starting at the black vertex b(x, n).
    std::array<VertexRef, 6> face_cycle(int face) const;

private:
    friend HexGraph build_hexagon(int A);
    int lookup(const std::vector<int>& grid, int x, int y, int ymax) const;
    std::vector<int> black_grid_;
    std::vector<int> white_grid_;
    std::vector<int> face_grid_;
};

// Builds the A x A x A hexagon H_A; throws std::invalid_argument unless A is even and positive.
HexGraph build_hexagon(int A);

// Vertex gauges of the boundary sign pattern and the resulting edge signs.
struct BoundaryGauge {
    std::vector<int> black;  // +1 or -1 per black vertex of H_A
    std::vector<int> white;  // +1 or -1 per white vertex of H_A
    std::vector<int> edge;   // product of the two vertex gauges, per edge of H_A
};

BoundaryGauge apply_boundary_gauge(const HexGraph& g);

struct ReducedVertex {
    Color color = Color::black;
    VertexId rep;            // representative vertex of H_A
    int label = 0;           // j for the contracted vertex b_j or w_j, else 0
    std::vector<int> members;  // indices into H_A of the same colour
};

struct ReducedEdge {
    int b = -1;
    int w = -1;
    int sign = 1;
    int base_edge = -1;
    EdgeType type = EdgeType::I;
};

struct ReducedFace {
    FaceId id;
    std::vector<VertexRef> cycle;  // counterclockwise, alternating colours, starts with a black vertex
};

struct KasteleynViolation {
    FaceId face;
    int degree = 0;
    int product = 0;
};

class ReducedHexGraph {
public:
    HexGraph base;
    BoundaryGauge gauge;

    std::vector<ReducedVertex> blacks;
    std::vector<ReducedVertex> whites;
    std::vector<int> black_of_base;  // -1 for removed vertices
    std::vector<int> white_of_base;
    std::vector<ReducedEdge> edges;
    std::vector<int> edge_of_base;  // -1 for removed edges
    std::vector<std::vector<int>> black_edges;
    std::vector<std::vector<int>> white_edges;
    std::vector<ReducedFace> faces;  // same order as base.faces

    std::array<int, 3> b{};  // reduced indices of b1, b2, b3
    std::array<int, 3> w{};  // reduced indices of w1, w2, w3
    std::array<VertexRef, 6> outer{};  // b1, w1, b3, w3, b2, w2

    // Boundary strings as indices into H_A, in the labelling order of the reduction.
    std::array<std::vector<int>, 3> b_tilde;  // b~_{j,0..A}
    std::array<std::vector<int>, 3> w_tilde;  // w~_{j,1..A-1}
    std::array<std::vector<int>, 3> w_prime;  // w'_{j,0..A-1}, removed degree-two whites
    std::array<std::vector<int>, 3> b_prime;  // b'_{j,1..A-2}, removed degree-two blacks

    int A() const { return base.A; }
    int size() const { return static_cast<int>(blacks.size()); }
    int edge_between(int rb, int rw) const;
    bool is_contracted(VertexRef v) const;

    // Signed crossing of a reduced edge in face coordinates; a side outside H_A' is the outer face.
    DualCrossing crossing(int edge) const;
};

ReducedHexGraph reduce(const HexGraph& g, const BoundaryGauge& gauge);

// Product of edge signs around a cycle and the Kasteleyn target (-1)^(k+1) for a face of degree 2k.
int cycle_sign_product(const ReducedHexGraph& rg, const std::vector<VertexRef>& cycle);
std::vector<KasteleynViolation> audit_kasteleyn(const ReducedHexGraph& rg);
int outer_face_product(const ReducedHexGraph& rg);

}  // namespace temb
