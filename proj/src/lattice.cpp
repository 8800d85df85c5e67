#include "temb/lattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace temb {

const char* to_string(Color c) { return c == Color::black ? "black" : "white"; }

const char* to_string(EdgeType t) {
    switch (t) {
        case EdgeType::I: return "I";
        case EdgeType::II: return "II";
        default: return "III";
    }
}

std::array<int, 2> white_offset(EdgeType type) {
    switch (type) {
        case EdgeType::I: return {0, 0};
        case EdgeType::II: return {0, -1};
        default: return {1, -1};
    }
}

DualCrossing edge_crossing(int bx, int by, EdgeType type) {
    switch (type) {
        case EdgeType::I: return {{bx, by}, {bx + 1, by}};
        case EdgeType::II: return {{bx + 1, by - 1}, {bx, by}};
        default: return {{bx + 1, by}, {bx + 1, by - 1}};
    }
}

namespace {

constexpr int kPad = 2;

bool black_exists(int A, int x, int n) {
    return n >= 1 && n <= 2 * A && x >= -A && x <= A - 1 && x + n >= 0 && x + n <= 2 * A - 1;
}

bool white_exists(int A, int x, int n) {
    return n >= 0 && n <= 2 * A - 1 && x >= -A && x <= A - 1 && x + n >= 0 && x + n <= 2 * A - 1;
}

int grid_width(int A) { return 2 * A + 1 + 2 * kPad; }

int grid_slot(int A, int x, int y) {
    const int w = grid_width(A);
    const int cx = x + A + kPad;
    const int cy = y + kPad;
    if (cx < 0 || cx >= w || cy < 0 || cy >= 2 * A + 1 + 2 * kPad) return -1;
    return cy * w + cx;
}

bool less_yx(const VertexId& a, const VertexId& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

}  // namespace

int HexGraph::lookup(const std::vector<int>& grid, int x, int y, int) const {
    const int slot = grid_slot(A, x, y);
    return slot < 0 ? -1 : grid[static_cast<std::size_t>(slot)];
}

int HexGraph::black_index(int x, int y) const { return lookup(black_grid_, x, y, 2 * A); }
int HexGraph::white_index(int x, int y) const { return lookup(white_grid_, x, y, 2 * A); }
int HexGraph::face_index(int x, int n) const { return lookup(face_grid_, x, n, 2 * A); }

int HexGraph::edge_index(int b, int w) const {
    for (int e : black_edges[static_cast<std::size_t>(b)])
        if (edges[static_cast<std::size_t>(e)].w == w) return e;
    return -1;
}

std::array<VertexRef, 6> HexGraph::face_cycle(int face) const {
    const auto [x, n] = faces.at(static_cast<std::size_t>(face));
    return {VertexRef{Color::black, black_index(x, n)},
            VertexRef{Color::white, white_index(x, n)},
            VertexRef{Color::black, black_index(x - 1, n + 1)},
            VertexRef{Color::white, white_index(x - 1, n)},
            VertexRef{Color::black, black_index(x - 1, n)},
            VertexRef{Color::white, white_index(x, n - 1)}};
}

HexGraph build_hexagon(int A) {
    if (A <= 0 || A % 2 != 0) throw std::invalid_argument("A must be even");
    HexGraph g;
    g.A = A;
    const auto slots = static_cast<std::size_t>(grid_width(A) * (2 * A + 1 + 2 * kPad));
    g.black_grid_.assign(slots, -1);
    g.white_grid_.assign(slots, -1);
    g.face_grid_.assign(slots, -1);

    for (int n = 0; n <= 2 * A; ++n) {
        for (int x = -A; x <= A - 1; ++x) {
            if (black_exists(A, x, n)) {
                g.black_grid_[static_cast<std::size_t>(grid_slot(A, x, n))] = static_cast<int>(g.blacks.size());
                g.blacks.push_back({x, n, Color::black});
            }
            if (white_exists(A, x, n)) {
                g.white_grid_[static_cast<std::size_t>(grid_slot(A, x, n))] = static_cast<int>(g.whites.size());
                g.whites.push_back({x, n, Color::white});
            }
        }
    }

    g.black_edges.resize(g.blacks.size());
    g.white_edges.resize(g.whites.size());
    for (int bi = 0; bi < static_cast<int>(g.blacks.size()); ++bi) {
        const auto& b = g.blacks[static_cast<std::size_t>(bi)];
        for (EdgeType t : {EdgeType::I, EdgeType::II, EdgeType::III}) {
            const auto off = white_offset(t);
            const int wi = g.white_index(b.x + off[0], b.y + off[1]);
            if (wi < 0) continue;
            const int e = static_cast<int>(g.edges.size());
            g.edges.push_back({bi, wi, t});
            g.black_edges[static_cast<std::size_t>(bi)].push_back(e);
            g.white_edges[static_cast<std::size_t>(wi)].push_back(e);
        }
    }

    for (int n = 0; n <= 2 * A; ++n) {
        for (int x = -A; x <= A; ++x) {
            const bool inside = black_exists(A, x, n) && white_exists(A, x, n) &&
                                black_exists(A, x - 1, n + 1) && white_exists(A, x - 1, n) &&
                                black_exists(A, x - 1, n) && white_exists(A, x, n - 1);
            if (!inside) continue;
            g.face_grid_[static_cast<std::size_t>(grid_slot(A, x, n))] = static_cast<int>(g.faces.size());
            g.faces.push_back({x, n});
        }
    }

    g.black_boundary.resize(g.blacks.size());
    for (std::size_t i = 0; i < g.blacks.size(); ++i) {
        const auto& b = g.blacks[i];
        g.black_boundary[i] = !(g.has_face(b.x, b.y) && g.has_face(b.x + 1, b.y) && g.has_face(b.x + 1, b.y - 1));
    }
    g.white_boundary.resize(g.whites.size());
    for (std::size_t i = 0; i < g.whites.size(); ++i) {
        const auto& w = g.whites[i];
        g.white_boundary[i] = !(g.has_face(w.x, w.y) && g.has_face(w.x + 1, w.y) && g.has_face(w.x, w.y + 1));
    }
    return g;
}

BoundaryGauge apply_boundary_gauge(const HexGraph& g) {
    const int A = g.A;
    BoundaryGauge out;
    out.black.assign(g.blacks.size(), 1);
    out.white.assign(g.whites.size(), 1);
    for (std::size_t i = 0; i < g.blacks.size(); ++i) {
        const auto [x, n, c] = g.blacks[i];
        const bool even_x = x % 2 == 0;
        if ((n == 1 && even_x) || (x + n == 2 * A - 1 && even_x) || (x == -A && n >= A && n % 2 != 0))
            out.black[i] = -1;
    }
    for (std::size_t i = 0; i < g.whites.size(); ++i) {
        if (g.white_edges[i].size() != 3) continue;
        const auto [x, n, c] = g.whites[i];
        const bool flip = (x == A - 1 && n >= 1 && n <= A - 1 && n % 2 == 0) ||
                          (n == 2 * A - 1 && x >= -A + 1 && x <= -1 && x % 2 == 0) ||
                          (x + n == 0 && n >= 1 && n <= A - 1 && n % 2 == 0);
        if (flip) out.white[i] = -1;
    }
    out.edge.resize(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& ed = g.edges[e];
        out.edge[e] = out.black[static_cast<std::size_t>(ed.b)] * out.white[static_cast<std::size_t>(ed.w)];
    }
    return out;
}

int ReducedHexGraph::edge_between(int rb, int rw) const {
    for (int e : black_edges[static_cast<std::size_t>(rb)])
        if (edges[static_cast<std::size_t>(e)].w == rw) return e;
    return -1;
}

bool ReducedHexGraph::is_contracted(VertexRef v) const {
    const auto& list = v.color == Color::black ? blacks : whites;
    return list[static_cast<std::size_t>(v.index)].label != 0;
}

DualCrossing ReducedHexGraph::crossing(int edge) const {
    const auto& be = base.edges[static_cast<std::size_t>(edges[static_cast<std::size_t>(edge)].base_edge)];
    const auto& b = base.blacks[static_cast<std::size_t>(be.b)];
    return edge_crossing(b.x, b.y, be.type);
}

namespace {

int black_string(int A, int x, int n) {
    if (n == 1) return 1;
    if (x + n == 2 * A - 1) return 2;
    if (x == -A && n >= A) return 3;
    return 0;
}

int white_string(int A, int x, int n) {
    if (x + n == 0 && n >= 1 && n <= A - 1) return 1;
    if (x == A - 1 && n >= 1 && n <= A - 1) return 2;
    if (n == 2 * A - 1 && x >= -A + 1 && x <= -1) return 3;
    return 0;
}

bool black_removed(int A, int x, int n) {
    return black_string(A, x, n) == 0 && (x + n == 0 || x == A - 1 || n == 2 * A);
}

bool white_removed(int A, int x, int n) {
    return white_string(A, x, n) == 0 && (n == 0 || x + n == 2 * A - 1 || x == -A);
}

struct Pending {
    VertexId rep;
    int label = 0;
    std::vector<int> members;
};

std::vector<ReducedVertex> finalize(std::vector<Pending> list, Color color, std::vector<int>& of_base) {
    std::sort(list.begin(), list.end(), [](const Pending& a, const Pending& b) { return less_yx(a.rep, b.rep); });
    std::vector<ReducedVertex> out;
    out.reserve(list.size());
    for (auto& p : list) {
        const int idx = static_cast<int>(out.size());
        for (int m : p.members) of_base[static_cast<std::size_t>(m)] = idx;
        out.push_back({color, p.rep, p.label, std::move(p.members)});
    }
    return out;
}

}  // namespace

ReducedHexGraph reduce(const HexGraph& g, const BoundaryGauge& gauge) {
    const int A = g.A;
    ReducedHexGraph rg;
    rg.base = g;
    rg.gauge = gauge;

    auto bidx = [&](int x, int n) {
        const int i = g.black_index(x, n);
        if (i < 0) throw std::logic_error("missing black vertex (" + std::to_string(x) + "," + std::to_string(n) + ")");
        return i;
    };
    auto widx = [&](int x, int n) {
        const int i = g.white_index(x, n);
        if (i < 0) throw std::logic_error("missing white vertex (" + std::to_string(x) + "," + std::to_string(n) + ")");
        return i;
    };
    for (int j = 0; j <= A; ++j) {
        rg.b_tilde[0].push_back(bidx(j - 1, 1));
        rg.b_tilde[1].push_back(bidx(j - 1, 2 * A - j));
        rg.b_tilde[2].push_back(bidx(-A, 2 * A - j));
    }
    for (int k = 1; k <= A - 1; ++k) {
        rg.w_tilde[0].push_back(widx(-k, k));
        rg.w_tilde[1].push_back(widx(A - 1, k));
        rg.w_tilde[2].push_back(widx(-k, 2 * A - 1));
    }
    for (int j = 0; j <= A - 1; ++j) {
        rg.w_prime[0].push_back(widx(j, 0));
        rg.w_prime[1].push_back(widx(j, 2 * A - j - 1));
        rg.w_prime[2].push_back(widx(-A, 2 * A - j - 1));
    }
    for (int k = 1; k <= A - 2; ++k) {
        rg.b_prime[0].push_back(bidx(-k - 1, k + 1));
        rg.b_prime[1].push_back(bidx(A - 1, k + 1));
        rg.b_prime[2].push_back(bidx(-k - 1, 2 * A));
    }

    const std::array<VertexId, 3> brep{VertexId{-1, 1, Color::black}, VertexId{-1, 2 * A, Color::black},
                                       VertexId{-A, 2 * A, Color::black}};
    const std::array<VertexId, 3> wrep{VertexId{-1, 1, Color::white}, VertexId{A - 1, 1, Color::white},
                                       VertexId{-1, 2 * A - 1, Color::white}};

    std::vector<Pending> pb(3), pw(3);
    for (int j = 0; j < 3; ++j) {
        pb[static_cast<std::size_t>(j)].rep = brep[static_cast<std::size_t>(j)];
        pb[static_cast<std::size_t>(j)].label = j + 1;
        pw[static_cast<std::size_t>(j)].rep = wrep[static_cast<std::size_t>(j)];
        pw[static_cast<std::size_t>(j)].label = j + 1;
    }
    for (int i = 0; i < static_cast<int>(g.blacks.size()); ++i) {
        const auto& v = g.blacks[static_cast<std::size_t>(i)];
        if (const int s = black_string(A, v.x, v.y); s != 0)
            pb[static_cast<std::size_t>(s - 1)].members.push_back(i);
        else if (!black_removed(A, v.x, v.y))
            pb.push_back({v, 0, {i}});
    }
    for (int i = 0; i < static_cast<int>(g.whites.size()); ++i) {
        const auto& v = g.whites[static_cast<std::size_t>(i)];
        if (const int s = white_string(A, v.x, v.y); s != 0)
            pw[static_cast<std::size_t>(s - 1)].members.push_back(i);
        else if (!white_removed(A, v.x, v.y))
            pw.push_back({v, 0, {i}});
    }
    rg.black_of_base.assign(g.blacks.size(), -1);
    rg.white_of_base.assign(g.whites.size(), -1);
    rg.blacks = finalize(std::move(pb), Color::black, rg.black_of_base);
    rg.whites = finalize(std::move(pw), Color::white, rg.white_of_base);
    if (rg.blacks.size() != rg.whites.size()) throw std::logic_error("reduced graph is not balanced");

    for (int j = 0; j < 3; ++j) {
        rg.b[static_cast<std::size_t>(j)] =
            rg.black_of_base[static_cast<std::size_t>(g.black_index(brep[static_cast<std::size_t>(j)].x, brep[static_cast<std::size_t>(j)].y))];
        rg.w[static_cast<std::size_t>(j)] =
            rg.white_of_base[static_cast<std::size_t>(g.white_index(wrep[static_cast<std::size_t>(j)].x, wrep[static_cast<std::size_t>(j)].y))];
    }

    rg.edge_of_base.assign(g.edges.size(), -1);
    rg.black_edges.resize(rg.blacks.size());
    rg.white_edges.resize(rg.whites.size());
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& be = g.edges[static_cast<std::size_t>(e)];
        const int rb = rg.black_of_base[static_cast<std::size_t>(be.b)];
        const int rw = rg.white_of_base[static_cast<std::size_t>(be.w)];
        if (rb < 0 || rw < 0) continue;
        if (!seen.emplace(std::pair{rb, rw}, e).second)
            throw std::logic_error("reduction produced a multiple edge");
        const int idx = static_cast<int>(rg.edges.size());
        rg.edges.push_back({rb, rw, gauge.edge[static_cast<std::size_t>(e)], e, be.type});
        rg.edge_of_base[static_cast<std::size_t>(e)] = idx;
        rg.black_edges[static_cast<std::size_t>(rb)].push_back(idx);
        rg.white_edges[static_cast<std::size_t>(rw)].push_back(idx);
    }

    for (int f = 0; f < static_cast<int>(g.faces.size()); ++f) {
        std::vector<VertexRef> cyc;
        for (const auto& v : g.face_cycle(f)) {
            const auto& map = v.color == Color::black ? rg.black_of_base : rg.white_of_base;
            const int r = map[static_cast<std::size_t>(v.index)];
            if (r < 0) continue;
            const VertexRef ref{v.color, r};
            if (!cyc.empty() && cyc.back() == ref) continue;
            cyc.push_back(ref);
        }
        while (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
        const auto first_black = std::find_if(cyc.begin(), cyc.end(), [](const VertexRef& v) { return v.color == Color::black; });
        std::rotate(cyc.begin(), first_black, cyc.end());
        if (cyc.size() < 4 || cyc.size() % 2 != 0) throw std::logic_error("degenerate reduced face");
        rg.faces.push_back({g.faces[static_cast<std::size_t>(f)], std::move(cyc)});
    }

    rg.outer = {VertexRef{Color::black, rg.b[0]}, VertexRef{Color::white, rg.w[0]},
                VertexRef{Color::black, rg.b[2]}, VertexRef{Color::white, rg.w[2]},
                VertexRef{Color::black, rg.b[1]}, VertexRef{Color::white, rg.w[1]}};

    if (const auto bad = audit_kasteleyn(rg); !bad.empty()) {
        const auto& v = bad.front();
        throw std::runtime_error("Kasteleyn condition violated at face (" + std::to_string(v.face.x) + "," +
                                 std::to_string(v.face.n) + ")");
    }
    return rg;
}

int cycle_sign_product(const ReducedHexGraph& rg, const std::vector<VertexRef>& cycle) {
    int product = 1;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const auto& a = cycle[i];
        const auto& b = cycle[(i + 1) % cycle.size()];
        const int rb = a.color == Color::black ? a.index : b.index;
        const int rw = a.color == Color::black ? b.index : a.index;
        const int e = rg.edge_between(rb, rw);
        if (e < 0) throw std::logic_error("face cycle uses a missing edge");
        product *= rg.edges[static_cast<std::size_t>(e)].sign;
    }
    return product;
}

std::vector<KasteleynViolation> audit_kasteleyn(const ReducedHexGraph& rg) {
    std::vector<KasteleynViolation> out;
    for (const auto& f : rg.faces) {
        const int degree = static_cast<int>(f.cycle.size());
        const int target = (degree / 2) % 2 == 1 ? 1 : -1;
        const int product = cycle_sign_product(rg, f.cycle);
        if (product != target) out.push_back({f.id, degree, product});
    }
    return out;
}

int outer_face_product(const ReducedHexGraph& rg) {
    return cycle_sign_product(rg, std::vector<VertexRef>(rg.outer.begin(), rg.outer.end()));
}

}  // namespace temb
