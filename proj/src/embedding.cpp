#include "temb/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace temb {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

// Base edge shared by two adjacent faces, or -1 when they are not adjacent.
int shared_base_edge(const HexGraph& g, FaceId a, FaceId b) {
    const int dx = b.x - a.x;
    const int dn = b.n - a.n;
    int bx = 0, bn = 0;
    EdgeType t = EdgeType::I;
    if (dx == 1 && dn == 0) { bx = a.x; bn = a.n; t = EdgeType::I; }
    else if (dx == -1 && dn == 0) { bx = a.x - 1; bn = a.n; t = EdgeType::I; }
    else if (dx == 0 && dn == 1) { bx = a.x - 1; bn = a.n + 1; t = EdgeType::III; }
    else if (dx == 0 && dn == -1) { bx = a.x - 1; bn = a.n; t = EdgeType::III; }
    else if (dx == 1 && dn == -1) { bx = a.x; bn = a.n; t = EdgeType::II; }
    else if (dx == -1 && dn == 1) { bx = a.x - 1; bn = a.n + 1; t = EdgeType::II; }
    else return -1;
    const int bi = g.black_index(bx, bn);
    if (bi < 0) return -1;
    const auto off = white_offset(t);
    const int wi = g.white_index(bx + off[0], bn + off[1]);
    return wi < 0 ? -1 : g.edge_index(bi, wi);
}

// Walks across one reduced edge from a dual vertex whose value is known.
class Walker {
public:
    Walker(const ReducedHexGraph& rg, const TEmbedding& emb, bool origami, std::vector<cd>& values)
        : rg_(rg), emb_(emb), origami_(origami), values_(values) {}

    void step(FaceId from, FaceId to) {
        const int be = shared_base_edge(rg_.base, from, to);
        const int e = be < 0 ? -1 : rg_.edge_of_base[uz(be)];
        if (e < 0) throw std::logic_error("integration path leaves the reduced graph");
        const int a = rg_.base.face_index(from.x, from.n);
        const int b = rg_.base.face_index(to.x, to.n);
        values_[uz(b)] = across(e, a, values_[uz(a)]);
    }

    cd across(int e, int from_dual, cd value) const {
        const cd d = origami_ ? emb_.dO[uz(e)] : emb_.dT[uz(e)];
        const auto& s = emb_.sides[uz(e)];
        if (s[0] == from_dual) return value + d;
        if (s[1] == from_dual) return value - d;
        throw std::logic_error("edge is not incident to the dual vertex");
    }

private:
    const ReducedHexGraph& rg_;
    const TEmbedding& emb_;
    bool origami_;
    std::vector<cd>& values_;
};

double cross(cd a, cd b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

cd boundary_vertex_T(int j) { return -sixth_root(j); }
double boundary_vertex_O(int j) { return j % 2 == 0 ? 0.5 : -0.5; }

TEmbedding integrate(const ReducedHexGraph& rg, const GaugePair& gp) {
    const auto& g = rg.base;
    TEmbedding emb;
    emb.A = rg.A();
    const int F = static_cast<int>(rg.faces.size());
    emb.T.assign(uz(F), cd{});
    emb.O.assign(uz(F), cd{});
    emb.dT.resize(rg.edges.size());
    emb.dO.resize(rg.edges.size());
    emb.sides.resize(rg.edges.size());

    const std::array<std::pair<int, int>, 6> corners{{{rg.b[0], rg.w[0]}, {rg.b[0], rg.w[1]}, {rg.b[1], rg.w[1]},
                                                      {rg.b[1], rg.w[2]}, {rg.b[2], rg.w[2]}, {rg.b[2], rg.w[0]}}};
    for (std::size_t j = 0; j < 6; ++j) {
        emb.corner_edge[j] = rg.edge_between(corners[j].first, corners[j].second);
        if (emb.corner_edge[j] < 0) throw std::logic_error("missing outer edge");
    }

    for (int e = 0; e < static_cast<int>(rg.edges.size()); ++e) {
        const auto& ed = rg.edges[uz(e)];
        const cd fb = gp.Fb[uz(ed.b)];
        const cd fw = gp.Fw[uz(ed.w)];
        emb.dT[uz(e)] = fb * static_cast<double>(ed.sign) * fw;
        emb.dO[uz(e)] = fb * static_cast<double>(ed.sign) * std::conj(fw);
        const auto c = rg.crossing(e);
        const int l = g.face_index(c.left.x, c.left.n);
        const int r = g.face_index(c.right.x, c.right.n);
        if (l >= 0 && r >= 0) {
            emb.sides[uz(e)] = {l, r};
            continue;
        }
        const auto it = std::find(emb.corner_edge.begin(), emb.corner_edge.end(), e);
        if (it == emb.corner_edge.end() || (l < 0 && r < 0)) throw std::logic_error("unexpected boundary edge");
        const int j = static_cast<int>(it - emb.corner_edge.begin());
        emb.sides[uz(e)] = {l >= 0 ? l : F + j, r >= 0 ? r : F + j};
        emb.corner_face[uz(j)] = l >= 0 ? l : r;
    }

    emb.Tv[0] = boundary_vertex_T(1);
    emb.Ov[0] = boundary_vertex_O(1);
    const int start = g.face_index(0, 1);
    if (emb.corner_face[0] != start) throw std::logic_error("v1 is not adjacent to face (0,1)");
    Walker wt(rg, emb, false, emb.T);
    Walker wo(rg, emb, true, emb.O);
    emb.T[uz(start)] = wt.across(emb.corner_edge[0], F, emb.Tv[0]);
    emb.O[uz(start)] = wo.across(emb.corner_edge[0], F, emb.Ov[0]);

    auto step = [&](FaceId a, FaceId b) {
        wt.step(a, b);
        wo.step(a, b);
    };
    for (int n = 1; g.has_face(0, n + 1); ++n) step({0, n}, {0, n + 1});
    for (int n = 1; g.has_face(0, n); ++n) {
        for (int x = 0; g.has_face(x + 1, n); ++x) step({x, n}, {x + 1, n});
        for (int x = 0; g.has_face(x - 1, n); --x) step({x, n}, {x - 1, n});
    }

    for (int j = 1; j < 6; ++j) {
        const int e = emb.corner_edge[uz(j)];
        const int f = emb.corner_face[uz(j)];
        emb.Tv[uz(j)] = wt.across(e, f, emb.T[uz(f)]);
        emb.Ov[uz(j)] = wo.across(e, f, emb.O[uz(f)]);
    }
    return emb;
}

std::vector<cd> integrate_alternative(const ReducedHexGraph& rg, const TEmbedding& emb, bool origami) {
    const auto& g = rg.base;
    const int A = rg.A();
    std::vector<cd> v(emb.T.size());
    Walker w(rg, emb, origami, v);
    const int start = g.face_index(0, 1);
    const int F = emb.face_count();
    v[uz(start)] = w.across(emb.corner_edge[0], F, origami ? emb.Ov[0] : emb.Tv[0]);
    for (int x = 0; x > -A + 1; --x) w.step({x, 1 - x}, {x - 1, 2 - x});
    for (int x = 0; g.has_face(x + 1, 1); ++x) w.step({x, 1}, {x + 1, 1});
    for (int x = -A + 1; x <= A - 1; ++x) {
        int n = x <= 0 ? 1 - x : 1;
        for (; g.has_face(x, n + 1); ++n) w.step({x, n}, {x, n + 1});
    }
    return v;
}

ClosureReport verify_closed(const ReducedHexGraph& rg, const TEmbedding& emb) {
    ClosureReport r;
    auto vertex_sums = [&](const std::vector<ReducedVertex>& verts, const std::vector<std::vector<int>>& inc) {
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (verts[i].label != 0) continue;
            cd st = 0.0, so = 0.0;
            for (int e : inc[i]) {
                st += emb.dT[uz(e)];
                so += emb.dO[uz(e)];
            }
            r.vertex_residual = std::max({r.vertex_residual, std::abs(st), std::abs(so)});
        }
    };
    vertex_sums(rg.blacks, rg.black_edges);
    vertex_sums(rg.whites, rg.white_edges);
    for (std::size_t e = 0; e < emb.sides.size(); ++e) {
        const auto [l, rr] = emb.sides[e];
        const double et = std::abs(emb.T_at(rr) - emb.T_at(l) - emb.dT[e]);
        const double eo = std::abs(emb.O_at(rr) - emb.O_at(l) - emb.dO[e]);
        r.edge_residual = std::max({r.edge_residual, et, eo});
    }
    return r;
}

std::vector<double> sector_angles(const ReducedHexGraph& rg, const TEmbedding& emb, int face) {
    const auto& cyc = rg.faces[uz(face)].cycle;
    const std::size_t k = cyc.size();
    std::vector<cd> dirs(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& a = cyc[i];
        const auto& b = cyc[(i + 1) % k];
        const int e = a.color == Color::black ? rg.edge_between(a.index, b.index) : rg.edge_between(b.index, a.index);
        dirs[i] = emb.sides[uz(e)][0] == face ? emb.dT[uz(e)] : -emb.dT[uz(e)];
    }
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        double t = std::arg(dirs[(i + 1) % k] / dirs[i]);
        if (t <= 0.0) t += 2.0 * kPi;
        out[i] = t;
    }
    return out;
}

double dual_face_area(const ReducedHexGraph& rg, const TEmbedding& emb, VertexRef v) {
    const auto& inc = v.color == Color::black ? rg.black_edges[uz(v.index)] : rg.white_edges[uz(v.index)];
    std::map<int, int> next_edge;
    std::map<int, int> balance;
    for (int e : inc) {
        const auto [l, r] = emb.sides[uz(e)];
        next_edge[l] = e;
        ++balance[l];
        --balance[r];
    }
    int node = emb.sides[uz(inc.front())][0];
    for (const auto& [n, b] : balance)
        if (b == 1) node = n;
    cd pos = 0.0;
    double twice = 0.0;
    for (std::size_t step = 0; step < inc.size(); ++step) {
        const auto it = next_edge.find(node);
        if (it == next_edge.end()) throw std::logic_error("dual face boundary is not a chain");
        const cd next = pos + emb.dT[uz(it->second)];
        twice += cross(pos, next);
        pos = next;
        node = emb.sides[uz(it->second)][1];
    }
    return v.color == Color::white ? 0.5 * twice : -0.5 * twice;
}

bool PerfectnessReport::passes(const Tolerances& tol) const {
    return boundary_T_error <= tol.position && boundary_O_error <= tol.position && bisector_error < tol.angle &&
           white_angle_error < tol.angle && black_angle_error < tol.angle && min_sector > 0.0 &&
           nonpositive_faces == 0 && closure.max() < tol.closure && length_ratio_error <= tol.length &&
           area_error <= tol.area;
}

PerfectnessReport verify_perfect(const ReducedHexGraph& rg, const TEmbedding& emb) {
    PerfectnessReport rep;
    rep.closure = verify_closed(rg, emb);
    for (int j = 0; j < 6; ++j) {
        rep.boundary_T_error = std::max(rep.boundary_T_error, std::abs(emb.Tv[uz(j)] - boundary_vertex_T(j + 1)));
        rep.boundary_O_error = std::max(rep.boundary_O_error, std::abs(emb.Ov[uz(j)] - boundary_vertex_O(j + 1)));
        const int e = emb.corner_edge[uz(j)];
        const cd d = emb.sides[uz(e)][0] == emb.face_count() + j ? emb.dT[uz(e)] : -emb.dT[uz(e)];
        rep.bisector_error = std::max(rep.bisector_error, std::abs(std::arg(d / -emb.Tv[uz(j)])));
    }
    rep.min_sector = 2.0 * kPi;
    for (int f = 0; f < emb.face_count(); ++f) {
        const auto angles = sector_angles(rg, emb, f);
        const auto& cyc = rg.faces[uz(f)].cycle;
        double black = 0.0, white = 0.0;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            (cyc[(i + 1) % cyc.size()].color == Color::black ? black : white) += angles[i];
            rep.min_sector = std::min(rep.min_sector, angles[i]);
        }
        rep.black_angle_error = std::max(rep.black_angle_error, std::abs(black - kPi));
        rep.white_angle_error = std::max(rep.white_angle_error, std::abs(white - kPi));
    }
    for (int i = 0; i < rg.size(); ++i) {
        for (Color c : {Color::black, Color::white}) {
            const double a = dual_face_area(rg, emb, {c, i});
            rep.area_sum += a;
            if (!(a > 0.0)) ++rep.nonpositive_faces;
        }
    }
    rep.area_error = std::abs(rep.area_sum - 1.5 * std::numbers::sqrt3);
    for (std::size_t e = 0; e < emb.dT.size(); ++e) {
        const double t = std::abs(emb.dT[e]);
        rep.length_ratio_error = std::max(rep.length_ratio_error, std::abs(std::abs(emb.dO[e]) - t) / t);
    }
    for (const auto& o : emb.O) rep.max_abs_O = std::max(rep.max_abs_O, std::abs(o));
    return rep;
}

bool in_scaled_hexagon(cd p, double s) {
    const double apothem = s * std::numbers::sqrt3 / 2.0;
    for (int k = 0; k < 6; ++k) {
        const cd normal = std::polar(1.0, kPi / 6.0 + k * kPi / 3.0);
        if ((p * std::conj(normal)).real() > apothem) return false;
    }
    return true;
}

RigidityStats rigidity_report(const ReducedHexGraph& rg, const TEmbedding& emb, double scale) {
    RigidityStats st;
    st.scale = scale;
    std::vector<bool> inside(emb.T.size());
    for (std::size_t f = 0; f < emb.T.size(); ++f) inside[f] = in_scaled_hexagon(emb.T[f], scale);
    st.min_edge = st.min_angle = INFINITY;
    st.max_edge = st.max_angle = 0.0;
    for (int f = 0; f < emb.face_count(); ++f) {
        if (!inside[uz(f)]) continue;
        ++st.faces;
        for (double a : sector_angles(rg, emb, f)) {
            st.min_angle = std::min(st.min_angle, a);
            st.max_angle = std::max(st.max_angle, a);
        }
    }
    for (std::size_t e = 0; e < emb.sides.size(); ++e) {
        const auto [l, r] = emb.sides[e];
        if (l >= emb.face_count() || r >= emb.face_count() || !inside[uz(l)] || !inside[uz(r)]) continue;
        ++st.edges;
        const double len = emb.A * std::abs(emb.dT[e]);
        st.min_edge = std::min(st.min_edge, len);
        st.max_edge = std::max(st.max_edge, len);
    }
    if (st.faces == 0) throw std::invalid_argument("rigidity region contains no faces");
    return st;
}

std::pair<cd, cd> exact_TO_oracle(int x, int n, int A) {
    if (A > 4) throw std::invalid_argument("exact T/O oracle is limited to A <= 4");
    const HexGraph g = build_hexagon(A);
    if (!g.has_face(x, n)) throw std::invalid_argument("not an interior face");
    const KernelFunctions kf(A);
    const long a = A;

    // I(z1) with P split into the phases e^{2 pi i/3}, 1, e^{-2 pi i/3}.
    auto inner = [&](long z1) {
        std::array<mpq_class, 3> s{0, 0, 0};
        const long p1 = 2 * a - n;
        for (long j = 0; j < p1; ++j) {
            const auto parts = kf.poly_parts(x - 1 - j);
            mpz_class num = 1;
            for (long i = 0; i < p1; ++i)
                if (i != j) num *= z1 - (x - 1 - i);
            const mpq_class w = rational(num, lagrange_denominator(j, p1));
            for (std::size_t i = 0; i < 3; ++i) s[i] += parts[i] * w;
        }
        const long p2 = 2 * a - 1;
        for (long j = 0; j < p2; ++j) {
            const auto parts = kf.poly_parts(-1 - j);
            mpz_class num = 1;
            for (long i = 0; i < p2; ++i)
                if (i != j) num *= z1 + 1 + i;
            const mpq_class w = rational(num, lagrange_denominator(j, p2));
            for (std::size_t i = 0; i < 3; ++i) s[i] -= parts[i] * w;
        }
        return s;
    };

    constexpr std::array<int, 3> p_phase{2, 0, -2};
    std::array<mpq_class, 6> binT, binO;
    for (auto& v : binT) v = 0;
    for (auto& v : binO) v = 0;
    auto add = [&](const std::array<mpq_class, 3>& I, const std::array<mpq_class, 3>& gc, const mpq_class& w) {
        constexpr std::array<int, 3> g_phase{0, 1, -1};
        for (std::size_t i = 0; i < 3; ++i) {
            if (sgn(I[i]) == 0) continue;
            for (std::size_t k = 0; k < 3; ++k) {
                if (sgn(gc[k]) == 0) continue;
                const mpq_class v = I[i] * gc[k] * w;
                binT[uz(((p_phase[i] + g_phase[k]) % 6 + 6) % 6)] += v;
                binO[uz(((p_phase[i] - g_phase[k]) % 6 + 6) % 6)] += v;
            }
        }
    };
    for (long k = 0; k < a; ++k) {
        const auto gp = kf.g_parts(k);
        add(inner(k), gp.c, rational(1, pochhammer(-2 * a - k, a) * neg_poch_quotient(k, k, a)));
    }
    if (x < 0) {
        const std::array<mpq_class, 3> gc{0, mpq_class(a), 0};
        add(inner(-1), gc, rational(1, pochhammer(-2 * a + 1, a) * factorial(a)));
    }
    const mpq_class scale = mpq_class(factorial(2 * a - 1)) / kf.abd().delta;
    const double delta = to_double(kf.abd().delta);
    cd T = -sixth_root(1) + sixth_root(1) * delta;
    cd O = -0.5 + sixth_root(-1) * delta;
    for (int i = 0; i < 6; ++i) {
        T += sixth_root(i) * to_double(binT[uz(i)] * scale);
        O += sixth_root(i) * to_double(binO[uz(i)] * scale);
    }
    return {T, O};
}

OrigamiRoots origami_roots(const ReducedHexGraph& rg, const GaugePair& gp, const TEmbedding& emb) {
    OrigamiRoots r;
    auto root = [&](cd f, VertexRef v) {
        const double m = std::abs(f);
        if (!(m > 0.0)) {
            r.flagged.push_back(v);
            return cd(1.0, 0.0);
        }
        return std::conj(f) / m;
    };
    for (int i = 0; i < rg.size(); ++i) {
        r.eta_b.push_back(root(gp.Fb[uz(i)], {Color::black, i}));
        r.eta_w.push_back(root(gp.Fw[uz(i)], {Color::white, i}));
    }
    for (std::size_t e = 0; e < rg.edges.size(); ++e) {
        const auto& ed = rg.edges[e];
        const cd eb = r.eta_b[uz(ed.b)];
        const cd ew = r.eta_w[uz(ed.w)];
        const cd u = emb.dT[e] * eb * ew;
        const double t = std::abs(std::arg(u));
        r.max_dT_phase_error = std::max(r.max_dT_phase_error, std::min(t, kPi - t));
        const double rel = std::abs(emb.dO[e] - ew * ew * emb.dT[e]) / std::abs(emb.dT[e]);
        r.max_dO_relation_error = std::max(r.max_dO_relation_error, rel);
    }
    return r;
}

double SymmetryReport::max() const { return std::max({imaginary_axis, plus_60, minus_60}); }

SymmetryReport reflection_symmetry(const TEmbedding& emb) {
    std::vector<cd> pts = emb.T;
    std::sort(pts.begin(), pts.end(), [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    auto nearest = [&](cd q) {
        const double window = 1e-6;
        auto it = std::lower_bound(pts.begin(), pts.end(), q.real() - window, [](cd a, double v) { return a.real() < v; });
        double best = INFINITY;
        for (; it != pts.end() && it->real() <= q.real() + window; ++it) best = std::min(best, std::abs(*it - q));
        return best;
    };
    auto worst = [&](cd mirror) {
        double w = 0.0;
        for (const auto& p : emb.T) w = std::max(w, nearest(mirror * std::conj(p)));
        return w;
    };
    SymmetryReport r;
    r.imaginary_axis = worst(-1.0);
    r.plus_60 = worst(sixth_root(2));
    r.minus_60 = worst(sixth_root(-2));
    return r;
}

}  // namespace temb
