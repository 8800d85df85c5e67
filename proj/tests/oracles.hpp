#pragma once

#include <array>
#include <deque>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "temb/embedding.hpp"
#include "temb/exact.hpp"
#include "temb/gauge.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"

namespace temb::oracle {

// Exact element of Q[e^{i pi/3}] as coefficients of e^{i k pi/3}, k = 0..5.
struct Sixths {
    std::array<mpq_class, 6> c{0, 0, 0, 0, 0, 0};

    static Sixths phase(int k, const mpq_class& v) {
        Sixths s;
        s.c[static_cast<std::size_t>(((k % 6) + 6) % 6)] = v;
        return s;
    }
    Sixths& operator+=(const Sixths& o) {
        for (std::size_t i = 0; i < 6; ++i) c[i] += o.c[i];
        return *this;
    }
    Sixths operator*(const Sixths& o) const {
        Sixths r;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) r.c[(i + j) % 6] += c[i] * o.c[j];
        return r;
    }
    Sixths scaled(const mpq_class& s) const {
        Sixths r = *this;
        for (auto& v : r.c) v *= s;
        return r;
    }
    Sixths conj() const {
        Sixths r;
        for (std::size_t i = 0; i < 6; ++i) r.c[(6 - i) % 6] = c[i];
        return r;
    }
    // Coordinates (a, b) of a + b e^{i pi/3}, using e^{2 i pi/3} = e^{i pi/3} - 1.
    std::array<mpq_class, 2> canonical() const {
        return {c[0] - c[2] - c[3] + c[5], c[1] + c[2] - c[4] - c[5]};
    }
    cd value() const {
        cd v = 0.0;
        for (int k = 0; k < 6; ++k) v += to_double(c[static_cast<std::size_t>(k)]) * sixth_root(k);
        return v;
    }
};

struct ExactEmbedding {
    std::vector<Sixths> Fb;
    std::vector<Sixths> Fw;
    std::vector<Sixths> T;  // per dual vertex: faces then v1..v6
    std::vector<Sixths> O;
    std::vector<Sixths> dT;  // per reduced edge
    std::vector<Sixths> dO;
};

// Gauges and positions of the reduced graph in exact arithmetic, integrated over a breadth-first
// spanning tree of the dual graph rooted at v1.
inline ExactEmbedding exact_embedding(const ReducedHexGraph& rg, const TEmbedding& layout) {
    const SignedIncidence k = assemble(rg);
    const RationalMatrix R = exact_rational_inverse(k, rg.A());
    const auto n = static_cast<std::size_t>(rg.size());
    const mpq_class delta = R(rg.w[0], rg.b[0]) - R(rg.w[0], rg.b[1]);
    ExactEmbedding ex;
    ex.Fb.resize(n);
    ex.Fw.resize(n);
    for (std::size_t b = 0; b < n; ++b) {
        const int bi = static_cast<int>(b);
        Sixths s = Sixths::phase(2, R(rg.w[1], bi));
        s += Sixths::phase(0, R(rg.w[2], bi));
        s += Sixths::phase(-2, R(rg.w[0], bi));
        ex.Fb[b] = s.scaled(1 / delta);
    }
    for (std::size_t w = 0; w < n; ++w) {
        const int wi = static_cast<int>(w);
        Sixths s = Sixths::phase(3, R(wi, rg.b[0]));
        s += Sixths::phase(1, R(wi, rg.b[1]));
        s += Sixths::phase(-1, R(wi, rg.b[2]));
        ex.Fw[w] = s;
    }
    for (const ReducedEdge& e : rg.edges) {
        const Sixths fb = ex.Fb[static_cast<std::size_t>(e.b)];
        const Sixths fw = ex.Fw[static_cast<std::size_t>(e.w)];
        ex.dT.push_back((fb * fw).scaled(e.sign));
        ex.dO.push_back((fb * fw.conj()).scaled(e.sign));
    }
    const int F = layout.face_count();
    const std::size_t total = static_cast<std::size_t>(F + 6);
    ex.T.resize(total);
    ex.O.resize(total);
    std::vector<bool> seen(total, false);
    std::multimap<int, std::pair<int, int>> adj;  // dual vertex -> (edge, +1 when it is the left side)
    for (std::size_t e = 0; e < layout.sides.size(); ++e) {
        adj.emplace(layout.sides[e][0], std::pair{static_cast<int>(e), 1});
        adj.emplace(layout.sides[e][1], std::pair{static_cast<int>(e), -1});
    }
    const int root = F;
    ex.T[static_cast<std::size_t>(root)] = Sixths::phase(4, 1);
    ex.O[static_cast<std::size_t>(root)] = Sixths::phase(3, mpq_class(1, 2));
    seen[static_cast<std::size_t>(root)] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        const auto [lo, hi] = adj.equal_range(u);
        for (auto it = lo; it != hi; ++it) {
            const auto [e, dir] = it->second;
            const auto& s = layout.sides[static_cast<std::size_t>(e)];
            const int v = dir > 0 ? s[1] : s[0];
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = true;
            const mpq_class sign = dir;
            Sixths t = ex.T[static_cast<std::size_t>(u)];
            t += ex.dT[static_cast<std::size_t>(e)].scaled(sign);
            Sixths o = ex.O[static_cast<std::size_t>(u)];
            o += ex.dO[static_cast<std::size_t>(e)].scaled(sign);
            ex.T[static_cast<std::size_t>(v)] = t;
            ex.O[static_cast<std::size_t>(v)] = o;
            queue.push_back(v);
        }
    }
    return ex;
}

}  // namespace temb::oracle
