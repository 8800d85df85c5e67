#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "temb/gauge.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"

using namespace temb;

namespace {

struct Fixture {
    HexGraph g;
    BoundaryGauge gauge;
    ReducedHexGraph rg;
    SignedIncidence k;
    explicit Fixture(int A) : g(build_hexagon(A)), gauge(apply_boundary_gauge(g)), rg(reduce(g, gauge)), k(assemble(rg)) {}
};

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

}  // namespace

TEST_CASE("assembled matrix carries the reduced edge signs") {
    for (int A : {2, 4, 8}) {
        const Fixture f(A);
        CHECK(f.k.n == f.rg.size());
        CHECK(f.k.K.nonZeros() == static_cast<long>(f.rg.edges.size()));
        for (const ReducedEdge& e : f.rg.edges) CHECK(f.k.K.coeff(e.b, e.w) == static_cast<double>(e.sign));
        const auto dense = f.k.dense_int();
        for (std::size_t b = 0; b < dense.size(); ++b)
            for (std::size_t w = 0; w < dense.size(); ++w)
                CHECK((dense[b][w] != 0) == (f.rg.edge_between(static_cast<int>(b), static_cast<int>(w)) >= 0));
    }
    const Fixture f4(4);
    const auto dense = f4.k.dense_int();
    int nonzero = 0;
    for (long v : dense[uz(f4.rg.b[0])]) nonzero += v != 0;
    CHECK(nonzero == 5);
}

TEST_CASE("exact inverse of the A = 2 reduced matrix") {
    const Fixture f(2);
    const RationalMatrix R = exact_rational_inverse(f.k, 2);
    CHECK(R.det != 0);
    CHECK(R(f.rg.w[0], f.rg.b[0]) == mpq_class(3, 10));
    CHECK(R(f.rg.w[0], f.rg.b[1]) == mpq_class(-1, 5));
    CHECK(R(f.rg.w[0], f.rg.b[0]) - R(f.rg.w[0], f.rg.b[1]) == mpq_class(1, 2));
    const auto K = f.k.dense_int();
    const int n = f.k.n;
    for (int b = 0; b < n; ++b) {
        for (int b2 = 0; b2 < n; ++b2) {
            mpq_class s = 0;
            for (int w = 0; w < n; ++w) s += mpq_class(K[uz(b)][uz(w)]) * R(w, b2);
            CHECK(s == (b == b2 ? 1 : 0));
        }
    }
    CHECK_THROWS_AS(exact_rational_inverse(assemble(Fixture(8).rg), 8), std::invalid_argument);
}

TEST_CASE("fraction-free inverse on a small integer matrix") {
    const std::vector<std::vector<long>> m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
    const RationalMatrix inv = exact_inverse(m);
    CHECK(abs(inv.det) == 18);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            mpq_class s = 0;
            for (int k = 0; k < 3; ++k) s += mpq_class(m[uz(i)][uz(k)]) * inv(k, j);
            CHECK(s == (i == j ? 1 : 0));
        }
    CHECK_THROWS(exact_inverse({{1, 2}, {2, 4}}));
}

TEST_CASE("boundary slices agree with the exact inverse") {
    for (int A : {2, 4, 6}) {
        CAPTURE(A);
        const Fixture f(A);
        const BoundarySlices s = inverse_rows_cols(f.k, f.rg);
        CHECK(s.max_residual() <= 1e-9 * f.k.n);
        const RationalMatrix R = exact_rational_inverse(f.k, A);
        double scale = 0.0;
        for (const auto& v : R.data) scale = std::max(scale, std::abs(to_double(v)));
        for (std::size_t j = 0; j < 3; ++j) {
            for (int b = 0; b < f.k.n; ++b)
                CHECK(std::abs(s.rows[j].values[uz(b)] - to_double(R(f.rg.w[j], b))) <= 1e-10 * scale);
            for (int w = 0; w < f.k.n; ++w)
                CHECK(std::abs(s.cols[j].values[uz(w)] - to_double(R(w, f.rg.b[j]))) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("boundary entries of R take the two values alpha and beta") {
    for (int A = 2; A <= 8; A += 2) {
        CAPTURE(A);
        const Fixture f(A);
        const BoundarySlices s = inverse_rows_cols(f.k, f.rg);
        const AbdValues abd = closed_form_abd(A);
        auto R = [&](int wj, int bj) { return s.rows[uz(wj)].values[uz(f.rg.b[uz(bj)])]; };
        for (auto [w, b] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}})
            CHECK(R(w, b) == doctest::Approx(abd.alpha).epsilon(1e-10));
        for (auto [w, b] : {std::pair{0, 1}, {2, 0}, {1, 2}}) CHECK(R(w, b) == doctest::Approx(abd.beta).epsilon(1e-10));
        CHECK(abd.alpha > 0.0);
        CHECK(abd.beta < 0.0);
    }
}

TEST_CASE("Petrov formula gives the closed forms of alpha and beta") {
    for (int A = 2; A <= 10; A += 2) {
        const AbdExact abd = closed_form_abd_exact(A);
        CHECK(petrov_entry_exact(-1, 1, -1, 1, A) == abd.alpha);
        CHECK(petrov_entry_exact(-1, 1, -1, 2 * A, A) == abd.beta);
    }
}

TEST_CASE("Petrov formula matches the exact inverse of H_A") {
    for (int A : {2, 4}) {
        CAPTURE(A);
        const HexGraph g = build_hexagon(A);
        const RationalMatrix inv = exact_inverse(hexagon_matrix_int(g));
        for (std::size_t w = 0; w < g.whites.size(); ++w) {
            for (std::size_t b = 0; b < g.blacks.size(); ++b) {
                const VertexId& wv = g.whites[w];
                const VertexId& bv = g.blacks[b];
                const double exact = to_double(inv(static_cast<int>(w), static_cast<int>(b)));
                CHECK(std::abs(petrov_entry(wv.x, wv.y, bv.x, bv.y, A) - exact) <= 1e-10);
            }
        }
    }
}

TEST_CASE("Petrov formula matches a dense floating inverse at A = 4") {
    const HexGraph g = build_hexagon(4);
    const Eigen::MatrixXd inv = dense_hexagon_matrix(g).inverse();
    std::mt19937 rng(4);
    std::uniform_int_distribution<std::size_t> pick(0, g.blacks.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t w = pick(rng), b = pick(rng);
        const VertexId& wv = g.whites[w];
        const VertexId& bv = g.blacks[b];
        CHECK(std::abs(petrov_entry(wv.x, wv.y, bv.x, bv.y, 4) - inv(static_cast<long>(w), static_cast<long>(b))) <= 1e-8);
    }
}

TEST_CASE("reduced inverse relates to the H_A inverse along the boundary strips") {
    const int A = 4;
    const Fixture f(A);
    const RationalMatrix R = exact_rational_inverse(f.k, A);
    std::vector<int> signs(f.gauge.edge.begin(), f.gauge.edge.end());
    const Eigen::MatrixXd G = dense_hexagon_matrix(f.g, &signs).inverse();  // indexed (white, black)
    const Eigen::MatrixXd U = dense_hexagon_matrix(f.g).inverse();
    int checked = 0;
    for (int j = 0; j < 3; ++j) {
        const auto& strip = f.rg.w_tilde[uz(j)];
        REQUIRE(strip.size() == static_cast<std::size_t>(A - 1));
        for (std::size_t bb = 0; bb < f.g.blacks.size(); ++bb) {
            const int b = f.rg.black_of_base[bb];
            if (b < 0 || f.rg.blacks[uz(b)].label != 0) continue;
            const double r = to_double(R(f.rg.w[uz(j)], b));
            const double gb = f.gauge.black[bb];
            for (std::size_t k = 1; k <= strip.size(); ++k) {
                const double sign = k % 2 == 1 ? 1.0 : -1.0;
                const auto w = static_cast<long>(strip[k - 1]);
                const auto col = static_cast<long>(bb);
                CHECK(std::abs(r - sign * gb * U(w, col)) <= 1e-10);
                CHECK(std::abs(U(static_cast<long>(strip[0]), col) - sign * U(w, col)) <= 1e-10);
                CHECK(std::abs(r - G(w, col)) <= 1e-10);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}
