// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "temb/analysis.hpp"
#include "temb/continuum.hpp"
#include "temb/embedding.hpp"
#include "temb/gauge.hpp"
#include "temb/io.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/pipeline.hpp"

using namespace temb;

namespace {

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome exact_small_case() {
    const HexGraph g = build_hexagon(2);
    const ReducedHexGraph rg = reduce(g, apply_boundary_gauge(g));
    const RationalMatrix R = exact_rational_inverse(assemble(rg), 2);
    const mpq_class alpha = R(rg.w[0], rg.b[0]);
    const mpq_class beta = R(rg.w[0], rg.b[1]);
    const AbdExact closed = closed_form_abd_exact(2);
    const bool ok = alpha == mpq_class(3, 10) && beta == mpq_class(-1, 5) && alpha - beta == mpq_class(1, 2) &&
                    closed.alpha == alpha && closed.beta == beta && closed.delta == alpha - beta;
    return {ok, "alpha=" + alpha.get_str() + " beta=" + beta.get_str() + " delta=" + mpq_class(alpha - beta).get_str()};
}

Outcome formula_paths() {
    const int A = 4;
    const auto p = run_pipeline(A);
    const auto& rg = p->graph;
    const HexGraph& g = rg.base;

    const Eigen::MatrixXd inv = dense_hexagon_matrix(g).inverse();
    std::mt19937 rng(2024);
    std::uniform_int_distribution<std::size_t> pick(0, g.blacks.size() - 1);
    double petrov = 0.0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t w = pick(rng), b = pick(rng);
        const double v = petrov_entry(g.whites[w].x, g.whites[w].y, g.blacks[b].x, g.blacks[b].y, A);
        petrov = std::max(petrov, std::abs(v - inv(static_cast<long>(w), static_cast<long>(b))));
    }

    const KernelFunctions kf(A);
    double contour = 0.0;
    int vertices = 0;
    for (std::size_t b = 0; b < rg.blacks.size(); ++b) {
        if (rg.blacks[b].label != 0) continue;
        contour = std::max(contour, std::abs(black_gauge_contour(kf, rg.blacks[b].rep.x, rg.blacks[b].rep.y) - p->gauges.Fb[b]));
        ++vertices;
    }
    for (std::size_t w = 0; w < rg.whites.size(); ++w) {
        if (rg.whites[w].label != 0) continue;
        contour = std::max(contour, std::abs(white_gauge_contour(kf, rg.whites[w].rep.x, rg.whites[w].rep.y) - p->gauges.Fw[w]));
        ++vertices;
    }

    double oracle = 0.0;
    int faces = 0;
    for (int f = 0; f < p->emb.face_count(); f += 3) {
        const FaceId id = g.faces[uz(f)];
        const auto [T, O] = exact_TO_oracle(id.x, id.n, A);
        oracle = std::max({oracle, std::abs(T - p->emb.T[uz(f)]), std::abs(O - p->emb.O[uz(f)])});
        ++faces;
    }
    const bool ok = petrov <= 1e-8 && contour <= 1e-8 && oracle <= 1e-8 && faces >= 10;
    return {ok, "petrov=" + fmt("%.2e", petrov) + " (40 entries) contour=" + fmt("%.2e", contour) + " (" +
                    std::to_string(vertices) + " vertices) oracle=" + fmt("%.2e", oracle) + " (" + std::to_string(faces) + " faces)"};
}

Outcome perfectness() {
    bool ok = true;
    std::string detail;
    for (int A : {2, 4, 8, 16}) {
        const auto p = run_pipeline(A);
        const PerfectnessReport r = verify_perfect(p->graph, p->emb);
        const double angle = std::max({r.bisector_error, r.white_angle_error, r.black_angle_error});
        const bool pass = r.boundary_T_error <= 1e-9 && r.boundary_O_error <= 1e-9 && angle < 1e-6 &&
                          r.closure.max() < 1e-10 && r.length_ratio_error <= 1e-12 && r.area_error <= 1e-9 &&
                          r.nonpositive_faces == 0;
        ok = ok && pass;
        detail += "A=" + std::to_string(A) + ":" + fmt("%.1e", std::max({r.boundary_T_error, r.boundary_O_error, angle, r.closure.max(), r.area_error})) + " ";
    }
    return {ok, detail + "(worst residual per size)"};
}

Outcome continuum_identities() {
    std::mt19937 rng(20240601);
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(0.75, 4.0);
    std::vector<cd> zs;
    for (int i = 0; i < 200; ++i) zs.emplace_back(re(rng), im(rng));
    const SurfaceCheck sc = surface_checks(zs);
    const std::vector<double> reps{-3.0, -1.5, -0.75, -0.25, 0.5, 2.0};
    double interval = 0.0;
    for (int j = 1; j <= 6; ++j) {
        const SurfacePoint sp = limit_point(cd(reps[uz(j - 1)], 0.0));
        interval = std::max({interval, std::abs(sp.z - std::exp(cd(0.0, -(j + 1) * std::numbers::pi / 3.0))),
                             std::abs(sp.theta - (j % 2 == 0 ? 0.5 : -0.5))});
    }
    const bool ok = sc.samples == 200 && sc.conformality < 1e-12 && sc.spacelike_failures == 0 && sc.harmonicity < 1e-6 &&
                    sc.theta_imag < 1e-10 && sc.quadrature_gap <= 1e-10 && interval <= 1e-10;
    return {ok, "conformality=" + fmt("%.1e", sc.conformality) + " spacelike_failures=" + std::to_string(sc.spacelike_failures) +
                    " harmonicity=" + fmt("%.1e", sc.harmonicity) + " im_theta=" + fmt("%.1e", sc.theta_imag) +
                    " quadrature=" + fmt("%.1e", sc.quadrature_gap) + " intervals=" + fmt("%.1e", interval)};
}

Outcome convergence(EmbeddingCache& cache) {
    const ConvergenceReport r = converge_scan(cache, {8, 16, 32}, {{0.5, 1.0}, {0.0, 1.0}, {-0.25, 0.75}});
    std::string detail;
    for (const ConvergencePoint& p : r.points) {
        detail += "(" + fmt("%g", p.info.p.chi) + "," + fmt("%g", p.info.p.eta) + ") T:" +
                  (p.T.exact ? std::string("exact") : fmt("%.2f", p.T.slope)) + " O:" +
                  (p.O.exact ? std::string("exact") : fmt("%.2f", p.O.slope)) + " ";
    }
    return {r.passed() && r.points.size() == 3 && r.warnings.empty(), detail + "(slope bound -0.4)"};
}

Outcome frozen(EmbeddingCache& cache) {
    const FrozenReport r = frozen_orbit(cache, {8, 16, 32}, {0.9, 0.05});
    double worst = 0.0;
    for (const FrozenSample& s : r.samples) worst = std::max({worst, s.distance.back(), s.height_error.back()});
    return {r.passed() && r.samples.size() == 6 && r.warnings.empty(),
            std::to_string(r.samples.size()) + " images, largest error at A=32 " + fmt("%.2e", worst)};
}

Outcome kernels() {
    const KernelReport r = kernel_convergence({16, 32, 64}, default_f_points(), default_g_points());
    std::string detail = "f ratios";
    for (double v : r.f_ratios()) detail += " " + fmt("%.3f", v);
    detail += ", g ratios";
    for (double v : r.g_ratios()) detail += " " + fmt("%.3f", v);
    return {r.passed(), detail + " (band [1.6, 2.4])"};
}

Outcome rigidity(EmbeddingCache& cache) {
    const RigidityBand b = rigidity_sweep(cache, {8, 16, 32});
    double lo = INFINITY, hi = 0.0, alo = INFINITY, ahi = 0.0;
    for (const RigidityStats& s : b.stats) {
        lo = std::min(lo, s.min_edge);
        hi = std::max(hi, s.max_edge);
        alo = std::min(alo, s.min_angle);
        ahi = std::max(ahi, s.max_angle);
    }
    return {b.passed(), "A|dT| in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "], angles in [" + fmt("%.3f", alo) + ", " +
                            fmt("%.3f", ahi) + "]"};
}

Outcome figure() {
    const auto p = run_pipeline(50);
    const PerfectnessReport r = verify_perfect(p->graph, p->emb);
    const std::string svg = embedding_svg(p->emb, {}, "A=50");
    bool hexagon = true;
    for (int j = 1; j <= 6; ++j) hexagon = hexagon && std::abs(p->emb.Tv[uz(j - 1)] - boundary_vertex_T(j)) <= 1e-9;
    const bool ok = hexagon && r.max_abs_O <= 0.5 + 1e-6 && svg.find("<svg") != std::string::npos && r.nonpositive_faces == 0;
    return {ok, "max|O|=" + fmt("%.15f", r.max_abs_O) + " svg_bytes=" + std::to_string(svg.size())};
}

}  // namespace

int main() {
    EmbeddingCache cache;
    struct Criterion {
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 exact small-A oracle", 1.0, exact_small_case},
        {"2 formula-path cross-checks", 30.0, formula_paths},
        {"3 perfectness suite", 120.0, perfectness},
        {"4 continuum identities", 10.0, continuum_identities},
        {"5 liquid convergence", 300.0, [&] { return convergence(cache); }},
        {"6 frozen collapse", 300.0, [&] { return frozen(cache); }},
        {"7 kernel convergence", 300.0, kernels},
        {"8 rigidity bands", 300.0, [&] { return rigidity(cache); }},
        {"9 figure regression", 300.0, figure},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = o.ok && seconds < c.limit_seconds;
        failures += ok ? 0 : 1;
        std::printf("%s  %-30s %s [%.2fs]\n", ok ? "PASS" : "FAIL", c.name, o.detail.c_str(), seconds);
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
