#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "temb/analysis.hpp"
#include "temb/continuum.hpp"
#include "temb/embedding.hpp"
#include "temb/exact.hpp"
#include "temb/gauge.hpp"
#include "temb/io.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"
#include "temb/pipeline.hpp"

namespace {

using namespace temb;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    int A = 8;
    std::vector<int> sizes{8, 16, 32};
    std::vector<std::string> points;
    std::string experiment = "all";
    int grid = 40;
    int threads = 1;
    std::string out;
    std::string csv;
    std::string svg;
    std::string gauges;
    std::string slices;
    std::string mesh;
    bool reduced = false;
    bool incircle = false;
    bool no_origami = false;
    double size = 800.0;
    double stroke = 0.6;

    Json json() const {
        Json j;
        j["command"] = command;
        if (command == "converge") {
            j["sizes"] = sizes;
            j["points"] = points;
            j["experiment"] = experiment;
            j["threads"] = threads;
        } else if (command == "limit") {
            j["grid"] = grid;
        } else {
            j["A"] = A;
        }
        return j;
    }
    std::string line() const { return "temb " + json().dump(); }
};

std::string resolve(const std::string& path) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    const char* dir = std::getenv("TEMB_OUT_DIR");
    if (p.is_absolute() || dir == nullptr || *dir == '\0') return path;
    return (std::filesystem::path(dir) / p).string();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    const std::string full = resolve(path);
    write_text(full, text);
    std::cerr << "wrote " << full << '\n';
}

Json with_config(const RunConfig& cfg, const std::string& key, Json body) {
    Json doc;
    doc["config"] = cfg.json();
    doc[key] = std::move(body);
    return doc;
}

void validate_size(int A) {
    if (A <= 0 || A % 2 != 0) throw ConfigError("--A must be a positive even integer");
}

std::vector<RescaledPoint> parse_points(const std::vector<std::string>& specs) {
    std::vector<RescaledPoint> pts;
    for (const auto& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw ConfigError("points are written chi:eta, got '" + s + "'");
        try {
            pts.push_back({std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))});
        } catch (const std::exception&) {
            throw ConfigError("cannot parse point '" + s + "'");
        }
    }
    return pts;
}

int cmd_build(const RunConfig& cfg) {
    const HexGraph g = build_hexagon(cfg.A);
    const BoundaryGauge gauge = apply_boundary_gauge(g);
    const ReducedHexGraph rg = reduce(g, gauge);
    const auto violations = audit_kasteleyn(rg);
    std::printf("H_%d: %zu black, %zu white, %zu edges, %zu faces\n", cfg.A, g.blacks.size(), g.whites.size(), g.edges.size(),
                g.faces.size());
    std::printf("reduced: %d per colour, %zu edges, outer face product %+d\n", rg.size(), rg.edges.size(), outer_face_product(rg));
    std::printf("Kasteleyn violations: %zu\n", violations.size());
    const Json body = cfg.reduced ? reduced_graph_json(rg) : graph_json(g, &gauge);
    emit(cfg.out, with_config(cfg, "graph", body).dump(1) + "\n");
    return violations.empty() ? 0 : 1;
}

int cmd_embed(const RunConfig& cfg) {
    const auto r = run_pipeline(cfg.A);
    const ClosureReport closure = verify_closed(r->graph, r->emb);
    std::printf("A=%d: %d faces, slice residual %.3e, kernel residuals %.3e / %.3e, closure %.3e\n", cfg.A,
                r->emb.face_count(), r->slices.max_residual(), r->gauges.kernel_residual_black,
                r->gauges.kernel_residual_white, closure.max());
    emit(cfg.out, with_config(cfg, "embedding", embedding_json(r->graph, r->emb)).dump(1) + "\n");
    emit(cfg.csv, embedding_csv(r->graph, r->emb, cfg.line()));
    emit(cfg.gauges, gauges_csv(r->graph, r->gauges, cfg.line()));
    emit(cfg.slices, slices_csv(r->graph, r->slices, cfg.line()));
    SvgStyle style{cfg.size, cfg.stroke, !cfg.no_origami, cfg.incircle};
    emit(cfg.svg, embedding_svg(r->emb, style, cfg.line()));
    return closure.max() < PerfectnessReport::Tolerances{}.closure ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
    const auto r = run_pipeline(cfg.A);
    const PerfectnessReport perf = verify_perfect(r->graph, r->emb);
    const SymmetryReport sym = reflection_symmetry(r->emb);
    const OrigamiRoots roots = origami_roots(r->graph, r->gauges, r->emb);
    const auto altT = integrate_alternative(r->graph, r->emb, false);
    const auto altO = integrate_alternative(r->graph, r->emb, true);
    double path = 0.0;
    for (std::size_t f = 0; f < altT.size(); ++f)
        path = std::max({path, std::abs(altT[f] - r->emb.T[f]), std::abs(altO[f] - r->emb.O[f])});
    const bool sym_ok = sym.max() < 1e-9;
    const bool path_ok = path < 1e-10;
    const bool roots_ok = roots.flagged.empty() && roots.max_dT_phase_error < 1e-9;
    std::printf("perfectness, A=%d\n%s", cfg.A, table(perf).c_str());
    std::printf("  reflection symmetry   %.4e\n  path independence     %.4e\n  origami phase error   %.4e\n",
                sym.max(), path, roots.max_dT_phase_error);
    Json body = to_json(perf);
    body["symmetry"] = to_json(sym);
    body["path_independence"] = path;
    body["origami_phase_error"] = roots.max_dT_phase_error;
    body["origami_flagged"] = roots.flagged.size();
    try {
        body["rigidity"] = to_json(rigidity_report(r->graph, r->emb));
    } catch (const std::invalid_argument&) {
    }
    emit(cfg.out, with_config(cfg, "report", body).dump(1) + "\n");
    return perf.passes() && sym_ok && path_ok && roots_ok ? 0 : 1;
}

int cmd_limit(const RunConfig& cfg) {
    if (cfg.grid < 1) throw ConfigError("--grid must be positive");
    const std::string csv = limit_csv(cfg.grid, cfg.line());
    if (cfg.out.empty())
        std::fputs(csv.c_str(), stdout);
    else
        emit(cfg.out, csv);
    if (!cfg.mesh.empty()) {
        Json mesh = surface_mesh_json(cfg.grid);
        emit(cfg.mesh, with_config(cfg, "mesh", std::move(mesh)).dump() + "\n");
    }
    return 0;
}

int cmd_converge(const RunConfig& cfg) {
    for (int A : cfg.sizes) validate_size(A);
    static const std::vector<std::string> experiments{"all", "liquid", "frozen", "kernel", "gauge", "rigidity"};
    if (std::find(experiments.begin(), experiments.end(), cfg.experiment) == experiments.end())
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    auto points = parse_points(cfg.points);
    const bool all = cfg.experiment == "all";
    EmbeddingCache cache;
    parallel_for(static_cast<int>(cfg.sizes.size()), cfg.threads, [&](int i) { cache.get(cfg.sizes[static_cast<std::size_t>(i)]); });
    Json body;
    bool ok = true;
    if (all || cfg.experiment == "liquid") {
        const auto pts = points.empty() ? std::vector<RescaledPoint>{{0.5, 1.0}, {0.0, 1.0}, {-0.25, 0.75}} : points;
        const auto rep = converge_scan(cache, cfg.sizes, pts, cfg.threads);
        std::printf("liquid convergence\n%s", table(rep).c_str());
        body["liquid"] = to_json(rep);
        ok = ok && rep.passed();
    }
    if (all || cfg.experiment == "frozen") {
        FrozenReport rep;
        if (points.empty()) {
            rep = frozen_orbit(cache, cfg.sizes, {0.9, 0.05});
        } else {
            rep = frozen_collapse(cache, cfg.sizes, points);
        }
        std::printf("frozen collapse\n%s", table(rep).c_str());
        body["frozen"] = to_json(rep);
        ok = ok && rep.passed();
    }
    if (all || cfg.experiment == "kernel") {
        std::vector<int> ks;
        for (int A : cfg.sizes) ks.push_back(2 * A);
        const auto rep = kernel_convergence(ks, default_f_points(), default_g_points());
        std::printf("kernel convergence\n%s", table(rep).c_str());
        body["kernel"] = to_json(rep);
        ok = ok && rep.passed();
    }
    if (all || cfg.experiment == "gauge") {
        const auto pts = points.empty() ? std::vector<RescaledPoint>{{0.0, 1.0}, {0.5, 1.0}, {-0.25, 0.75}, {0.25, 0.5}} : points;
        const auto rep = gauge_scaling_probe(cache, cfg.sizes, pts);
        std::printf("gauge scaling\n%s", table(rep).c_str());
        body["gauge"] = to_json(rep);
        ok = ok && rep.passed();
    }
    if (all || cfg.experiment == "rigidity") {
        const auto rep = rigidity_sweep(cache, cfg.sizes);
        std::printf("rigidity\n%s", table(rep).c_str());
        body["rigidity"] = to_json(rep);
        ok = ok && rep.passed();
    }
    emit(cfg.out, with_config(cfg, "reports", std::move(body)).dump(1) + "\n");
    return ok ? 0 : 1;
}

int cmd_render(const RunConfig& cfg) {
    if (cfg.svg.empty() && cfg.out.empty()) throw ConfigError("render needs --svg or --out");
    const auto r = run_pipeline(cfg.A);
    SvgStyle style{cfg.size, cfg.stroke, !cfg.no_origami, cfg.incircle};
    const std::string svg = embedding_svg(r->emb, style, cfg.line());
    emit(cfg.svg.empty() ? cfg.out : cfg.svg, svg);
    return 0;
}

int cmd_formulas(const RunConfig& cfg) {
    const AbdExact ex = closed_form_abd_exact(cfg.A);
    std::printf("alpha = %s\nbeta = %s\ndelta = %s\n", ex.alpha.get_str().c_str(), ex.beta.get_str().c_str(),
                ex.delta.get_str().c_str());
    const AbdValues v = ex.to_double();
    std::printf("alpha ~ %.17g\nbeta ~ %.17g\ndelta ~ %.17g\n", v.alpha, v.beta, v.delta);
    if (cfg.A > 6) return 0;
    const HexGraph g = build_hexagon(cfg.A);
    const ReducedHexGraph rg = reduce(g, apply_boundary_gauge(g));
    const RationalMatrix R = exact_rational_inverse(assemble(rg), cfg.A);
    const mpq_class alpha = R(rg.w[0], rg.b[0]);
    const mpq_class beta = R(rg.w[0], rg.b[1]);
    const bool ok = alpha == ex.alpha && beta == ex.beta && alpha - beta == ex.delta;
    std::printf("exact inverse: R(w1,b1) = %s, R(w1,b2) = %s, %s\n", alpha.get_str().c_str(), beta.get_str().c_str(),
                ok ? "matches" : "MISMATCH");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect t-embeddings of uniformly weighted lozenge hexagons"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    auto size_opt = [&](CLI::App* sub) { sub->add_option("--A", cfg.A, "hexagon side length (even)"); };
    auto out_opt = [&](CLI::App* sub, const char* what) { sub->add_option("--out,-o", cfg.out, what); };

    auto* build = app.add_subcommand("build", "build H_A, the boundary gauge and the reduced graph");
    size_opt(build);
    out_opt(build, "graph JSON");
    build->add_flag("--reduced", cfg.reduced, "serialise the reduced graph instead of H_A");

    auto* embed = app.add_subcommand("embed", "compute the t-embedding and origami map");
    size_opt(embed);
    out_opt(embed, "embedding JSON");
    embed->add_option("--csv", cfg.csv, "embedding CSV");
    embed->add_option("--svg", cfg.svg, "embedding SVG");
    embed->add_option("--gauges", cfg.gauges, "gauge CSV");
    embed->add_option("--slices", cfg.slices, "inverse slice CSV");

    auto* verify = app.add_subcommand("verify", "check the perfectness axioms");
    size_opt(verify);
    out_opt(verify, "report JSON");

    auto* limit = app.add_subcommand("limit", "tabulate the limiting maps z and theta");
    limit->add_option("--grid", cfg.grid, "grid resolution")->check(CLI::PositiveNumber);
    out_opt(limit, "CSV (stdout when omitted)");
    limit->add_option("--mesh", cfg.mesh, "surface mesh JSON");

    auto* converge = app.add_subcommand("converge", "convergence and asymptotics experiments");
    converge->add_option("--sizes", cfg.sizes, "sizes A")->delimiter(',');
    converge->add_option("--points", cfg.points, "rescaled points chi:eta")->delimiter(',');
    converge->add_option("--experiment", cfg.experiment, "all, liquid, frozen, kernel, gauge or rigidity");
    out_opt(converge, "report JSON");

    auto* render = app.add_subcommand("render", "draw the embedding and origami map as SVG");
    size_opt(render);
    out_opt(render, "SVG");

    for (auto* sub : {embed, render}) {
        if (sub == render) sub->add_option("--svg", cfg.svg, "SVG");
        sub->add_option("--size", cfg.size, "SVG size in pixels")->check(CLI::PositiveNumber);
        sub->add_option("--stroke", cfg.stroke, "stroke width in pixels")->check(CLI::PositiveNumber);
        sub->add_flag("--incircle", cfg.incircle, "overlay the inscribed circle");
        sub->add_flag("--no-origami", cfg.no_origami, "omit the origami map");
    }

    auto* formulas = app.add_subcommand("formulas", "exact alpha, beta and delta");
    size_opt(formulas);

    app.add_option("--threads", cfg.threads, "worker cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command != "converge" && cfg.command != "limit") validate_size(cfg.A);
        if (cfg.command == "build") return cmd_build(cfg);
        if (cfg.command == "embed") return cmd_embed(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "limit") return cmd_limit(cfg);
        if (cfg.command == "converge") return cmd_converge(cfg);
        if (cfg.command == "render") return cmd_render(cfg);
        if (cfg.command == "formulas") return cmd_formulas(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
