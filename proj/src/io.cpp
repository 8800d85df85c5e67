#include "temb/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "temb/continuum.hpp"

namespace temb {

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

Json complex_json(cd z) { return Json::array({z.real(), z.imag()}); }

Json face_json(FaceId f) { return Json::array({f.x, f.n}); }

std::string header(const std::string& config) { return config.empty() ? std::string{} : "# " + config + "\n"; }

Json vertex_json(const VertexId& v, bool boundary) {
    Json j;
    j["x"] = v.x;
    j["y"] = v.y;
    j["color"] = to_string(v.color);
    j["boundary"] = boundary;
    return j;
}

}  // namespace

Json graph_json(const HexGraph& g, const BoundaryGauge* gauge) {
    Json doc;
    doc["A"] = g.A;
    Json vertices = Json::array();
    for (std::size_t i = 0; i < g.blacks.size(); ++i) vertices.push_back(vertex_json(g.blacks[i], g.black_boundary[i]));
    for (std::size_t i = 0; i < g.whites.size(); ++i) vertices.push_back(vertex_json(g.whites[i], g.white_boundary[i]));
    doc["vertices"] = std::move(vertices);
    const int offset = static_cast<int>(g.blacks.size());
    Json edges = Json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        Json j;
        j["u"] = g.edges[e].b;
        j["v"] = offset + g.edges[e].w;
        j["type"] = to_string(g.edges[e].type);
        j["sign"] = gauge ? gauge->edge[e] : 1;
        edges.push_back(std::move(j));
    }
    doc["edges"] = std::move(edges);
    Json faces = Json::array();
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
        Json j;
        j["x"] = g.faces[f].x;
        j["n"] = g.faces[f].n;
        Json cycle = Json::array();
        for (const VertexRef& v : g.face_cycle(static_cast<int>(f)))
            cycle.push_back(v.color == Color::black ? v.index : offset + v.index);
        j["cycle"] = std::move(cycle);
        faces.push_back(std::move(j));
    }
    doc["faces"] = std::move(faces);
    return doc;
}

Json reduced_graph_json(const ReducedHexGraph& rg) {
    Json doc;
    doc["A"] = rg.A();
    Json vertices = Json::array();
    auto add = [&](const std::vector<ReducedVertex>& vs) {
        for (const ReducedVertex& v : vs) {
            Json j = vertex_json(v.rep, v.label != 0);
            j["label"] = v.label;
            j["members"] = v.members.size();
            vertices.push_back(std::move(j));
        }
    };
    add(rg.blacks);
    add(rg.whites);
    doc["vertices"] = std::move(vertices);
    const int offset = rg.size();
    Json edges = Json::array();
    for (const ReducedEdge& e : rg.edges) {
        Json j;
        j["u"] = e.b;
        j["v"] = offset + e.w;
        j["type"] = to_string(e.type);
        j["sign"] = e.sign;
        edges.push_back(std::move(j));
    }
    doc["edges"] = std::move(edges);
    Json faces = Json::array();
    for (const ReducedFace& f : rg.faces) {
        Json j;
        j["x"] = f.id.x;
        j["n"] = f.id.n;
        Json cycle = Json::array();
        for (const VertexRef& v : f.cycle) cycle.push_back(v.color == Color::black ? v.index : offset + v.index);
        j["cycle"] = std::move(cycle);
        faces.push_back(std::move(j));
    }
    doc["faces"] = std::move(faces);
    return doc;
}

std::string slices_csv(const ReducedHexGraph& rg, const BoundarySlices& s, const std::string& config) {
    std::ostringstream os;
    os << header(config) << "slice,x,y,color,value\n";
    const char* row_names[3] = {"R(w1,.)", "R(w2,.)", "R(w3,.)"};
    const char* col_names[3] = {"R(.,b1)", "R(.,b2)", "R(.,b3)"};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t b = 0; b < s.rows[j].values.size(); ++b) {
            const VertexId& v = rg.blacks[b].rep;
            os << row_names[j] << ',' << v.x << ',' << v.y << ",black," << num(s.rows[j].values[b]) << '\n';
        }
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t w = 0; w < s.cols[j].values.size(); ++w) {
            const VertexId& v = rg.whites[w].rep;
            os << col_names[j] << ',' << v.x << ',' << v.y << ",white," << num(s.cols[j].values[w]) << '\n';
        }
    return os.str();
}

std::string gauges_csv(const ReducedHexGraph& rg, const GaugePair& gp, const std::string& config) {
    std::ostringstream os;
    os << header(config) << "x,y,color,re,im\n";
    for (std::size_t b = 0; b < gp.Fb.size(); ++b) {
        const VertexId& v = rg.blacks[b].rep;
        os << v.x << ',' << v.y << ",black," << num(gp.Fb[b].real()) << ',' << num(gp.Fb[b].imag()) << '\n';
    }
    for (std::size_t w = 0; w < gp.Fw.size(); ++w) {
        const VertexId& v = rg.whites[w].rep;
        os << v.x << ',' << v.y << ",white," << num(gp.Fw[w].real()) << ',' << num(gp.Fw[w].imag()) << '\n';
    }
    return os.str();
}

std::string embedding_csv(const ReducedHexGraph& rg, const TEmbedding& emb, const std::string& config) {
    std::ostringstream os;
    os << header(config) << "kind,x,n,re_T,im_T,re_O,im_O\n";
    for (std::size_t f = 0; f < emb.T.size(); ++f) {
        const FaceId id = rg.faces[f].id;
        os << "face," << id.x << ',' << id.n << ',' << num(emb.T[f].real()) << ',' << num(emb.T[f].imag()) << ','
           << num(emb.O[f].real()) << ',' << num(emb.O[f].imag()) << '\n';
    }
    for (std::size_t j = 0; j < 6; ++j)
        os << "boundary," << j + 1 << ",," << num(emb.Tv[j].real()) << ',' << num(emb.Tv[j].imag()) << ','
           << num(emb.Ov[j].real()) << ',' << num(emb.Ov[j].imag()) << '\n';
    return os.str();
}

Json embedding_json(const ReducedHexGraph& rg, const TEmbedding& emb) {
    Json doc;
    doc["A"] = emb.A;
    Json faces = Json::array();
    for (std::size_t f = 0; f < emb.T.size(); ++f) {
        Json j;
        j["x"] = rg.faces[f].id.x;
        j["n"] = rg.faces[f].id.n;
        j["T"] = complex_json(emb.T[f]);
        j["O"] = complex_json(emb.O[f]);
        faces.push_back(std::move(j));
    }
    doc["faces"] = std::move(faces);
    Json boundary = Json::array();
    for (std::size_t j = 0; j < 6; ++j) {
        Json b;
        b["j"] = j + 1;
        b["T"] = complex_json(emb.Tv[j]);
        b["O"] = complex_json(emb.Ov[j]);
        boundary.push_back(std::move(b));
    }
    doc["boundary"] = std::move(boundary);
    Json edges = Json::array();
    for (const auto& s : emb.sides) edges.push_back(Json::array({s[0], s[1]}));
    doc["dual_edges"] = std::move(edges);
    return doc;
}

std::string embedding_svg(const TEmbedding& emb, const SvgStyle& style, const std::string& config) {
    const double half = style.size / 2.0;
    const double scale = style.size / 2.4;
    auto px = [&](cd p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", half + scale * p.real(), half - scale * p.imag());
        return std::string(buf);
    };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.size << "\" height=\"" << style.size
       << "\" viewBox=\"0 0 " << style.size << ' ' << style.size << "\">\n";
    if (!config.empty()) os << "<!-- " << config << " -->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (style.incircle)
        os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale * std::sqrt(3.0) / 2.0
           << "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 4\" stroke-width=\"" << style.stroke << "\"/>\n";
    auto layer = [&](const char* colour, auto&& at, const std::array<cd, 6>& boundary) {
        os << "<g stroke=\"" << colour << "\" stroke-width=\"" << style.stroke << "\" fill=\"none\" stroke-linecap=\"round\">\n";
        os << "<path d=\"";
        for (const auto& s : emb.sides) os << 'M' << px(at(s[0])) << 'L' << px(at(s[1]));
        os << "\"/>\n<polygon points=\"";
        for (std::size_t j = 0; j < 6; ++j) os << (j ? " " : "") << px(boundary[j]);
        os << "\"/>\n</g>\n";
    };
    layer("black", [&](int d) { return emb.T_at(d); }, emb.Tv);
    if (style.origami) layer("blue", [&](int d) { return emb.O_at(d); }, emb.Ov);
    os << "</svg>\n";
    return os.str();
}

std::string limit_csv(int grid, const std::string& config) {
    if (grid < 1) throw std::invalid_argument("grid must be positive");
    std::ostringstream os;
    os << header(config) << "chi,eta,region,re_zeta,im_zeta,re_z,im_z,theta\n";
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= 2 * grid; ++j) {
            const double chi = -1.0 + 2.0 * (i + 0.5) / (grid + 1);
            const double eta = 2.0 * (j + 0.5) / (2 * grid + 1);
            if (!in_rescaled_hexagon(chi, eta)) continue;
            const CriticalPoint cp = critical_point(chi, eta);
            double zr = NAN, zi = NAN, th = NAN;
            try {
                const SurfacePoint sp = limit_point(cp.zeta);
                zr = sp.z.real();
                zi = sp.z.imag();
                th = sp.theta;
            } catch (const std::domain_error&) {
            }
            os << num(chi) << ',' << num(eta) << ',' << to_string(cp.region) << ',' << num(cp.zeta.real()) << ','
               << num(cp.zeta.imag()) << ',' << num(zr) << ',' << num(zi) << ',' << num(th) << '\n';
        }
    }
    return os.str();
}

Json surface_mesh_json(int grid, double extent) {
    if (grid < 1) throw std::invalid_argument("grid must be positive");
    Json doc;
    doc["grid"] = grid;
    doc["extent"] = extent;
    Json vertices = Json::array();
    const int nx = 2 * grid + 1, ny = grid;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const cd zeta(-extent + 2.0 * extent * (i + 0.5) / nx, extent * (j + 0.5) / ny);
            const SurfacePoint sp = limit_point_antiderivative(zeta);
            vertices.push_back(Json::array({sp.z.real(), sp.z.imag(), sp.theta}));
        }
    }
    Json triangles = Json::array();
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int a = j * nx + i, b = a + 1, c = a + nx, d = c + 1;
            triangles.push_back(Json::array({a, b, d}));
            triangles.push_back(Json::array({a, d, c}));
        }
    }
    doc["vertices"] = std::move(vertices);
    doc["triangles"] = std::move(triangles);
    return doc;
}

Json to_json(const PerfectnessReport& r) {
    Json j;
    j["vertex_closure"] = r.closure.vertex_residual;
    j["edge_closure"] = r.closure.edge_residual;
    j["boundary_T_error"] = r.boundary_T_error;
    j["boundary_O_error"] = r.boundary_O_error;
    j["bisector_error"] = r.bisector_error;
    j["white_angle_error"] = r.white_angle_error;
    j["black_angle_error"] = r.black_angle_error;
    j["min_sector"] = r.min_sector;
    j["nonpositive_faces"] = r.nonpositive_faces;
    j["area_sum"] = r.area_sum;
    j["area_error"] = r.area_error;
    j["length_ratio_error"] = r.length_ratio_error;
    j["max_abs_O"] = r.max_abs_O;
    j["passed"] = r.passes();
    return j;
}

Json to_json(const RigidityStats& s) {
    Json j;
    j["scale"] = s.scale;
    j["faces"] = s.faces;
    j["edges"] = s.edges;
    j["min_edge"] = s.min_edge;
    j["max_edge"] = s.max_edge;
    j["min_angle"] = s.min_angle;
    j["max_angle"] = s.max_angle;
    return j;
}

Json to_json(const SymmetryReport& s) {
    Json j;
    j["imaginary_axis"] = s.imaginary_axis;
    j["plus_60"] = s.plus_60;
    j["minus_60"] = s.minus_60;
    return j;
}

namespace {

Json info_json(const PointInfo& p) {
    Json j;
    j["chi"] = p.p.chi;
    j["eta"] = p.p.eta;
    j["region"] = to_string(p.region);
    j["discriminant"] = p.discriminant;
    j["zeta"] = complex_json(p.zeta);
    j["interval"] = p.interval;
    return j;
}

Json series_json(const ConvergenceSeries& s) {
    Json j;
    Json faces = Json::array();
    for (FaceId f : s.faces) faces.push_back(face_json(f));
    j["faces"] = std::move(faces);
    j["errors"] = s.error;
    j["slope"] = s.slope;
    j["exact"] = s.exact;
    j["monotone"] = s.monotone;
    j["passed"] = s.passed;
    return j;
}

Json complex_list(const std::vector<cd>& zs) {
    Json a = Json::array();
    for (cd z : zs) a.push_back(complex_json(z));
    return a;
}

}  // namespace

Json to_json(const ConvergenceReport& r) {
    Json j;
    j["sizes"] = r.sizes;
    j["max_slope"] = r.max_slope;
    j["floor"] = r.floor;
    Json pts = Json::array();
    for (const ConvergencePoint& p : r.points) {
        Json e = info_json(p.info);
        e["z"] = complex_json(p.z);
        e["theta"] = p.theta;
        e["T"] = series_json(p.T);
        e["O"] = series_json(p.O);
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    j["warnings"] = r.warnings;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const FrozenReport& r) {
    Json j;
    j["sizes"] = r.sizes;
    j["ratio"] = r.ratio;
    j["floor"] = r.floor;
    Json samples = Json::array();
    for (const FrozenSample& s : r.samples) {
        Json e = info_json(s.info);
        e["vertex"] = complex_json(s.vertex);
        e["height"] = s.height;
        Json faces = Json::array();
        for (FaceId f : s.faces) faces.push_back(face_json(f));
        e["faces"] = std::move(faces);
        e["distance"] = s.distance;
        e["height_error"] = s.height_error;
        e["passed"] = s.passed;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    j["warnings"] = r.warnings;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const KernelReport& r) {
    Json j;
    j["sizes"] = r.sizes;
    j["f_points"] = complex_list(r.f_points);
    j["g_points"] = complex_list(r.g_points);
    j["skipped"] = r.skipped;
    j["f_gap"] = r.f_gap;
    j["g_gap"] = r.g_gap;
    j["f_ratios"] = r.f_ratios();
    j["g_ratios"] = r.g_ratios();
    j["band"] = Json::array({r.low, r.high});
    j["passed"] = r.passed();
    return j;
}

Json to_json(const GaugeProbeReport& r) {
    Json j;
    j["sizes"] = r.sizes;
    j["band"] = r.band;
    Json samples = Json::array();
    for (const GaugeProbeSample& s : r.samples) {
        Json e;
        e["chi"] = s.p.chi;
        e["eta"] = s.p.eta;
        e["A"] = s.A;
        e["vertex"] = face_json(s.vertex);
        e["black"] = s.black;
        e["white"] = s.white;
        e["edge"] = s.edge;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    j["warnings"] = r.warnings;
    j["passed"] = r.passed();
    return j;
}

Json to_json(const RigidityBand& r) {
    Json j;
    j["sizes"] = r.sizes;
    j["edge_band"] = r.edge_band;
    j["min_angle"] = r.min_angle;
    Json stats = Json::array();
    for (const RigidityStats& s : r.stats) stats.push_back(to_json(s));
    j["stats"] = std::move(stats);
    j["passed"] = r.passed();
    return j;
}

std::string table(const PerfectnessReport& r) {
    std::ostringstream os;
    auto row = [&](const char* name, double v) { os << "  " << name << std::string(22 - std::string(name).size(), ' ') << fixed(v) << '\n'; };
    row("closure", r.closure.max());
    row("boundary T", r.boundary_T_error);
    row("boundary O", r.boundary_O_error);
    row("bisector", r.bisector_error);
    row("white angle sum", r.white_angle_error);
    row("black angle sum", r.black_angle_error);
    row("min sector", r.min_sector);
    row("area error", r.area_error);
    row("|dO|/|dT| - 1", r.length_ratio_error);
    row("max |O|", r.max_abs_O);
    os << "  nonpositive faces     " << r.nonpositive_faces << '\n';
    os << "  verdict               " << (r.passes() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::string table(const ConvergenceReport& r) {
    std::ostringstream os;
    os << "  point            map  errors by A";
    for (int A : r.sizes) os << "  " << A;
    os << "  slope  verdict\n";
    for (const ConvergencePoint& p : r.points) {
        for (const auto* s : {&p.T, &p.O}) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "  (%6.3f, %5.3f)  %s   ", p.info.p.chi, p.info.p.eta, s == &p.T ? "T" : "O");
            os << buf;
            for (double e : s->error) os << ' ' << fixed(e, 3);
            os << "  " << (s->exact ? std::string("exact") : fixed(s->slope, 2)) << "  " << (s->passed ? "PASS" : "FAIL") << '\n';
        }
    }
    for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
    return os.str();
}

std::string table(const FrozenReport& r) {
    std::ostringstream os;
    for (const FrozenSample& s : r.samples) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  (%6.3f, %5.3f) I%d -> (%6.3f, %6.3f), %+.1f  ", s.info.p.chi, s.info.p.eta,
                      s.info.interval, s.vertex.real(), s.vertex.imag(), s.height);
        os << buf;
        for (double d : s.distance) os << ' ' << fixed(d, 3);
        os << "  " << (s.passed ? "PASS" : "FAIL") << '\n';
    }
    for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
    return os.str();
}

std::string table(const KernelReport& r) {
    std::ostringstream os;
    os << "  A      f gap       g gap\n";
    for (std::size_t i = 0; i < r.sizes.size(); ++i)
        os << "  " << r.sizes[i] << std::string(r.sizes[i] < 10 ? 6 : r.sizes[i] < 100 ? 5 : 4, ' ') << fixed(r.f_gap[i], 3)
           << "   " << fixed(r.g_gap[i], 3) << '\n';
    os << "  ratios f:";
    for (double v : r.f_ratios()) os << ' ' << fixed(v, 3);
    os << "  g:";
    for (double v : r.g_ratios()) os << ' ' << fixed(v, 3);
    os << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& s : r.skipped) os << "  skipped " << s << '\n';
    return os.str();
}

std::string table(const GaugeProbeReport& r) {
    std::ostringstream os;
    for (const GaugeProbeSample& s : r.samples) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  (%6.3f, %5.3f) A=%-4d black %.4f  white %.4f  A|FbFw| %.4f %.4f %.4f\n", s.p.chi,
                      s.p.eta, s.A, s.black, s.white, s.edge[0], s.edge[1], s.edge[2]);
        os << buf;
    }
    for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
    os << "  band [1/" << r.band << ", " << r.band << "]  " << (r.passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::string table(const RigidityBand& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.stats.size(); ++i) {
        const RigidityStats& s = r.stats[i];
        char buf[160];
        std::snprintf(buf, sizeof buf, "  A=%-4d faces %-5d edges %-6d A|dT| [%.4f, %.4f]  angles [%.4f, %.4f]\n", r.sizes[i],
                      s.faces, s.edges, s.min_edge, s.max_edge, s.min_angle, s.max_angle);
        os << buf;
    }
    os << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace temb
