#include <doctest.h>

#include <filesystem>
#include <string>

#include "temb/io.hpp"
#include "temb/pipeline.hpp"

using namespace temb;

TEST_CASE("graph documents are deterministic and keep their key order") {
    const HexGraph g = build_hexagon(4);
    const BoundaryGauge gauge = apply_boundary_gauge(g);
    const Json a = graph_json(g, &gauge);
    CHECK(a.dump() == graph_json(g, &gauge).dump());
    std::vector<std::string> keys;
    for (const auto& item : a.items()) keys.push_back(item.key());
    REQUIRE(keys.size() >= 3);
    CHECK(a["vertices"].size() == g.blacks.size() + g.whites.size());
    CHECK(a["edges"].size() == g.edges.size());
    CHECK(a["faces"].size() == g.faces.size());
    const Json& v = a["vertices"][0];
    std::vector<std::string> vkeys;
    for (const auto& item : v.items()) vkeys.push_back(item.key());
    CHECK(vkeys == std::vector<std::string>{"x", "y", "color", "boundary"});
    const ReducedHexGraph rg = reduce(g, gauge);
    CHECK(reduced_graph_json(rg).dump() == reduced_graph_json(rg).dump());
}

TEST_CASE("embedding exports") {
    const auto p = run_pipeline(4);
    const Json doc = embedding_json(p->graph, p->emb);
    CHECK(doc["A"] == 4);
    CHECK(doc["faces"].size() == static_cast<std::size_t>(p->emb.face_count()));
    CHECK(doc["boundary"].size() == 6);
    CHECK(doc.dump() == embedding_json(p->graph, p->emb).dump());

    const std::string csv = embedding_csv(p->graph, p->emb, "A=4");
    CHECK(csv.rfind("# A=4\n", 0) == 0);
    CHECK(csv.find("kind,x,n,re_T,im_T,re_O,im_O") != std::string::npos);
    CHECK(embedding_csv(p->graph, p->emb).rfind("kind,", 0) == 0);
    CHECK(gauges_csv(p->graph, p->gauges).rfind("x,y,color,re,im", 0) == 0);
    CHECK(slices_csv(p->graph, p->slices).rfind("slice,x,y,color,value", 0) == 0);

    const std::string svg = embedding_svg(p->emb, {}, "A=4");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("A=4") != std::string::npos);
    CHECK(svg.find("black") != std::string::npos);
    CHECK(svg.find("blue") != std::string::npos);
    CHECK(svg == embedding_svg(p->emb, {}, "A=4"));
    SvgStyle plain;
    plain.origami = false;
    CHECK(embedding_svg(p->emb, plain).find("blue") == std::string::npos);
}

TEST_CASE("limit table and surface mesh") {
    const std::string csv = limit_csv(8, "grid=8");
    CHECK(csv.rfind("# grid=8\nchi,eta,region,re_zeta,im_zeta,re_z,im_z,theta", 0) == 0);
    const Json mesh = surface_mesh_json(6);
    CHECK(mesh.contains("vertices"));
    CHECK(mesh.contains("triangles"));
    CHECK(mesh["triangles"].size() > 0);
}

TEST_CASE("reports serialise to JSON and tables") {
    const auto p = run_pipeline(8);
    const PerfectnessReport r = verify_perfect(p->graph, p->emb);
    const Json j = to_json(r);
    CHECK(j.contains("passed"));
    CHECK(j["passed"] == true);
    CHECK_FALSE(table(r).empty());
    const std::string dir = (std::filesystem::temp_directory_path() / "temb_io_test").string();
    std::filesystem::remove_all(dir);
    write_text(dir + "/nested/report.txt", "ok");
    CHECK(std::filesystem::exists(dir + "/nested/report.txt"));
    CHECK_THROWS_AS(write_text(dir + "/nested/report.txt/child.txt", "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
