#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "temb/analysis.hpp"
#include "temb/embedding.hpp"
#include "temb/gauge.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"

namespace temb {

using Json = nlohmann::ordered_json;

// Graph document: vertices [{x, y, color, boundary}], edges [{u, v, type, sign}], faces [{x, n, cycle}].
// Vertex ids list the blacks first and then the whites; u is black and v is white.
Json graph_json(const HexGraph& g, const BoundaryGauge* gauge = nullptr);
Json reduced_graph_json(const ReducedHexGraph& rg);

// CSV tables; `config` is echoed as a leading comment line when non-empty.
std::string slices_csv(const ReducedHexGraph& rg, const BoundarySlices& s, const std::string& config = {});
std::string gauges_csv(const ReducedHexGraph& rg, const GaugePair& gp, const std::string& config = {});
std::string embedding_csv(const ReducedHexGraph& rg, const TEmbedding& emb, const std::string& config = {});

Json embedding_json(const ReducedHexGraph& rg, const TEmbedding& emb);

struct SvgStyle {
    double size = 800.0;     // pixels
    double stroke = 0.6;     // pixels
    bool origami = true;     // draw the O-edges in blue
    bool incircle = false;   // overlay the inscribed circle of the hexagon
};

std::string embedding_svg(const TEmbedding& emb, const SvgStyle& style = {}, const std::string& config = {});

// Limit maps over a grid of rescaled points: chi, eta, region, Re zeta, Im zeta, Re z, Im z, theta.
std::string limit_csv(int grid, const std::string& config = {});
// Surface (z, theta) over a grid in the upper half plane as a triangle list.
Json surface_mesh_json(int grid, double extent = 4.0);

Json to_json(const PerfectnessReport& r);
Json to_json(const RigidityStats& s);
Json to_json(const SymmetryReport& s);
Json to_json(const ConvergenceReport& r);
Json to_json(const FrozenReport& r);
Json to_json(const KernelReport& r);
Json to_json(const GaugeProbeReport& r);
Json to_json(const RigidityBand& r);

std::string table(const PerfectnessReport& r);
std::string table(const ConvergenceReport& r);
std::string table(const FrozenReport& r);
std::string table(const KernelReport& r);
std::string table(const GaugeProbeReport& r);
std::string table(const RigidityBand& r);

// Writes the text and throws std::runtime_error when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace temb
