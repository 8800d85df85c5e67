#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>

#include "temb/embedding.hpp"
#include "temb/gauge.hpp"
#include "temb/kasteleyn.hpp"
#include "temb/lattice.hpp"

namespace temb {

struct PipelineResult {
    ReducedHexGraph graph;
    SignedIncidence K;
    BoundarySlices slices;
    GaugePair gauges;
    TEmbedding emb;
};

// Graph, gauge, reduction, slices, gauges and embedding for one hexagon size.
std::shared_ptr<const PipelineResult> run_pipeline(int A);

// Builds each size once; concurrent requests for the same size share one computation.
class EmbeddingCache {
public:
    std::shared_ptr<const PipelineResult> get(int A);

private:
    std::mutex mutex_;
    std::map<int, std::shared_future<std::shared_ptr<const PipelineResult>>> entries_;
};

}  // namespace temb
