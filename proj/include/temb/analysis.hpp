#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "temb/continuum.hpp"
#include "temb/lattice.hpp"
#include "temb/pipeline.hpp"

namespace temb {

struct RescaledPoint {
    double chi = 0.0;
    double eta = 0.0;
};

// Classification of a rescaled point, logged with every comparison.
struct PointInfo {
    RescaledPoint p;
    Region region = Region::liquid;
    double discriminant = 0.0;
    cd zeta;
    int interval = 0;
};

PointInfo classify(RescaledPoint p);

// Face (floor(chi A), floor(eta A)), moved to the nearest interior face when the floor falls outside.
FaceId snap_face(RescaledPoint p, int A);

// Index of an interior face in ReducedHexGraph::faces order.
int face_position(const ReducedHexGraph& rg, FaceId f);

// Least-squares slope of log(values) against log(sizes).
double loglog_slope(const std::vector<int>& sizes, const std::vector<double>& values);

// Runs f(i) for i in [0, n) on at most `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

struct ConvergenceSeries {
    std::vector<FaceId> faces;  // per size
    std::vector<double> error;  // per size
    double slope = 0.0;
    bool exact = false;      // every error at or below the rounding floor
    bool monotone = false;   // each error at most 1.1 times the previous one
    bool passed = false;
};

struct ConvergencePoint {
    PointInfo info;
    cd z;
    double theta = 0.0;
    ConvergenceSeries T;
    ConvergenceSeries O;
};

struct ConvergenceReport {
    std::vector<int> sizes;
    std::vector<ConvergencePoint> points;
    std::vector<std::string> warnings;
    double max_slope = -0.4;
    double floor = 1e-12;
    bool passed() const;
};

ConvergenceReport converge_scan(EmbeddingCache& cache, const std::vector<int>& sizes,
                                const std::vector<RescaledPoint>& points, int threads = 1,
                                double min_discriminant = 0.05);

// The point and its images under rotation of the hexagon by multiples of pi/3.
std::array<RescaledPoint, 6> rotated_images(RescaledPoint p);

struct FrozenSample {
    PointInfo info;
    cd vertex;          // predicted boundary vertex of T
    double height = 0;  // predicted value of O
    std::vector<FaceId> faces;
    std::vector<double> distance;  // |T_A - vertex|
    std::vector<double> height_error;  // |O_A - height|
    bool passed = false;
};

struct FrozenReport {
    std::vector<int> sizes;
    std::vector<FrozenSample> samples;
    std::vector<std::string> warnings;
    double ratio = 0.5;  // required shrink factor between consecutive sizes
    double floor = 1e-12;
    bool passed() const;
};

FrozenReport frozen_collapse(EmbeddingCache& cache, const std::vector<int>& sizes,
                             const std::vector<RescaledPoint>& points, double min_discriminant = 0.05);

// Image of a face under rotation of H_A by k pi/3 about the central face (0, A).
FaceId rotate_face(FaceId f, int A, int k);

// The point and its five rotated images; the image samples use the rotated snapped face.
FrozenReport frozen_orbit(EmbeddingCache& cache, const std::vector<int>& sizes, RescaledPoint p,
                          double min_discriminant = 0.05);

struct KernelReport {
    std::vector<int> sizes;
    std::vector<cd> f_points;
    std::vector<cd> g_points;
    std::vector<std::string> skipped;
    std::vector<double> f_gap;  // per size
    std::vector<double> g_gap;
    double low = 1.6;
    double high = 2.4;
    std::vector<double> f_ratios() const;
    std::vector<double> g_ratios() const;
    bool passed() const;
};

std::vector<cd> default_f_points();
std::vector<cd> default_g_points();
KernelReport kernel_convergence(const std::vector<int>& sizes, const std::vector<cd>& f_points,
                                const std::vector<cd>& g_points);

// Exponential rate of |F(b)| at a rescaled black vertex, including the normalisation of the gauge.
double gauge_exponent(double chi, double eta);

struct GaugeProbeSample {
    RescaledPoint p;
    int A = 0;
    FaceId vertex;                 // coordinates shared by the probed black and white vertices
    double black = 0.0;            // sqrt(A) |F(b)| exp(-A E)
    double white = 0.0;            // sqrt(A) |F(w)| exp(A E)
    std::array<double, 3> edge{};  // A |F(b) F(w)| over the three edges of b
};

struct GaugeProbeReport {
    std::vector<int> sizes;
    std::vector<GaugeProbeSample> samples;
    std::vector<std::string> warnings;
    double band = 4.0;
    bool passed() const;
};

GaugeProbeReport gauge_scaling_probe(EmbeddingCache& cache, const std::vector<int>& sizes,
                                     const std::vector<RescaledPoint>& points, double min_discriminant = 0.05);

struct RigidityBand {
    std::vector<int> sizes;
    std::vector<RigidityStats> stats;
    double edge_band = 4.0;    // A |dT| within [1 / edge_band, edge_band]
    double min_angle = 0.25;   // angles within [min_angle, pi - min_angle]
    bool passed() const;
};

RigidityBand rigidity_sweep(EmbeddingCache& cache, const std::vector<int>& sizes, double scale = 0.5);

}  // namespace temb
