#include "temb/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numbers>
#include <optional>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "temb/gauge.hpp"

namespace temb {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI{0.0, 1.0};

std::size_t uz(int i) { return static_cast<std::size_t>(i); }

std::string describe(RescaledPoint p) {
    std::ostringstream os;
    os << "(" << p.chi << ", " << p.eta << ")";
    return os.str();
}

// Series passes when it is exact, or monotone with a slope at most max_slope.
void judge(ConvergenceSeries& s, const std::vector<int>& sizes, double floor, double max_slope) {
    s.exact = std::all_of(s.error.begin(), s.error.end(), [&](double e) { return e <= floor; });
    s.monotone = true;
    for (std::size_t i = 1; i < s.error.size(); ++i)
        if (s.error[i] > 1.1 * s.error[i - 1] && s.error[i] > floor) s.monotone = false;
    std::vector<double> clipped(s.error);
    for (double& e : clipped) e = std::max(e, floor);
    s.slope = loglog_slope(sizes, clipped);
    s.passed = s.exact || (s.monotone && s.slope <= max_slope);
}

}  // namespace

PointInfo classify(RescaledPoint p) {
    PointInfo info;
    info.p = p;
    const CriticalPoint cp = critical_point(p.chi, p.eta);
    info.region = cp.region;
    info.discriminant = cp.discriminant;
    info.zeta = cp.zeta;
    info.interval = cp.interval;
    return info;
}

FaceId snap_face(RescaledPoint p, int A) {
    int x = static_cast<int>(std::floor(p.chi * A));
    int n = static_cast<int>(std::floor(p.eta * A));
    n = std::clamp(n, 1, 2 * A - 1);
    x = std::clamp(x, -A + 1, A - 1);
    x = std::clamp(x, 1 - n, 2 * A - 1 - n);
    return {x, n};
}

int face_position(const ReducedHexGraph& rg, FaceId f) {
    const int i = rg.base.face_index(f.x, f.n);
    if (i < 0) throw std::out_of_range("not an interior face");
    return i;
}

double loglog_slope(const std::vector<int>& sizes, const std::vector<double>& values) {
    if (sizes.size() != values.size() || sizes.size() < 2) throw std::invalid_argument("slope needs at least two samples");
    double mx = 0.0, my = 0.0;
    const double k = static_cast<double>(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        mx += std::log(static_cast<double>(sizes[i])) / k;
        my += std::log(values[i]) / k;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double dx = std::log(static_cast<double>(sizes[i])) - mx;
        sxy += dx * (std::log(values[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    const int workers = std::clamp(threads, 1, std::max(n, 1));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

bool ConvergenceReport::passed() const {
    if (points.empty()) return false;
    return std::all_of(points.begin(), points.end(), [](const ConvergencePoint& p) { return p.T.passed && p.O.passed; });
}

ConvergenceReport converge_scan(EmbeddingCache& cache, const std::vector<int>& sizes,
                                const std::vector<RescaledPoint>& points, int threads, double min_discriminant) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= 0 || sizes[i] % 2 != 0) throw std::invalid_argument("sizes must be positive and even");
        if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sizes must be ascending");
    }
    ConvergenceReport rep;
    rep.sizes = sizes;
    for (const RescaledPoint& p : points) {
        if (!in_rescaled_hexagon(p.chi, p.eta) || !(p.eta > 0.0)) {
            rep.warnings.push_back("skipped " + describe(p) + ": outside the hexagon");
            continue;
        }
        ConvergencePoint cp;
        cp.info = classify(p);
        if (cp.info.region != Region::liquid || -cp.info.discriminant <= min_discriminant) {
            rep.warnings.push_back("skipped " + describe(p) + ": not in the liquid region away from the arctic curve");
            continue;
        }
        const SurfacePoint sp = limit_point(cp.info.zeta);
        cp.z = sp.z;
        cp.theta = sp.theta;
        rep.points.push_back(cp);
    }
    parallel_for(static_cast<int>(sizes.size()), threads, [&](int i) { cache.get(sizes[uz(i)]); });
    for (ConvergencePoint& cp : rep.points) {
        for (int A : sizes) {
            const auto r = cache.get(A);
            const FaceId f = snap_face(cp.info.p, A);
            const auto k = uz(face_position(r->graph, f));
            cp.T.faces.push_back(f);
            cp.O.faces.push_back(f);
            cp.T.error.push_back(std::abs(r->emb.T[k] - cp.z));
            cp.O.error.push_back(std::abs(r->emb.O[k] - cp.theta));
        }
        judge(cp.T, sizes, rep.floor, rep.max_slope);
        judge(cp.O, sizes, rep.floor, rep.max_slope);
    }
    return rep;
}

std::array<RescaledPoint, 6> rotated_images(RescaledPoint p) {
    const double c30 = std::sqrt(3.0) / 2.0;
    const cd G = p.chi * cd(c30, 0.5) + kI * p.eta;
    std::array<RescaledPoint, 6> out;
    for (int k = 0; k < 6; ++k) {
        const cd r = kI + (G - kI) * sixth_root(k);
        const double chi = r.real() / c30;
        out[uz(k)] = {chi, r.imag() - chi / 2.0};
    }
    return out;
}

bool FrozenReport::passed() const {
    if (samples.empty()) return false;
    return std::all_of(samples.begin(), samples.end(), [](const FrozenSample& s) { return s.passed; });
}

namespace {

std::optional<FrozenSample> frozen_sample(RescaledPoint p, double min_discriminant, std::vector<std::string>& warnings) {
    if (!in_rescaled_hexagon(p.chi, p.eta) || !(p.eta > 0.0)) {
        warnings.push_back("skipped " + describe(p) + ": outside the hexagon");
        return std::nullopt;
    }
    FrozenSample s;
    s.info = classify(p);
    if (s.info.region != Region::frozen || s.info.discriminant <= min_discriminant || s.info.interval == 0) {
        warnings.push_back("skipped " + describe(p) + ": not in a frozen region");
        return std::nullopt;
    }
    s.vertex = interval_vertex(s.info.interval);
    s.height = interval_height(s.info.interval);
    return s;
}

void measure(FrozenSample& s, const PipelineResult& r, FaceId f) {
    const auto k = uz(face_position(r.graph, f));
    s.faces.push_back(f);
    s.distance.push_back(std::abs(r.emb.T[k] - s.vertex));
    s.height_error.push_back(std::abs(r.emb.O[k] - s.height));
}

void judge(FrozenSample& s, double ratio, double floor) {
    s.passed = !s.distance.empty();
    for (std::size_t i = 1; i < s.distance.size(); ++i) {
        for (const auto* v : {&s.distance, &s.height_error}) {
            const double prev = (*v)[i - 1], cur = (*v)[i];
            if (cur > floor && cur > ratio * prev) s.passed = false;
        }
    }
}

}  // namespace

FrozenReport frozen_collapse(EmbeddingCache& cache, const std::vector<int>& sizes,
                             const std::vector<RescaledPoint>& points, double min_discriminant) {
    FrozenReport rep;
    rep.sizes = sizes;
    for (const RescaledPoint& p : points) {
        auto s = frozen_sample(p, min_discriminant, rep.warnings);
        if (!s) continue;
        for (int A : sizes) measure(*s, *cache.get(A), snap_face(p, A));
        judge(*s, rep.ratio, rep.floor);
        rep.samples.push_back(std::move(*s));
    }
    return rep;
}

FaceId rotate_face(FaceId f, int A, int k) {
    k = ((k % 6) + 6) % 6;
    for (int i = 0; i < k; ++i) f = {A - f.n, f.x + f.n};
    return f;
}

FrozenReport frozen_orbit(EmbeddingCache& cache, const std::vector<int>& sizes, RescaledPoint p,
                          double min_discriminant) {
    FrozenReport rep;
    rep.sizes = sizes;
    const auto images = rotated_images(p);
    for (int k = 0; k < 6; ++k) {
        auto s = frozen_sample(images[uz(k)], min_discriminant, rep.warnings);
        if (!s) continue;
        for (int A : sizes) measure(*s, *cache.get(A), rotate_face(snap_face(p, A), A, k));
        judge(*s, rep.ratio, rep.floor);
        rep.samples.push_back(std::move(*s));
    }
    return rep;
}

std::vector<double> KernelReport::f_ratios() const {
    std::vector<double> r;
    for (std::size_t i = 1; i < f_gap.size(); ++i) r.push_back(f_gap[i - 1] / f_gap[i]);
    return r;
}

std::vector<double> KernelReport::g_ratios() const {
    std::vector<double> r;
    for (std::size_t i = 1; i < g_gap.size(); ++i) r.push_back(g_gap[i - 1] / g_gap[i]);
    return r;
}

bool KernelReport::passed() const {
    if (sizes.size() < 2 || f_points.empty() || g_points.empty()) return false;
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] != 2 * sizes[i - 1]) return false;
    auto ok = [&](const std::vector<double>& rs) {
        return std::all_of(rs.begin(), rs.end(), [&](double r) { return r >= low && r <= high; });
    };
    return ok(f_ratios()) && ok(g_ratios());
}

std::vector<cd> default_f_points() {
    std::vector<cd> pts;
    for (double y : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        pts.emplace_back(-1.0, y);
        pts.emplace_back(-1.0, -y);
    }
    return pts;
}

std::vector<cd> default_g_points() {
    return {cd(0.5, 0.5), cd(-0.5, 1.0), cd(1.0, -1.0), cd(-2.0, 0.5), cd(2.0, 0.0), cd(-3.0, 0.0), cd(-0.5, -0.7)};
}

KernelReport kernel_convergence(const std::vector<int>& sizes, const std::vector<cd>& f_points,
                                const std::vector<cd>& g_points) {
    KernelReport rep;
    rep.sizes = sizes;
    auto near_puncture = [](cd z, std::initializer_list<double> ps) {
        return std::any_of(ps.begin(), ps.end(), [&](double p) { return std::abs(z - p) < 0.1; });
    };
    for (cd z : f_points) {
        std::ostringstream os;
        os << "f point (" << z.real() << ", " << z.imag() << ")";
        if (z.real() >= -0.5)
            rep.skipped.push_back(os.str() + ": Re z >= -1/2, where f_A carries an exponentially large term");
        else if (near_puncture(z, {-2.0, -1.0, -0.5, 0.0, 1.0}))
            rep.skipped.push_back(os.str() + ": too close to a puncture");
        else
            rep.f_points.push_back(z);
    }
    for (cd z : g_points) {
        std::ostringstream os;
        os << "g point (" << z.real() << ", " << z.imag() << ")";
        if (near_puncture(z, {-1.0, 0.0}))
            rep.skipped.push_back(os.str() + ": too close to a pole of g");
        else
            rep.g_points.push_back(z);
    }
    for (int A : sizes) {
        const KernelFunctions kf(A);
        double gf = 0.0, gg = 0.0;
        for (cd z : rep.f_points) gf = std::max(gf, std::abs(kf.f_scaled(z) - eval_f(z)));
        for (cd z : rep.g_points) gg = std::max(gg, std::abs(kf.g_scaled(z) - eval_g(z)));
        rep.f_gap.push_back(gf);
        rep.g_gap.push_back(gg);
    }
    return rep;
}

double gauge_exponent(double chi, double eta) {
    const CriticalPoint cp = critical_point(chi, eta);
    return action_S(cp.zeta, chi, eta).real() + eta - 2.0 * std::log(2.0) + (2.0 - eta) * std::log(2.0 - eta);
}

bool GaugeProbeReport::passed() const {
    if (samples.empty()) return false;
    auto in_band = [&](double v) { return v >= 1.0 / band && v <= band; };
    return std::all_of(samples.begin(), samples.end(), [&](const GaugeProbeSample& s) {
        return in_band(s.black) && in_band(s.white) && std::all_of(s.edge.begin(), s.edge.end(), in_band);
    });
}

GaugeProbeReport gauge_scaling_probe(EmbeddingCache& cache, const std::vector<int>& sizes,
                                     const std::vector<RescaledPoint>& points, double min_discriminant) {
    GaugeProbeReport rep;
    rep.sizes = sizes;
    for (const RescaledPoint& p : points) {
        if (!in_rescaled_hexagon(p.chi, p.eta) || !(p.eta > 0.0)) {
            rep.warnings.push_back("skipped " + describe(p) + ": outside the hexagon");
            continue;
        }
        const PointInfo info = classify(p);
        if (info.region != Region::liquid || -info.discriminant <= min_discriminant) {
            rep.warnings.push_back("skipped " + describe(p) + ": not in the liquid region away from the arctic curve");
            continue;
        }
        for (int A : sizes) {
            const auto r = cache.get(A);
            const ReducedHexGraph& rg = r->graph;
            const FaceId v = snap_face(p, A);
            const int bb = rg.base.black_index(v.x, v.n);
            const int wb = rg.base.white_index(v.x, v.n);
            if (bb < 0 || wb < 0 || rg.black_of_base[uz(bb)] < 0 || rg.white_of_base[uz(wb)] < 0) {
                rep.warnings.push_back("skipped " + describe(p) + " at A = " + std::to_string(A) + ": vertex not present");
                continue;
            }
            const int b = rg.black_of_base[uz(bb)];
            const int w = rg.white_of_base[uz(wb)];
            if (rg.blacks[uz(b)].label != 0 || rg.whites[uz(w)].label != 0) {
                rep.warnings.push_back("skipped " + describe(p) + " at A = " + std::to_string(A) + ": contracted vertex");
                continue;
            }
            const double chi = static_cast<double>(v.x) / A, eta = static_cast<double>(v.n) / A;
            const double E = gauge_exponent(chi, eta);
            GaugeProbeSample s;
            s.p = p;
            s.A = A;
            s.vertex = v;
            const double root = std::sqrt(static_cast<double>(A));
            s.black = root * std::abs(r->gauges.Fb[uz(b)]) * std::exp(-A * E);
            s.white = root * std::abs(r->gauges.Fw[uz(w)]) * std::exp(A * E);
            const auto& es = rg.black_edges[uz(b)];
            for (std::size_t i = 0; i < 3 && i < es.size(); ++i) {
                const auto& ed = rg.edges[uz(es[i])];
                s.edge[i] = A * std::abs(r->gauges.Fb[uz(ed.b)] * r->gauges.Fw[uz(ed.w)]);
            }
            rep.samples.push_back(s);
        }
    }
    return rep;
}

bool RigidityBand::passed() const {
    if (stats.empty()) return false;
    return std::all_of(stats.begin(), stats.end(), [&](const RigidityStats& s) {
        return s.edges > 0 && s.min_edge >= 1.0 / edge_band && s.max_edge <= edge_band && s.min_angle >= min_angle &&
               s.max_angle <= kPi - min_angle;
    });
}

RigidityBand rigidity_sweep(EmbeddingCache& cache, const std::vector<int>& sizes, double scale) {
    RigidityBand band;
    band.sizes = sizes;
    for (int A : sizes) {
        const auto r = cache.get(A);
        band.stats.push_back(rigidity_report(r->graph, r->emb, scale));
    }
    return band;
}

}  // namespace temb
