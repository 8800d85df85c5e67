#include "temb/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace temb {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI{0.0, 1.0};

cd principal_log(cd a) {
    if (a.imag() == 0.0 && a.real() <= 0.0) throw std::domain_error("logarithm argument on its branch cut");
    return std::log(a);
}

// Residues of f g and f gbar at the punctures, derived from the factored forms.
struct Residues {
    std::array<cd, 5> fg;
    std::array<double, 5> fgbar;
};

const Residues& residues() {
    static const Residues r = [] {
        Residues out;
        const cd w = sixth_root(2);
        for (std::size_t i = 0; i < kPunctures.size(); ++i) {
            const double p = kPunctures[i];
            cd den = 1.0;
            for (std::size_t k = 0; k < kPunctures.size(); ++k)
                if (k != i) den *= p - kPunctures[k];
            out.fg[i] = std::pow(p - w, 4) / den;
            out.fgbar[i] = (std::pow(p * p + p + 1.0, 2) / den).real();
        }
        return out;
    }();
    return r;
}

double segment_distance(cd a, cd b, cd p) {
    const cd d = b - a;
    const double len2 = std::norm(d);
    double t = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(a + t * d - p);
}

double pole_distance(cd a, cd b) {
    double d = INFINITY;
    for (double p : kPunctures) d = std::min(d, segment_distance(a, b, p));
    return d;
}

struct PathIntegral {
    cd fg = 0.0;
    cd fgbar = 0.0;
    double min_distance = INFINITY;
};

void integrate_segment(cd a, cd b, PathIntegral& acc, int depth) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const double d = pole_distance(a, b);
    acc.min_distance = std::min(acc.min_distance, d);
    if (std::abs(b - a) > d && depth < 64) {
        const cd m = 0.5 * (a + b);
        integrate_segment(a, m, acc, depth + 1);
        integrate_segment(m, b, acc, depth + 1);
        return;
    }
    const cd half = 0.5 * (b - a);
    const cd mid = 0.5 * (a + b);
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    cd s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (double sgn : {-1.0, 1.0}) {
            if (x[i] == 0.0 && sgn > 0.0) continue;
            const cd z = mid + sgn * x[i] * half;
            const cd f = eval_f(z);
            s1 += w[i] * f * eval_g(z);
            s2 += w[i] * f * eval_gbar(z);
        }
    }
    acc.fg += s1 * half;
    acc.fgbar += s2 * half;
}

std::vector<cd> path_nodes(cd zeta) {
    if (zeta.imag() < 0.0) throw std::domain_error("zeta must lie in the closed upper half plane");
    for (double p : kPunctures)
        if (std::abs(zeta - p) < 1e-6) throw std::domain_error("zeta is within 1e-6 of a puncture");
    if (zeta.imag() > 0.0) return {std::conj(zeta), cd(-3.0, 0.0), zeta};
    const double t = zeta.real();
    return {cd(t, 0.0), cd(t, -1.0), cd(-3.0, 0.0), cd(t, 1.0), cd(t, 0.0)};
}

SurfacePoint assemble(cd fg, cd fgbar, double dist) {
    SurfacePoint sp;
    const cd c = -1.0 / (2.0 * kPi * kI);
    sp.z = sixth_root(-2) + c * fg;
    const cd theta = -0.5 + c * fgbar;
    sp.theta = theta.real();
    sp.theta_imag = theta.imag();
    sp.min_pole_distance = dist;
    return sp;
}

}  // namespace

const char* to_string(Region r) {
    switch (r) {
        case Region::liquid: return "liquid";
        case Region::frozen: return "frozen";
        default: return "arctic";
    }
}

cd action_S(cd z, double chi, double eta) {
    const cd a1 = -2.0 - z, a2 = -1.0 - z, a3 = 1.0 - z, a4 = -z, a5 = z - chi, a6 = 2.0 - eta + z - chi;
    return -eta - a1 * principal_log(a1) - (1.0 + z) * principal_log(a2) - (-1.0 + z) * principal_log(a3) +
           z * principal_log(a4) + a5 * principal_log(a5) - a6 * principal_log(a6);
}

cd action_dS(cd z, double chi, double eta) {
    return principal_log(-2.0 - z) - principal_log(-1.0 - z) - principal_log(1.0 - z) + principal_log(-z) +
           principal_log(z - chi) - principal_log(2.0 - eta + z - chi);
}

cd action_d2S(cd z, double chi, double eta) {
    return 1.0 / (z + 2.0) - 1.0 / (z + 1.0) + 1.0 / (1.0 - z) + 1.0 / z + 1.0 / (z - chi) - 1.0 / (2.0 - eta + z - chi);
}

bool in_rescaled_hexagon(double chi, double eta) {
    return (eta >= 0.0 && eta <= 1.0 && chi >= -eta && chi <= 1.0) || (eta >= 1.0 && eta <= 2.0 && chi >= -1.0 && chi <= 2.0 - eta);
}

double critical_discriminant(double chi, double eta) {
    return 1.0 - 8.0 * eta + 4.0 * eta * eta - 4.0 * chi + 4.0 * eta * chi + 4.0 * chi * chi;
}

int real_interval(double t) {
    for (double p : kPunctures)
        if (t == p) return 0;
    if (t < -2.0) return 1;
    if (t < -1.0) return 2;
    if (t < -0.5) return 3;
    if (t < 0.0) return 4;
    if (t < 1.0) return 5;
    return 6;
}

cd interval_vertex(int j) { return sixth_root(-(j + 1)); }
double interval_height(int j) { return j % 2 == 0 ? 0.5 : -0.5; }

CriticalPoint critical_point(double chi, double eta, double arctic_tol) {
    if (!(eta > 0.0)) throw std::domain_error("critical point needs eta > 0");
    CriticalPoint cp;
    cp.discriminant = critical_discriminant(chi, eta);
    const double D = cp.discriminant;
    const double base = -1.0 + 2.0 * chi;
    if (std::abs(D) < arctic_tol) {
        cp.region = Region::arctic;
        cp.zeta = cp.other = base / (2.0 * eta);
        return cp;
    }
    if (D < 0.0) {
        cp.region = Region::liquid;
        const double s = std::sqrt(-D);
        cp.zeta = cd(base, s) / (2.0 * eta);
        cp.other = cd(base, -s) / (2.0 * eta);
    } else {
        cp.region = Region::frozen;
        const double s = std::sqrt(D);
        cp.zeta = (base + s) / (2.0 * eta);
        cp.other = (base - s) / (2.0 * eta);
        cp.interval = real_interval(cp.zeta.real());
    }
    return cp;
}

cd eval_f(cd z) {
    for (double p : {1.0, -0.5, -2.0})
        if (z == cd(p)) throw std::domain_error("f evaluated at a pole");
    return (2.0 / 3.0) * (sixth_root(2) / (z - 1.0) - 0.5 / (z + 0.5) + sixth_root(-2) / (z + 2.0));
}

cd eval_g(cd z) {
    if (z == cd(0.0) || z == cd(-1.0)) throw std::domain_error("g evaluated at a pole");
    return -1.0 + sixth_root(1) / z - sixth_root(-1) / (z + 1.0);
}

cd eval_gbar(cd z) {
    if (z == cd(0.0) || z == cd(-1.0)) throw std::domain_error("g evaluated at a pole");
    return -1.0 + sixth_root(-1) / z - sixth_root(1) / (z + 1.0);
}

cd eval_f_factored(cd z) {
    const cd q = z - sixth_root(2);
    return -q * q / ((z - 1.0) * (z + 2.0) * (z + 0.5));
}

cd eval_g_factored(cd z) {
    const cd q = z - sixth_root(2);
    return -q * q / (z * (z + 1.0));
}

cd eval_fgbar_partial(cd z) { return 1.0 / (z - 1.0) - 1.0 / z - 1.0 / (z + 1.0) + 1.0 / (z + 2.0) + 1.0 / (z + 0.5); }

SurfacePoint limit_point(cd zeta) {
    const auto nodes = path_nodes(zeta);
    PathIntegral acc;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) integrate_segment(nodes[i], nodes[i + 1], acc, 0);
    return assemble(acc.fg, acc.fgbar, acc.min_distance);
}

cd limit_z(cd zeta) { return limit_point(zeta).z; }
double limit_theta(cd zeta) { return limit_point(zeta).theta; }

SurfacePoint limit_point_antiderivative(cd zeta) {
    const auto nodes = path_nodes(zeta);
    const auto& res = residues();
    cd fg = 0.0, fgbar = 0.0;
    double dist = INFINITY;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        dist = std::min(dist, pole_distance(nodes[i], nodes[i + 1]));
        for (std::size_t k = 0; k < kPunctures.size(); ++k) {
            // A straight segment sweeps less than pi around a point off the segment, so the principal
            // argument of the endpoint ratio is the continuous change of arg along the segment.
            const cd ratio = (nodes[i + 1] - kPunctures[k]) / (nodes[i] - kPunctures[k]);
            const cd dlog(std::log(std::abs(ratio)), std::arg(ratio));
            fg += res.fg[k] * dlog;
            fgbar += res.fgbar[k] * dlog;
        }
    }
    return assemble(fg, fgbar, dist);
}

namespace {

// Five-point Laplacian of z and theta, evaluated through the antiderivative.
double laplacian_residual(cd zeta, double h) {
    const SurfacePoint c = limit_point_antiderivative(zeta);
    cd lz = -4.0 * c.z;
    double lt = -4.0 * c.theta;
    for (cd d : {cd(h, 0.0), cd(-h, 0.0), cd(0.0, h), cd(0.0, -h)}) {
        const SurfacePoint p = limit_point_antiderivative(zeta + d);
        lz += p.z;
        lt += p.theta;
    }
    return std::max(std::abs(lz), std::abs(lt)) / (h * h);
}

}  // namespace

SurfaceCheck surface_checks(const std::vector<cd>& samples, double h) {
    SurfaceCheck sc;
    sc.samples = static_cast<int>(samples.size());
    for (const cd& zeta : samples) {
        const cd zc = std::conj(zeta);
        const cd f = eval_f(zeta), g = eval_g(zeta), gb = eval_gbar(zeta);
        const cd fb = std::conj(eval_f(zc));
        sc.conformality = std::max(sc.conformality, std::abs(f * g * fb * gb - f * gb * fb * g));
        const double df = std::norm(f) - std::norm(eval_f(zc));
        const double dg = std::norm(g) - std::norm(eval_g(zc));
        if (!(df * dg > 0.0)) ++sc.spacelike_failures;

        const SurfacePoint c = limit_point(zeta);
        const SurfacePoint e = limit_point(zeta + h), w = limit_point(zeta - h);
        const SurfacePoint n = limit_point(zeta + kI * h), s = limit_point(zeta - kI * h);
        sc.harmonicity = std::max(sc.harmonicity, laplacian_residual(zeta, h));
        sc.theta_imag = std::max(sc.theta_imag, std::abs(c.theta_imag));

        const SurfacePoint anti = limit_point_antiderivative(zeta);
        sc.quadrature_gap = std::max({sc.quadrature_gap, std::abs(anti.z - c.z), std::abs(anti.theta - c.theta)});

        // Complex derivatives d/dzeta = (d/dx - i d/dy) / 2 of z, conj(z) and theta.
        const cd dz = ((e.z - w.z) - kI * (n.z - s.z)) / (4.0 * h);
        const cd dzc = ((std::conj(e.z) - std::conj(w.z)) - kI * (std::conj(n.z) - std::conj(s.z))) / (4.0 * h);
        const cd dt = (cd(e.theta - w.theta) - kI * (n.theta - s.theta)) / (4.0 * h);
        sc.metric_residual = std::max(sc.metric_residual, std::abs(dz * dzc - dt * dt));
    }
    return sc;
}

int boundary_winding(int samples_per_unit) {
    const double R = 50.0;
    const double lift = 1e-9;
    std::vector<cd> pts;
    const int n_line = static_cast<int>(2.0 * R * samples_per_unit);
    for (int i = 0; i < n_line; ++i) pts.emplace_back(-R + 2.0 * R * (i + 0.5) / n_line, lift);
    const int n_arc = 4 * samples_per_unit;
    for (int i = 1; i < n_arc; ++i) pts.push_back(std::polar(R, kPi * i / n_arc));
    double total = 0.0;
    cd prev = limit_point_antiderivative(pts.back()).z;
    for (const cd& p : pts) {
        const cd cur = limit_point_antiderivative(p).z;
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

ImageCheck liquid_image_check(int grid, double min_discriminant) {
    ImageCheck ic;
    struct Sample {
        double chi, eta;
        cd z;
    };
    std::vector<Sample> pts;
    const double step = 2.0 / grid;
    const double h = 1e-5;
    ic.min_jacobian = INFINITY;
    ic.max_jacobian = 0.0;
    auto image = [](double chi, double eta) { return limit_point_antiderivative(critical_point(chi, eta).zeta).z; };
    for (int i = 0; i <= grid; ++i) {
        for (int j = 1; j <= grid; ++j) {
            const double chi = -1.0 + i * step;
            const double eta = j * step;
            if (!in_rescaled_hexagon(chi, eta) || critical_discriminant(chi, eta) > -min_discriminant) continue;
            const cd z = image(chi, eta);
            const cd zx = (image(chi + h, eta) - image(chi - h, eta)) / (2.0 * h);
            const cd zy = (image(chi, eta + h) - image(chi, eta - h)) / (2.0 * h);
            const double jac = zx.real() * zy.imag() - zx.imag() * zy.real();
            ic.min_jacobian = std::min(ic.min_jacobian, jac);
            ic.max_jacobian = std::max(ic.max_jacobian, jac);
            pts.push_back({chi, eta, z});
        }
    }
    ic.points = static_cast<int>(pts.size());
    ic.min_separation = INFINITY;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) ic.min_separation = std::min(ic.min_separation, std::abs(pts[a].z - pts[b].z));
    return ic;
}

}  // namespace temb
