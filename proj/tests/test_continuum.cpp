#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "temb/continuum.hpp"

using namespace temb;

namespace {

const cd kI{0.0, 1.0};

std::vector<cd> upper_samples(int count, unsigned seed, double im_lo, double im_hi) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> re(-4.0, 4.0);
    std::uniform_real_distribution<double> im(im_lo, im_hi);
    std::vector<cd> out;
    while (static_cast<int>(out.size()) < count) out.emplace_back(re(rng), im(rng));
    return out;
}

}  // namespace

TEST_CASE("second derivative of the action at the symmetric point") {
    CHECK(-action_d2S(-0.5, 0.0, 2.0).real() == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(action_d2S(-0.5, 0.0, 2.0).imag()) <= 1e-12);
}

TEST_CASE("the critical equation is equivalent to a vanishing derivative") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int tested = 0;
    while (tested < 40) {
        const double chi = 3.0 * u(rng) - 1.0;
        const double eta = 2.0 * u(rng);
        if (!in_rescaled_hexagon(chi, eta) || critical_discriminant(chi, eta) > -0.05) continue;
        ++tested;
        const CriticalPoint cp = critical_point(chi, eta);
        CHECK(cp.region == Region::liquid);
        CHECK(cp.zeta.imag() > 0.0);
        CHECK(std::abs(cp.other - std::conj(cp.zeta)) <= 1e-10);
        const cd z = cp.zeta;
        const cd lhs = z * (z + 2.0) * (z - chi);
        const cd rhs = (z - 1.0) * (z + 1.0) * (z - chi - eta + 2.0);
        CHECK(std::abs(lhs - rhs) <= 1e-10);
        CHECK(std::abs(action_dS(z, chi, eta)) <= 1e-9);
    }
}

TEST_CASE("analytic derivative of the action matches finite differences") {
    const auto zs = upper_samples(50, 7, 0.2, 3.0);
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const cd& z : zs) {
        const double chi = 0.8 * u(rng) - 0.2;
        const double eta = 0.3 + 0.8 * u(rng);
        const double h = 1e-5;
        const cd fd = (action_S(z + h, chi, eta) - action_S(z - h, chi, eta)) / (2.0 * h);
        CHECK(std::abs(fd - action_dS(z, chi, eta)) <= 1e-7);
        const cd fd2 = (action_dS(z + h, chi, eta) - action_dS(z - h, chi, eta)) / (2.0 * h);
        CHECK(std::abs(fd2 - action_d2S(z, chi, eta)) <= 1e-6);
    }
}

TEST_CASE("critical point examples") {
    const CriticalPoint a = critical_point(0.5, 1.0);
    CHECK(a.region == Region::liquid);
    CHECK(a.discriminant == doctest::Approx(-2.0));
    CHECK(std::abs(a.zeta - kI / std::numbers::sqrt2) <= 1e-12);

    const CriticalPoint b = critical_point(0.0, 1.0);
    CHECK(b.region == Region::liquid);
    CHECK(b.discriminant == doctest::Approx(-3.0));
    CHECK(std::abs(b.zeta - sixth_root(2)) <= 1e-12);

    const CriticalPoint c = critical_point(0.9, 0.05);
    CHECK(c.region == Region::frozen);
    CHECK(c.discriminant == doctest::Approx(0.43));
    CHECK(c.zeta.imag() == 0.0);
    CHECK(c.zeta.real() >= c.other.real());
    CHECK(c.interval != 0);
    CHECK(real_interval(c.zeta.real()) == c.interval);
    CHECK(real_interval(c.other.real()) == c.interval);

    CHECK(critical_discriminant(0.3, 0.7) == doctest::Approx(1 - 8 * 0.7 + 4 * 0.49 - 4 * 0.3 + 4 * 0.21 + 4 * 0.09));
    CHECK(in_rescaled_hexagon(1.0, 0.0));
    CHECK(in_rescaled_hexagon(-1.0, 2.0));
    CHECK_FALSE(in_rescaled_hexagon(1.5, 1.0));
    CHECK_FALSE(in_rescaled_hexagon(-0.5, 0.25));
}

TEST_CASE("kernel functions in partial-fraction and factored form") {
    for (const cd& z : upper_samples(100, 3, 0.05, 4.0)) {
        CHECK(std::abs(eval_f(z) - eval_f_factored(z)) <= 1e-12 * std::max(1.0, std::abs(eval_f(z))));
        CHECK(std::abs(eval_g(z) - eval_g_factored(z)) <= 1e-12 * std::max(1.0, std::abs(eval_g(z))));
        CHECK(std::abs(eval_gbar(z) - std::conj(eval_g(std::conj(z)))) <= 1e-12 * std::max(1.0, std::abs(eval_gbar(z))));
        const cd fg = eval_f(z) * eval_gbar(z);
        const cd partial = 1.0 / (z - 1.0) - 1.0 / z - 1.0 / (z + 1.0) + 1.0 / (z + 2.0) + 1.0 / (z + 0.5);
        CHECK(std::abs(fg - partial) <= 1e-12 * std::max(1.0, std::abs(fg)));
        CHECK(std::abs(eval_fgbar_partial(z) - partial) <= 1e-12 * std::max(1.0, std::abs(partial)));
        CHECK(std::abs(eval_f(std::conj(z))) > std::abs(eval_f(z)));
        CHECK(std::abs(eval_g(std::conj(z))) > std::abs(eval_g(z)));
    }
    CHECK(std::abs(eval_f(sixth_root(2))) <= 1e-15);
    CHECK(std::abs(eval_g(sixth_root(2))) <= 1e-15);
}

TEST_CASE("real intervals map to the hexagon corners") {
    const std::vector<double> reps{-3.0, -1.5, -0.75, -0.25, 0.5, 2.0};
    for (int j = 1; j <= 6; ++j) {
        CAPTURE(j);
        const double t = reps[static_cast<std::size_t>(j - 1)];
        CHECK(real_interval(t) == j);
        CHECK(std::abs(interval_vertex(j) - std::exp(-kI * ((j + 1) * std::numbers::pi / 3.0))) <= 1e-15);
        CHECK(interval_height(j) == (j % 2 == 0 ? 0.5 : -0.5));
        for (double dy : {1e-9, 0.0}) {
            const SurfacePoint sp = limit_point(cd(t, dy));
            CHECK(std::abs(sp.z - interval_vertex(j)) <= 1e-7);
            CHECK(sp.theta == doctest::Approx(interval_height(j)).epsilon(1e-7));
        }
    }
    for (double p : kPunctures) CHECK(real_interval(p) == 0);
    CHECK(std::abs(interval_vertex(1) - sixth_root(-2)) <= 1e-15);
}

TEST_CASE("quadrature agrees with the antiderivative") {
    for (const cd& z : upper_samples(100, 5, 0.1, 4.0)) {
        const SurfacePoint q = limit_point(z);
        const SurfacePoint a = limit_point_antiderivative(z);
        CHECK(std::abs(q.z - a.z) <= 1e-10);
        CHECK(std::abs(q.theta - a.theta) <= 1e-10);
        CHECK(std::abs(q.theta_imag) <= 1e-10);
        CHECK(q.min_pole_distance > 0.0);
        if (z.imag() >= 0.75) CHECK(q.min_pole_distance >= 0.1);
        CHECK(limit_z(z) == q.z);
        CHECK(limit_theta(z) == q.theta);
    }
}

TEST_CASE("surface checks at i and on random samples") {
    const SurfaceCheck one = surface_checks({kI});
    CHECK(one.samples == 1);
    CHECK(one.conformality < 1e-12);
    CHECK(one.spacelike_failures == 0);
    CHECK(one.harmonicity < 1e-6);
    CHECK(one.theta_imag < 1e-10);

    const SurfaceCheck many = surface_checks(upper_samples(200, 20240601, 0.75, 4.0));
    CHECK(many.samples == 200);
    CHECK(many.conformality < 1e-12);
    CHECK(many.spacelike_failures == 0);
    CHECK(many.harmonicity < 1e-6);
    CHECK(many.theta_imag < 1e-10);
    CHECK(many.quadrature_gap < 1e-10);
}

TEST_CASE("limit map winds once clockwise and is an orientation preserving injection") {
    CHECK(boundary_winding() == -1);
    const ImageCheck img = liquid_image_check(24);
    CHECK(img.points > 50);
    CHECK(img.injective());
    CHECK(img.orientation_preserving());
}

TEST_CASE("limit maps reject punctures and the action rejects its cuts") {
    for (double p : kPunctures) CHECK_THROWS_AS(limit_point(cd(p, 1e-8)), std::domain_error);
    CHECK_THROWS_AS(action_S(-1.5, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_f(1.0), std::domain_error);
    CHECK_THROWS_AS(eval_g(0.0), std::domain_error);
}
