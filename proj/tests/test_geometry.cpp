#include "blaschke_approx/geometry.hpp"
#include "blaschke_approx/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace blaschke_approx;

namespace {

DiskPoint random_point(Xoshiro256& rng, double t_max) {
    double u = rng.uniform();
    double t = 0.5 * std::acosh(1.0 + u * (std::cosh(2.0 * t_max) - 1.0));
    double phi = 2.0 * M_PI * rng.uniform();
    double r = std::tanh(t);
    return DiskPoint{r * std::cos(phi), r * std::sin(phi)};
}

} // namespace

TEST_CASE("pseudohyperbolic distance basic values") {
    CHECK(pseudo_dist({0, 0}, {0.5, 0}) == doctest::Approx(0.5).epsilon(1e-14));
    DiskPoint z{0.3, -0.2};
    CHECK(pseudo_dist(z, z) == 0.0);
    // |0.5 - (-0.5)| / |1 - (-0.25)| = 1/1.25
    CHECK(pseudo_dist({0.5, 0}, {-0.5, 0}) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("hyperbolic distance is artanh of rho") {
    DiskPoint z{0.3, 0.0}, w{0.0, 0.3};
    CHECK(hyp_dist(z, z) == 0.0);
    CHECK(hyp_dist({0, 0}, {std::tanh(1.0), 0}) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(hyp_dist(z, w) == doctest::Approx(std::atanh(pseudo_dist(z, w))).epsilon(1e-13));

    Xoshiro256 rng(99);
    for (int i = 0; i < 10000; ++i) {
        DiskPoint a = random_point(rng, 4.0), b = random_point(rng, 4.0);
        double rho = pseudo_dist(a, b);
        CHECK(std::fabs(hyp_dist(a, b) - std::atanh(rho)) <= 1e-12 * std::max(1.0, std::atanh(rho)));
        CHECK(std::fabs(pseudo_dist(a, b) - pseudo_dist(b, a)) <= 1e-15);
    }
}

TEST_CASE("mobius_to_origin basics and invariance") {
    DiskPoint a{0.4, 0.1};
    DiskPoint im = mobius_to_origin(a, a);
    CHECK(im.abs() <= 1e-15);

    // a = 0 gives z -> -z
    DiskPoint z{0.2, -0.7};
    DiskPoint m0 = mobius_to_origin({0, 0}, z);
    CHECK(m0.re == doctest::Approx(-z.re));
    CHECK(m0.im == doctest::Approx(-z.im));
    CHECK(m0.abs() == doctest::Approx(z.abs()));

    // invariance to 1e-12: the mapped points carry a float error of order
    // eps/(1-|c||z|), so the sampling depth is capped accordingly
    Xoshiro256 rng(7);
    for (int i = 0; i < 10000; ++i) {
        DiskPoint p = random_point(rng, 2.5), q = random_point(rng, 2.5),
                  c = random_point(rng, 1.5);
        double before = pseudo_dist(p, q);
        double after = pseudo_dist(mobius_to_origin(c, p), mobius_to_origin(c, q));
        CHECK(std::fabs(before - after) <= 1e-12);
    }
}

TEST_CASE("disk point validation") {
    CHECK_THROWS_AS(make_disk_point(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(make_disk_point(0.8, 0.7), std::domain_error);
    CHECK_NOTHROW(make_disk_point(0.99999, 0.0));
}

TEST_CASE("net construction rejects bad parameters") {
    CHECK_THROWS_AS(build_net(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_net(-0.1, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_net(0.5, 0), std::invalid_argument);
}

TEST_CASE("net covering audit") {
    // every point with 1-|z| >= 2^-depth has a net point within the mesh
    for (auto [mesh, depth] : {std::pair{0.5, 3}, std::pair{0.25, 5}}) {
        HyperbolicNet net = build_net(mesh, depth);
        Xoshiro256 rng(1234 + depth);
        double t_cap = artanh(1.0 - std::ldexp(1.0, -depth));
        for (int i = 0; i < 10000; ++i) {
            DiskPoint z = random_point(rng, t_cap);
            double tz = artanh(z.abs());
            double best = 1e300;
            for (std::size_t c = 0; c < net.circles.size(); ++c) {
                if (std::fabs(net.circles[c].t - tz) > mesh + 1e-12) continue;
                const auto& circ = net.circles[c];
                double step = 2.0 * M_PI / static_cast<double>(circ.count);
                auto k = static_cast<std::uint64_t>(z.angle() / step);
                for (std::uint64_t dk = 0; dk <= 2; ++dk) {
                    std::uint64_t idx = (k + dk + circ.count - 1) % circ.count;
                    best = std::min(best, hyp_dist(z, net.point(c, idx)));
                }
            }
            CHECK(best <= mesh + 1e-9);
        }
    }
}

TEST_CASE("depth_limit 1 covers the closed half-radius disk") {
    HyperbolicNet net = build_net(0.4, 1);
    Xoshiro256 rng(5);
    for (int i = 0; i < 2000; ++i) {
        double r = 0.5 * rng.uniform();
        double th = 2.0 * M_PI * rng.uniform();
        DiskPoint z{r * std::cos(th), r * std::sin(th)};
        double best = 1e300;
        for (std::size_t c = 0; c < net.circles.size(); ++c)
            for (std::uint64_t k = 0; k < net.circles[c].count; ++k)
                best = std::min(best, hyp_dist(z, net.point(c, k)));
        CHECK(best <= 0.4 + 1e-9);
    }
}

TEST_CASE("halving the mesh at least doubles each circle's point count") {
    HyperbolicNet coarse = build_net(0.3, 4);
    HyperbolicNet fine = build_net(0.15, 4);
    for (std::size_t c = 1; c + 1 < coarse.circles.size(); ++c) {
        const auto& cc = coarse.circles[c];
        bool matched = false;
        for (const auto& fc : fine.circles) {
            if (std::fabs(fc.t - cc.t) < 1e-12) {
                CHECK(fc.count >= 2 * cc.count);
                matched = true;
                break;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("net point count is reported and finite") {
    HyperbolicNet net = build_net(0.5, 3);
    std::size_t total = 0;
    for (const auto& c : net.circles) total += c.count;
    CHECK(total == net.size());
    CHECK(net.size() > 0);
    CHECK(net.circles.front().count == 1); // origin
}
