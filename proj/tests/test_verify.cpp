#include "blaschke_approx/generators.hpp"
#include "blaschke_approx/rng.hpp"
#include "blaschke_approx/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace blaschke_approx;

TEST_CASE("sup_modulus_diff vanishes on identical products and is symmetric") {
    BlaschkeProduct B = gen_cluster(40, DiskPoint{0.7, 0.1}, 1.5, 3);
    HyperbolicNet net = build_net(0.2, 7);
    auto rep = sup_modulus_diff(B, B, net, 6, 2);
    CHECK(rep.sup_diff == 0.0);
    CHECK(rep.identical);
    CHECK(rep.slack == doctest::Approx(2.0 * std::tanh(0.2)));

    BlaschkeProduct C = gen_cluster(40, DiskPoint{0.7, 0.1}, 1.5, 4);
    auto ab = sup_modulus_diff(B, C, net, 6, 2);
    auto ba = sup_modulus_diff(C, B, net, 6, 2);
    CHECK(ab.sup_diff == doctest::Approx(ba.sup_diff));
    CHECK(!ab.identical);
}

TEST_CASE("sup_modulus_diff detects a tiny zero perturbation at Lipschitz scale") {
    BlaschkeProduct B = product_from_points({{0.5, 0.0}});
    BlaschkeProduct I = product_from_points({{0.5 + 1e-6, 0.0}});
    HyperbolicNet net = build_net(0.01, 3); // dense brute-force net
    auto rep = sup_modulus_diff(B, I, net, 3, 2);
    CHECK(rep.sup_diff <= 1e-5);
    CHECK(rep.sup_diff > 1e-8);
}

TEST_CASE("tail certification logic") {
    BlaschkeProduct B = product_from_points({{0.9, 0.0}});
    HyperbolicNet net = build_net(0.2, 5);
    auto rep = sup_modulus_diff(B, B, net, 4, 2);
    CHECK(rep.tail_depth == 6);
    CHECK(rep.tail_certified); // zero depth ~3.3 < 6
    // rho(1-2^-6, 0.9) = 0.084/0.1144
    CHECK(rep.tail_floor == doctest::Approx(0.734).epsilon(0.01));

    // a zero deeper than the tail circle voids the certificate
    double deep_r = 1.0 - std::ldexp(1.0, -8);
    BlaschkeProduct D = product_from_points({{deep_r, 0.0}});
    auto rep2 = sup_modulus_diff(D, D, net, 4, 2);
    CHECK(!rep2.tail_certified);
}

TEST_CASE("geometric radial sequence: separation and dyadic sup cross-check") {
    // r_k = 1 - 2^-k, k = 1..10: consecutive pseudohyperbolic distances are
    // 1/(3 - 2^-k) and decrease toward 1/3; non-consecutive pairs are larger
    std::vector<BlaschkeProduct::Zero> zeros;
    for (int k = 1; k <= 10; ++k)
        zeros.push_back({DiskPoint{1.0 - std::ldexp(1.0, -k), 0.0}, 1});
    auto rep = interpolation_report(zeros, 14);

    double expect_sep = 1.0; // oracle: min over consecutive pairs by the formula
    for (int k = 1; k < 10; ++k) expect_sep = std::min(expect_sep, 1.0 / (3.0 - std::ldexp(1.0, -k)));
    CHECK(rep.separation == doctest::Approx(expect_sep).epsilon(1e-12));
    CHECK(rep.separation == doctest::Approx(1.0 / 3.0).epsilon(2e-3));

    // brute-force oracle for the dyadic Carleson sup over all levels
    double brute = 0.0;
    for (int n = 1; n <= 14; ++n) {
        std::map<std::uint64_t, double> acc;
        for (const auto& z : zeros) {
            double gap = 1.0 - z.position.abs();
            if (gap > std::ldexp(1.0, -n)) continue; // outside level-n squares
            std::uint64_t j = to_angle64(z.position.angle()) >> (64 - n);
            acc[j] += gap;
        }
        for (auto& [j, m] : acc) brute = std::max(brute, m * std::ldexp(1.0, n));
    }
    CHECK(rep.carleson_dyadic_sup >= brute - 1e-12);
    // the closed-square convention may add grid-boundary atoms, never remove
    CHECK(rep.carleson_norm == doctest::Approx(4.0 * rep.carleson_dyadic_sup));
}

TEST_CASE("schwarz-pick transfer: refined nets lose at most tanh(mesh)") {
    BlaschkeProduct B = gen_cluster(25, DiskPoint{0.6, 0.2}, 1.0, 17);
    // net-sup of |B| over the covered annulus
    auto net_sup = [&](double mesh) {
        HyperbolicNet net = build_net(mesh, 5);
        double best = 0.0;
        for (std::size_t i = 0; i < net.size(); ++i)
            best = std::max(best, eval_modulus_stable(B, net.point(i)));
        return best;
    };
    double s4 = net_sup(0.4);
    double s2 = net_sup(0.2);
    double s1 = net_sup(0.1);
    CHECK(s2 >= s4 - std::tanh(0.4));
    CHECK(s1 >= s2 - std::tanh(0.2));
}

TEST_CASE("arc diagnostics: empty contour gives zero sums") {
    Contour contour;
    contour.params = ContourParams{0.25, 2.0, 0.0625, 1, 0.1, 8};
    DiscretizationResult disc;
    std::map<int, BoundaryMeasure> measures;
    BlaschkeProduct empty;
    auto diag = arc_class_diagnostics(DiskPoint{0.5, 0.1}, disc, measures, contour, empty, 1);
    CHECK(diag.total == 0.0);
    CHECK(diag.direct == 0.0);
    CHECK(diag.residual == 0.0);
    CHECK(diag.entries.empty());
}

TEST_CASE("delta floor check: empty product") {
    Contour contour;
    contour.params = ContourParams{0.25, 2.0, 0.0625, 1, 0.1, 8};
    BlaschkeProduct empty;
    auto rep = delta_floor_check(empty, contour);
    CHECK(rep.min_modulus == 1.0);
    CHECK(rep.ok);
}
