#include "blaschke_approx/harmonic.hpp"
#include "blaschke_approx/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace blaschke_approx;

namespace {

// synthetic circular component at radius 1 - 2^-level
Component circle_component(int level) {
    Component comp;
    Edge a;
    a.kind = Edge::Kind::Arc;
    a.level = level;
    a.a_from = 0;
    a.a_len = 1ULL << 63;
    a.dir = +1;
    Edge b = a;
    b.a_from = 1ULL << 63;
    comp.edges = {a, b};
    comp.id = 0;
    comp.finalize();
    return comp;
}

// exact harmonic measure of the arc [0, theta] on the circle of radius R seen
// from the real point a in (-R, R): Poisson integral antiderivative
double poisson_cdf(double R, double a, double theta) {
    double k = (R + a) / (R - a);
    // integrate (R^2-a^2) / (2 pi |R e^{i t} - a|^2) dt from 0 to theta
    double half = std::atan(k * std::tan(0.5 * theta));
    // atan branch: shift by pi for theta past pi
    if (theta > M_PI) half += M_PI;
    if (theta < -M_PI) half -= M_PI;
    return half / M_PI;
}

std::vector<double> coarse_sectors(const BoundaryMeasure& mu, int sectors) {
    std::vector<double> out(sectors, 0.0);
    for (std::size_t b = 0; b < mu.bins(); ++b) {
        int s = static_cast<int>(static_cast<double>(b) * sectors / mu.bins());
        out[std::min(s, sectors - 1)] += mu.bin_masses[b];
    }
    return out;
}

} // namespace

TEST_CASE("walk on spheres: centered source exits uniformly") {
    Component comp = circle_component(3);
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{DiskPoint{0, 0}, 1}};
    MeasureConfig cfg;
    cfg.walks_per_source = 40000;
    cfg.seed = 2024;
    cfg.workers = 2;
    BoundaryMeasure mu = harmonic_measure(dom, cfg);

    CHECK(mu.total == doctest::Approx(1.0));
    CHECK(std::fabs(mu.pre_renorm_total - 1.0) <= 0.02);
    for (double m : mu.bin_masses) CHECK(m >= 0.0);

    auto sect = coarse_sectors(mu, 8);
    double expect = 1.0 / 8.0;
    double se = std::sqrt(expect * (1 - expect) / cfg.walks_per_source);
    for (double s : sect) CHECK(std::fabs(s - expect) <= 3.5 * se);
}

TEST_CASE("walk on spheres: off-center source matches the Poisson kernel") {
    Component comp = circle_component(3);
    double R = 1.0 - std::ldexp(1.0, -3);
    DiskPoint src{R / 2.0, 0.0};
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{src, 1}};
    MeasureConfig cfg;
    cfg.walks_per_source = 100000;
    cfg.seed = 4;
    cfg.workers = 2;
    BoundaryMeasure mu = harmonic_measure(dom, cfg);

    const int sectors = 8;
    auto got = coarse_sectors(mu, sectors);
    double tv = 0.0;
    for (int s = 0; s < sectors; ++s) {
        double th0 = 2.0 * M_PI * s / sectors;
        double th1 = 2.0 * M_PI * (s + 1) / sectors;
        double expect = poisson_cdf(R, src.re, th1) - poisson_cdf(R, src.re, th0);
        tv += std::fabs(got[s] - expect);
    }
    tv *= 0.5;
    CHECK(tv <= 0.01);
}

TEST_CASE("walk on spheres: symmetric domain gives symmetric masses") {
    // quarter-annulus, source on the symmetry axis
    std::vector<PolarRect> rects{{0, 1ULL << 62, 1, 3, 0}};
    auto ext = extract_boundaries(rects);
    REQUIRE(ext.cycles.size() == 1);
    Component comp;
    comp.edges = ext.cycles[0].edges;
    comp.id = 0;
    comp.finalize();

    double r_mid = 0.5 * (0.5 + 0.875);
    double th_mid = M_PI / 4.0;
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{DiskPoint{r_mid * std::cos(th_mid), r_mid * std::sin(th_mid)}, 1}};
    MeasureConfig cfg;
    cfg.walks_per_source = 60000;
    cfg.seed = 5;
    cfg.workers = 2;
    BoundaryMeasure mu = harmonic_measure(dom, cfg);

    // mirror symmetry across theta = pi/4 maps the curve to itself reversed;
    // compare the mass of mirrored windows
    const Component& c = comp;
    auto mass_window = [&](double s0, double s1) {
        return mu.mass_up_to(s1) - mu.mass_up_to(s0);
    };
    // use the two radial edges: they are mirror images of each other
    double acc = 0.0;
    std::vector<std::pair<double, double>> radial_spans;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        double lo = i == 0 ? 0.0 : c.cum_len[i - 1];
        if (c.edges[i].kind == Edge::Kind::Radial)
            radial_spans.push_back({lo, c.cum_len[i]});
        acc = c.cum_len[i];
    }
    (void)acc;
    REQUIRE(radial_spans.size() == 2);
    double m0 = mass_window(radial_spans[0].first, radial_spans[0].second);
    double m1 = mass_window(radial_spans[1].first, radial_spans[1].second);
    double se = std::sqrt(std::max(m0, m1) / cfg.walks_per_source) + 1e-6;
    CHECK(std::fabs(m0 - m1) <= 4.0 * se);
}

TEST_CASE("sources must be interior") {
    Component comp = circle_component(3);
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{DiskPoint{0.95, 0.0}, 1}}; // outside the 0.875 circle
    MeasureConfig cfg;
    cfg.walks_per_source = 10;
    CHECK_THROWS_AS(harmonic_measure(dom, cfg), std::invalid_argument);
}

TEST_CASE("multiplicity weights and conservation") {
    Component comp = circle_component(2);
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{DiskPoint{0, 0}, 3}, {DiskPoint{0.2, 0.1}, 2}};
    MeasureConfig cfg;
    cfg.walks_per_source = 5000;
    cfg.seed = 6;
    cfg.workers = 2;
    BoundaryMeasure mu = harmonic_measure(dom, cfg);
    CHECK(mu.total == 5.0);
    double sum = 0.0;
    for (double m : mu.bin_masses) sum += m;
    CHECK(sum == 5.0); // conservation is forced bit-exactly
    CHECK(mu.sum_sq_multiplicity == doctest::Approx(13.0));
}

TEST_CASE("mean value identity against the analytic disk measure") {
    // replace the Monte Carlo bins by the exact Poisson masses: the residual
    // is then pure quadrature error, O(bin width^2)
    Component comp = circle_component(3);
    double R = 1.0 - std::ldexp(1.0, -3);
    DiskPoint src{R / 2.0, 0.0};

    BoundaryMeasure mu;
    mu.component_id = 0;
    std::size_t nbins = 2048;
    mu.bin_edges.resize(nbins + 1);
    mu.bin_masses.resize(nbins);
    for (std::size_t i = 0; i <= nbins; ++i)
        mu.bin_edges[i] = comp.arclength * static_cast<double>(i) / nbins;
    for (std::size_t b = 0; b < nbins; ++b) {
        double th0 = 2.0 * M_PI * b / nbins;
        double th1 = 2.0 * M_PI * (b + 1) / nbins;
        mu.bin_masses[b] = poisson_cdf(R, src.re, th1) - poisson_cdf(R, src.re, th0);
    }
    mu.total = 1.0;
    mu.walks_per_source = 0;

    BlaschkeProduct b1 = product_from_points({src});
    Xoshiro256 rng(8);
    for (int i = 0; i < 20; ++i) {
        double t = artanh(R) + 0.3 + 2.0 * rng.uniform();
        double th = 2.0 * M_PI * rng.uniform();
        double r = std::tanh(t);
        DiskPoint z{r * std::cos(th), r * std::sin(th)};
        double resid = mean_value_check(b1, mu, comp, z);
        CHECK(resid <= 5e-5); // bin width ~ 2.7e-3, quadrature error ~ w^2
    }
}

TEST_CASE("mean value identity for the empty source list") {
    Component comp = circle_component(3);
    BoundaryMeasure mu;
    mu.component_id = 0;
    mu.bin_edges = {0.0, comp.arclength};
    mu.bin_masses = {0.0};
    mu.total = 0.0;
    BlaschkeProduct empty;
    CHECK(mean_value_check(empty, mu, comp, DiskPoint{0.99, 0.0}) == 0.0);
}

TEST_CASE("mean value check requires an exterior point") {
    Component comp = circle_component(3);
    BoundaryMeasure mu;
    mu.bin_edges = {0.0, comp.arclength};
    mu.bin_masses = {1.0};
    mu.total = 1.0;
    BlaschkeProduct b1 = product_from_points({DiskPoint{0.1, 0.0}});
    CHECK_THROWS_AS(mean_value_check(b1, mu, comp, DiskPoint{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("measure determinism for fixed seed and workers") {
    Component comp = circle_component(3);
    HarmonicDomain dom;
    dom.boundary = &comp;
    dom.sources = {{DiskPoint{0.3, 0.2}, 2}};
    MeasureConfig cfg;
    cfg.walks_per_source = 8000;
    cfg.seed = 99;
    cfg.workers = 2;
    BoundaryMeasure a = harmonic_measure(dom, cfg);
    BoundaryMeasure b = harmonic_measure(dom, cfg);
    CHECK(a.bin_masses == b.bin_masses);
}
