#include "blaschke_approx/region.hpp"
#include "blaschke_approx/contour.hpp"

#include <doctest.h>

#include <cmath>

using namespace blaschke_approx;

namespace {

Angle64 frac(int num, int den_pow2) { // num / 2^den_pow2 of a turn
    return static_cast<Angle64>(num) << (64 - den_pow2);
}

double cycle_length(const Cycle& c) {
    double acc = 0.0;
    for (const auto& e : c.edges) acc += e.euclid_length();
    return acc;
}

} // namespace

TEST_CASE("single rectangle boundary") {
    // r in (1/2, 3/4), theta in (0, pi/2)
    std::vector<PolarRect> rects{{frac(0, 2), frac(1, 2), 1, 2, 0}};
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 1);
    REQUIRE(ext.cycles.size() == 1);
    const Cycle& c = ext.cycles[0];
    CHECK(c.signed_area > 0.0);
    // area = (theta span)/2 * (r2^2 - r1^2)
    double expect = 0.25 * M_PI * (0.75 * 0.75 - 0.25);
    CHECK(c.signed_area == doctest::Approx(expect).epsilon(1e-12));
    double len = cycle_length(c);
    double expect_len = 2.0 * 0.25 + 0.5 * M_PI * (0.5 + 0.75);
    CHECK(len == doctest::Approx(expect_len).epsilon(1e-12));
}

TEST_CASE("adjacent rectangles merge through the shared edge") {
    std::vector<PolarRect> rects{
        {frac(0, 2), frac(1, 2), 1, 3, 0},
        {frac(1, 2), frac(1, 2), 1, 3, 1},
    };
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 1);
    REQUIRE(ext.cycles.size() == 1);
    // merged region r in (1/2, 7/8), theta in (0, pi)
    double expect = 0.5 * M_PI * (0.875 * 0.875 - 0.25);
    CHECK(ext.cycles[0].signed_area == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("rectangles with disjoint radial overlap stay separate") {
    // deep rectangle next to a shallow one: the shared angle has no open
    // overlap, so the regions are distinct components
    std::vector<PolarRect> rects{
        {frac(0, 3), frac(1, 3), 1, 2, 0},  // r in (1/2, 3/4)
        {frac(1, 3), frac(1, 3), 5, 7, 1},  // r in (31/32, 127/128)
    };
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 2);
    CHECK(ext.cycles.size() == 2);
    for (const auto& c : ext.cycles) CHECK(c.signed_area > 0.0);
}

TEST_CASE("full annulus produces outer and inner cycles") {
    std::vector<PolarRect> rects{
        {frac(0, 1), frac(1, 1), 1, 4, 0},
        {frac(1, 1), frac(1, 1), 1, 4, 1},
    };
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 1);
    REQUIRE(ext.cycles.size() == 2);
    const Cycle* outer = nullptr;
    const Cycle* inner = nullptr;
    for (const auto& c : ext.cycles)
        (c.signed_area > 0 ? outer : inner) = &c;
    REQUIRE(outer != nullptr);
    REQUIRE(inner != nullptr);
    double r_out = 1.0 - std::ldexp(1.0, -4);
    CHECK(outer->signed_area == doctest::Approx(M_PI * r_out * r_out).epsilon(1e-12));
    CHECK(inner->signed_area == doctest::Approx(-M_PI * 0.25).epsilon(1e-12));
    CHECK(cycle_length(*outer) == doctest::Approx(2.0 * M_PI * r_out).epsilon(1e-12));
}

TEST_CASE("staircase of mixed heights walks correctly") {
    // one bad square at level 1 with good squares at levels 2,3,3,2 above;
    // boundary length must match the direct accounting
    std::vector<PolarRect> rects{
        {frac(0, 2), frac(1, 2), 1, 2, 0},
        {frac(2, 3), frac(1, 3), 1, 3, 0},
        {frac(3, 3), frac(1, 3), 1, 3, 0},
    };
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 1);
    REQUIRE(ext.cycles.size() == 1);
    const Cycle& c = ext.cycles[0];
    CHECK(c.signed_area > 0.0);
    double area = 0.0;
    area += 0.25 * M_PI * (0.75 * 0.75 - 0.25);   // first quarter up to 3/4
    area += 0.125 * M_PI * (0.875 * 0.875 - 0.25) * 2.0; // two eighths up to 7/8
    CHECK(c.signed_area == doctest::Approx(area).epsilon(1e-12));
}

TEST_CASE("pinch vertex keeps diagonally touching regions separate") {
    // two rectangles sharing exactly one lattice vertex
    std::vector<PolarRect> rects{
        {frac(0, 2), frac(1, 2), 1, 2, 0},
        {frac(1, 2), frac(1, 2), 2, 3, 1},
    };
    auto ext = extract_boundaries(rects);
    CHECK(ext.n_components == 2);
    CHECK(ext.cycles.size() == 2);
    for (const auto& c : ext.cycles) CHECK(c.signed_area > 0.0);
}

TEST_CASE("component from edges: synthetic circle") {
    double r = 1.0 - std::ldexp(1.0, -3);
    Component comp;
    Edge a;
    a.kind = Edge::Kind::Arc;
    a.level = 3;
    a.a_from = 0;
    a.a_len = 1ULL << 63;
    a.dir = +1;
    Edge b = a;
    b.a_from = 1ULL << 63;
    comp.edges = {a, b};
    comp.id = 0;
    comp.finalize();
    CHECK(comp.arclength == doctest::Approx(2.0 * M_PI * r).epsilon(1e-12));
    CHECK(comp.signed_area == doctest::Approx(M_PI * r * r).epsilon(1e-12));
    CHECK(comp.locate(DiskPoint{0, 0}) == Location::Interior);
    CHECK(comp.locate(DiskPoint{0.9, 0.3}) == Location::Exterior);
    CHECK(comp.locate(DiskPoint{r, 0.0}) == Location::Boundary);

    double s;
    double d = comp.euclid_dist(DiskPoint{0.5, 0.0}, &s);
    CHECK(d == doctest::Approx(r - 0.5).epsilon(1e-12));
    CHECK(s == doctest::Approx(0.0).epsilon(1e-9));

    // hyperbolic distance to the circle from the center
    CHECK(comp.hyp_dist_to_boundary(DiskPoint{0, 0}) ==
          doctest::Approx(artanh(r)).epsilon(1e-4));
}

TEST_CASE("point_at_arclength walks the curve in order") {
    double r = 0.75;
    Component comp;
    Edge a;
    a.kind = Edge::Kind::Arc;
    a.level = 2;
    a.a_from = 0;
    a.a_len = 1ULL << 63;
    a.dir = +1;
    Edge b = a;
    b.a_from = 1ULL << 63;
    comp.edges = {a, b};
    comp.finalize();
    DiskPoint quarter = comp.point_at_arclength(0.25 * comp.arclength);
    CHECK(quarter.re == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(quarter.im == doctest::Approx(r).epsilon(1e-9));
}
