#include "blaschke_approx/generators.hpp"
#include "blaschke_approx/io.hpp"

#include <doctest.h>

using namespace blaschke_approx;

TEST_CASE("zero set round trip") {
    BlaschkeProduct B = gen_cluster(30, DiskPoint{0.8, -0.1}, 1.2, 5);
    B.origin_multiplicity = 3;
    B.unimodular_angle = 1.25;
    Json j = zero_set_to_json(B);
    BlaschkeProduct back = zero_set_from_json(j);
    CHECK(back.origin_multiplicity == 3);
    CHECK(back.unimodular_angle == 1.25);
    REQUIRE(back.zeros.size() == B.zeros.size());
    for (std::size_t i = 0; i < B.zeros.size(); ++i) {
        CHECK(back.zeros[i].position.re == B.zeros[i].position.re);
        CHECK(back.zeros[i].position.im == B.zeros[i].position.im);
        CHECK(back.zeros[i].multiplicity == B.zeros[i].multiplicity);
    }
}

TEST_CASE("contour round trip preserves exact edge geometry") {
    BlaschkeProduct B = gen_power(600);
    auto res = build_contour(B, 0.5, 1, {0.1, 10, 2, 1e-12});
    Json j = contour_to_json(res.contour);
    Contour back = contour_from_json(j);
    REQUIRE(back.components.size() == res.contour.components.size());
    for (std::size_t c = 0; c < back.components.size(); ++c) {
        const auto& a = res.contour.components[c];
        const auto& b = back.components[c];
        CHECK(a.arclength == b.arclength);
        CHECK(a.signed_area == b.signed_area);
        REQUIRE(a.edges.size() == b.edges.size());
        for (std::size_t e = 0; e < a.edges.size(); ++e) {
            CHECK(a.edges[e].kind == b.edges[e].kind);
            if (a.edges[e].kind == Edge::Kind::Arc) {
                CHECK(a.edges[e].a_from == b.edges[e].a_from);
                CHECK(a.edges[e].a_len == b.edges[e].a_len);
                CHECK(a.edges[e].level == b.edges[e].level);
            } else {
                CHECK(a.edges[e].angle == b.edges[e].angle);
            }
        }
    }
    CHECK(back.params.K == res.contour.params.K);
    CHECK(back.params.delta == res.contour.params.delta);
}

TEST_CASE("measure and discretization round trips") {
    BoundaryMeasure mu;
    mu.component_id = 2;
    mu.bin_edges = {0.0, 0.5, 1.0, 1.5, 2.0};
    mu.bin_masses = {0.25, 0.5, 0.125, 0.125};
    mu.total = 1.0;
    mu.pre_renorm_total = 0.999;
    mu.renorm_factor = 1.0 / 0.999;
    mu.seed = 44;
    mu.walks_per_source = 1000;
    mu.sum_sq_multiplicity = 1.0;
    Json j = measure_to_json(mu);
    BoundaryMeasure back = measure_from_json(j);
    CHECK(back.bin_masses == mu.bin_masses);
    CHECK(back.total == mu.total);
    CHECK(back.component_id == 2);
    CHECK(back.bin_edges.back() == doctest::Approx(2.0));

    DiscretizationResult d;
    ArcSegment a;
    a.component_id = 0;
    a.k = 1;
    a.s_lo = 0.0;
    a.s_hi = 1.0;
    a.mass = 1.0;
    a.hyp_length = 0.3;
    a.placed_zero = DiskPoint{0.5, 0.25};
    a.moment_target = 0.6875;
    a.moment_residual = 1e-12;
    d.arcs.push_back(a);
    d.i1 = product_from_points({{0.5, 0.25}});
    d.i1_odd = d.i1;
    d.length_floor = length_floor(0.1, 2.0);
    d.min_hyp_length = 0.3;
    Json dj = discretization_to_json(d);
    DiscretizationResult dback = discretization_from_json(dj);
    REQUIRE(dback.arcs.size() == 1);
    CHECK(dback.arcs[0].placed_zero.re == 0.5);
    CHECK(dback.i1.zeros.size() == 1);
    CHECK(dback.length_floor.log_value == d.length_floor.log_value);
}

TEST_CASE("record hash ignores timings") {
    Json a;
    a["kind"] = "pipeline_record";
    a["value"] = 1.25;
    a["timings"] = Json{{"contour", 1.0}};
    Json b = a;
    b["timings"] = Json{{"contour", 99.0}};
    CHECK(record_hash(a) == record_hash(b));
    b["value"] = 1.26;
    CHECK(record_hash(a) != record_hash(b));
}

TEST_CASE("schema validation rejects foreign documents") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "contour";
    CHECK_THROWS(zero_set_from_json(j));
    Json old;
    old["schema_version"] = 999;
    old["kind"] = "blaschke_zero_set";
    old["zeros"] = Json::array();
    CHECK_THROWS(zero_set_from_json(old));
}
