#include "blaschke_approx/io.hpp"

#include <fstream>
#include <stdexcept>

namespace blaschke_approx {

namespace {

void require_kind(const Json& j, const std::string& kind) {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw std::runtime_error("unsupported schema_version for " + kind);
    if (!j.contains("kind") || j["kind"].get<std::string>() != kind)
        throw std::runtime_error("expected a '" + kind + "' document");
}

} // namespace

Json zero_set_to_json(const BlaschkeProduct& B) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "blaschke_zero_set";
    j["origin_multiplicity"] = B.origin_multiplicity;
    j["unimodular_angle"] = B.unimodular_angle;
    Json zs = Json::array();
    for (const auto& z : B.zeros)
        zs.push_back(Json{{"re", z.position.re}, {"im", z.position.im},
                          {"multiplicity", z.multiplicity}});
    j["zeros"] = zs;
    return j;
}

BlaschkeProduct zero_set_from_json(const Json& j) {
    require_kind(j, "blaschke_zero_set");
    std::vector<BlaschkeProduct::Zero> zeros;
    for (const auto& z : j.at("zeros")) {
        zeros.push_back({make_disk_point(z.at("re").get<double>(), z.at("im").get<double>()),
                         z.value("multiplicity", 1)});
    }
    return make_product(std::move(zeros), j.value("origin_multiplicity", 0),
                        j.value("unimodular_angle", 0.0));
}

namespace {

Json edge_to_json(const Edge& e) {
    Json j;
    if (e.kind == Edge::Kind::Radial) {
        j["kind"] = "radial";
        j["angle64"] = e.angle;
        j["lev_from"] = e.lev_from;
        j["lev_to"] = e.lev_to;
        j["theta"] = e.theta();
        j["r_from"] = 1.0 - std::ldexp(1.0, -e.lev_from);
        j["r_to"] = 1.0 - std::ldexp(1.0, -e.lev_to);
    } else {
        j["kind"] = "arc";
        j["level"] = e.level;
        j["a_from"] = e.a_from;
        j["a_len"] = e.a_len;
        j["dir"] = e.dir;
        j["radius"] = e.radius();
        j["theta_from"] = from_angle64(e.a_from);
    }
    return j;
}

Edge edge_from_json(const Json& j) {
    Edge e;
    if (j.at("kind").get<std::string>() == "radial") {
        e.kind = Edge::Kind::Radial;
        e.angle = j.at("angle64").get<std::uint64_t>();
        e.lev_from = j.at("lev_from").get<int>();
        e.lev_to = j.at("lev_to").get<int>();
    } else {
        e.kind = Edge::Kind::Arc;
        e.level = j.at("level").get<int>();
        e.a_from = j.at("a_from").get<std::uint64_t>();
        e.a_len = j.at("a_len").get<std::uint64_t>();
        e.dir = j.at("dir").get<int>();
    }
    return e;
}

} // namespace

Json contour_to_json(const Contour& c, const ContourBuildResult* build) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "contour";
    j["params"] = Json{{"epsilon", c.params.epsilon}, {"K", c.params.K},
                       {"delta", c.params.delta},     {"N", c.params.N},
                       {"mesh", c.params.mesh},       {"d_max", c.params.d_max}};
    Json comps = Json::array();
    for (const auto& comp : c.components) {
        Json cj;
        cj["id"] = comp.id;
        cj["arclength"] = comp.arclength;
        cj["signed_area"] = comp.signed_area;
        cj["anchor"] = Json{{"re", comp.anchor.re}, {"im", comp.anchor.im}};
        Json edges = Json::array();
        for (const auto& e : comp.edges) edges.push_back(edge_to_json(e));
        cj["edges"] = edges;
        comps.push_back(cj);
    }
    j["components"] = comps;
    if (build) {
        auto squares = [](const std::vector<ClassifiedSquare>& list) {
            Json out = Json::array();
            for (const auto& cs : list)
                out.push_back(Json{{"n", cs.square.level},
                                   {"j", cs.square.index},
                                   {"sup", cs.sup_estimate}});
            return out;
        };
        j["selected_bad"] = squares(build->selected_bad);
        j["selected_good"] = squares(build->selected_good);
        j["delta_halvings"] = build->delta_halvings;
        j["dropped_inner_cycles"] = build->dropped_inner_cycles;
        Json rows = Json::array();
        for (const auto& row : build->scaling)
            rows.push_back(Json{{"n", row.good.level},
                                {"j", row.good.index},
                                {"sum_bad_sides", row.sum_bad_sides},
                                {"ok", row.ok}});
        j["scaling"] = rows;
    }
    return j;
}

void selected_squares_from_json(const Json& j, std::vector<ClassifiedSquare>& bad,
                                std::vector<ClassifiedSquare>& good) {
    auto read = [](const Json& arr, SquareKind kind, std::vector<ClassifiedSquare>& out) {
        for (const auto& s : arr)
            out.push_back({DyadicSquare{s.at("n").get<int>(), s.at("j").get<std::uint64_t>()},
                           kind, s.value("sup", 0.0)});
    };
    if (j.contains("selected_bad")) read(j["selected_bad"], SquareKind::Bad, bad);
    if (j.contains("selected_good")) read(j["selected_good"], SquareKind::Good, good);
}

Contour contour_from_json(const Json& j) {
    require_kind(j, "contour");
    Contour c;
    const auto& p = j.at("params");
    c.params = ContourParams{p.at("epsilon").get<double>(), p.at("K").get<double>(),
                             p.at("delta").get<double>(),   p.at("N").get<int>(),
                             p.at("mesh").get<double>(),    p.at("d_max").get<int>()};
    for (const auto& cj : j.at("components")) {
        Component comp;
        comp.id = cj.at("id").get<int>();
        for (const auto& ej : cj.at("edges")) comp.edges.push_back(edge_from_json(ej));
        comp.finalize();
        c.components.push_back(std::move(comp));
    }
    return c;
}

Json measure_to_json(const BoundaryMeasure& mu) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "boundary_measure";
    j["component_id"] = mu.component_id;
    j["length"] = mu.length();
    j["bins"] = mu.bins();
    j["bin_masses"] = mu.bin_masses;
    j["total"] = mu.total;
    j["pre_renorm_total"] = mu.pre_renorm_total;
    j["renorm_factor"] = mu.renorm_factor;
    j["stat_error"] = mu.stat_error;
    j["seed"] = mu.seed;
    j["walks_per_source"] = mu.walks_per_source;
    j["sum_sq_multiplicity"] = mu.sum_sq_multiplicity;
    j["stuck_walks"] = mu.stuck_walks;
    j["method"] = mu.method;
    return j;
}

BoundaryMeasure measure_from_json(const Json& j) {
    require_kind(j, "boundary_measure");
    BoundaryMeasure mu;
    mu.component_id = j.at("component_id").get<int>();
    double length = j.at("length").get<double>();
    std::size_t bins = j.at("bins").get<std::size_t>();
    mu.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        mu.bin_edges[i] = length * static_cast<double>(i) / static_cast<double>(bins);
    mu.bin_masses = j.at("bin_masses").get<std::vector<double>>();
    if (mu.bin_masses.size() != bins) throw std::runtime_error("measure bin count mismatch");
    mu.total = j.at("total").get<double>();
    mu.pre_renorm_total = j.at("pre_renorm_total").get<double>();
    mu.renorm_factor = j.at("renorm_factor").get<double>();
    mu.stat_error = j.at("stat_error").get<double>();
    mu.seed = j.at("seed").get<std::uint64_t>();
    mu.walks_per_source = j.at("walks_per_source").get<int>();
    mu.sum_sq_multiplicity = j.at("sum_sq_multiplicity").get<double>();
    mu.stuck_walks = j.value("stuck_walks", 0L);
    mu.method = j.value("method", std::string("monte_carlo"));
    return mu;
}

Json discretization_to_json(const DiscretizationResult& d) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "discretization";
    Json arcs = Json::array();
    for (const auto& a : d.arcs) {
        arcs.push_back(Json{{"component_id", a.component_id},
                            {"k", a.k},
                            {"s_lo", a.s_lo},
                            {"s_hi", a.s_hi},
                            {"mass", a.mass},
                            {"hyp_length", a.hyp_length},
                            {"placed_zero", Json{{"re", a.placed_zero.re}, {"im", a.placed_zero.im}}},
                            {"moment_target", a.moment_target},
                            {"moment_residual", a.moment_residual}});
    }
    j["arcs"] = arcs;
    j["i1"] = zero_set_to_json(d.i1);
    j["i1_odd"] = zero_set_to_json(d.i1_odd);
    j["i1_even"] = zero_set_to_json(d.i1_even);
    j["length_floor_log"] = d.length_floor.log_value;
    j["min_hyp_length"] = d.min_hyp_length;
    j["max_moment_residual_rel"] = d.max_moment_residual_rel;
    return j;
}

DiscretizationResult discretization_from_json(const Json& j) {
    require_kind(j, "discretization");
    DiscretizationResult d;
    for (const auto& aj : j.at("arcs")) {
        ArcSegment a;
        a.component_id = aj.at("component_id").get<int>();
        a.k = aj.at("k").get<int>();
        a.s_lo = aj.at("s_lo").get<double>();
        a.s_hi = aj.at("s_hi").get<double>();
        a.mass = aj.at("mass").get<double>();
        a.hyp_length = aj.at("hyp_length").get<double>();
        a.placed_zero = DiskPoint{aj.at("placed_zero").at("re").get<double>(),
                                  aj.at("placed_zero").at("im").get<double>()};
        a.moment_target = aj.at("moment_target").get<double>();
        a.moment_residual = aj.at("moment_residual").get<double>();
        d.arcs.push_back(a);
    }
    d.i1 = zero_set_from_json(j.at("i1"));
    d.i1_odd = zero_set_from_json(j.at("i1_odd"));
    d.i1_even = zero_set_from_json(j.at("i1_even"));
    d.length_floor.log_value = j.at("length_floor_log").get<double>();
    d.length_floor.value = std::exp(d.length_floor.log_value);
    d.min_hyp_length = j.at("min_hyp_length").get<double>();
    d.max_moment_residual_rel = j.at("max_moment_residual_rel").get<double>();
    return d;
}

void save_json(const std::filesystem::path& path, const Json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

std::uint64_t record_hash(Json record) {
    record.erase("timings");
    record.erase("hash");
    std::string s = record.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace blaschke_approx
