#include "blaschke_approx/pipeline.hpp"
#include "blaschke_approx/generators.hpp"
#include "blaschke_approx/render.hpp"
#include "blaschke_approx/rng.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blaschke_approx {

namespace {

struct StageTimer {
    std::map<std::string, double>& sink;
    std::string name;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    ~StageTimer() {
        sink[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

} // namespace

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "input") cfg.input_path = value;
    else if (key == "generator") cfg.generator = value;
    else if (key == "epsilon") cfg.epsilon = std::stod(value);
    else if (key == "bign" || key == "N") cfg.N = std::stoi(value);
    else if (key == "contour_k") cfg.contour_k = std::stod(value);
    else if (key == "mesh") cfg.mesh = std::stod(value);
    else if (key == "dmax") cfg.d_max = std::stoi(value);
    else if (key == "walks") cfg.walks_per_source = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "render") cfg.render = (value == "1" || value == "true");
    else if (key == "workers") cfg.workers = std::stoi(value);
    else if (key == "conclusion_samples") cfg.conclusion_samples = std::stoi(value);
    else if (key == "telescoping_points") cfg.telescoping_points = std::stoi(value);
    else if (key == "telescoping_gate") cfg.telescoping_gate = std::stod(value);
    else if (key == "mean_value_points") cfg.mean_value_points = std::stoi(value);
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) apply_config_line(cfg, key, value);
    }
    return cfg;
}

namespace {

MeanValueSummary run_mean_value_checks(const PipelineRecord& rec, const RunConfig& cfg) {
    MeanValueSummary out;
    Xoshiro256 rng(derive_seed(cfg.seed, 0x3E47));
    for (const auto& [cid, mu] : rec.measures) {
        const Component& comp = rec.built.contour.components.at(cid);
        // the component's own deep zeros
        BlaschkeProduct b1c;
        if (rec.split.b1.origin_multiplicity > 0) {
            if (comp.locate(DiskPoint{0, 0}) == Location::Interior)
                b1c.origin_multiplicity = rec.split.b1.origin_multiplicity;
        }
        for (const auto& z : rec.split.b1.zeros)
            if (comp.locate(z.position) == Location::Interior) b1c.zeros.push_back(z);

        std::vector<double> f_bins(mu.bins());
        int done = 0, tries = 0;
        while (done < cfg.mean_value_points && tries < cfg.mean_value_points * 100) {
            ++tries;
            double s = rng.uniform() * comp.arclength;
            DiskPoint bp = comp.point_at_arclength(s);
            double t = artanh(bp.abs()) + 5.0 + 3.0 * rng.uniform();
            double r = std::tanh(t);
            if (!(r < 1.0)) continue;
            DiskPoint z{r * std::cos(bp.angle()), r * std::sin(bp.angle())};
            if (comp.locate(z) != Location::Exterior) continue;
            double resid = mean_value_check(b1c, mu, comp, z);
            for (std::size_t b = 0; b < mu.bins(); ++b) {
                double mid = 0.5 * (mu.bin_edges[b] + mu.bin_edges[b + 1]);
                f_bins[b] = std::log(pseudo_dist(z, comp.point_at_arclength(mid)));
            }
            double sigma = quadrature_stat_error(mu, f_bins);
            double lhs = b1c.empty() ? 0.0 : std::fabs(log_modulus(b1c, z));
            double allowance = 0.01 * lhs + 3.0 * sigma + 1e-12;
            out.max_residual = std::max(out.max_residual, resid);
            out.max_allowance = std::max(out.max_allowance, allowance);
            if (resid > allowance) out.ok = false;
            ++done;
        }
        out.points += done;
    }
    return out;
}

} // namespace

PipelineRecord run_pipeline(const BlaschkeProduct& B, const RunConfig& cfg) {
    PipelineRecord rec;
    rec.config = cfg;
    rec.degree = B.degree();
    rec.distinct_zeros = static_cast<int>(B.zeros.size()) + (B.origin_multiplicity > 0 ? 1 : 0);

    try {
        {
            StageTimer t{rec.timings, "contour"};
            ContourOptions opts;
            opts.mesh = cfg.mesh;
            opts.d_max = cfg.d_max;
            opts.workers = cfg.workers;
            rec.built = cfg.contour_k > 0.0
                            ? build_contour_with_k(B, cfg.epsilon, cfg.contour_k, cfg.N, opts)
                            : build_contour(B, cfg.epsilon, cfg.N, opts);
        }
        {
            StageTimer t{rec.timings, "conclusions"};
            rec.conclusions =
                verify_contour_conclusions(B, rec.built, cfg.conclusion_samples, cfg.seed);
        }
        {
            StageTimer t{rec.timings, "split"};
            SplitOptions sopts;
            sopts.workers = cfg.workers;
            rec.split = split_by_contour(B, rec.built.contour, rec.built.delta, cfg.N, sopts);
        }
        {
            StageTimer t{rec.timings, "measures"};
            std::map<int, std::vector<WeightedSource>> sources;
            for (const auto& a : rec.split.assignments)
                if (a.deep) sources[a.component].push_back({a.position, a.multiplicity});
            for (auto& [cid, src] : sources) {
                HarmonicDomain dom;
                dom.boundary = &rec.built.contour.components.at(cid);
                dom.sources = std::move(src);
                MeasureConfig mc;
                mc.walks_per_source = cfg.walks_per_source;
                mc.seed = derive_seed(cfg.seed, 0xAB, static_cast<std::uint64_t>(cid));
                mc.workers = cfg.workers;
                rec.measures.emplace(cid, harmonic_measure(dom, mc));
            }
        }
        {
            StageTimer t{rec.timings, "discretize"};
            rec.disc = discretize(rec.built.contour, rec.measures);
        }
        {
            StageTimer t{rec.timings, "verify"};
            rec.approximant = multiply(rec.disc.i1, rec.split.b2);
            HyperbolicNet net = build_net(cfg.mesh, cfg.d_max + 1);
            rec.supdiff = sup_modulus_diff(B, rec.approximant, net, cfg.d_max, cfg.workers);
            rec.interp_odd = interpolation_report(rec.disc.i1_odd.zeros, cfg.d_max);
            rec.interp_even = interpolation_report(rec.disc.i1_even.zeros, cfg.d_max);
            rec.interp_b2 = interpolation_report(rec.split.b2.all_zeros_with_origin(), cfg.d_max);
            rec.floor_check = delta_floor_check(rec.split.b1, rec.built.contour);
            rec.telescoping =
                telescoping_check(rec.split.b1, rec.disc, rec.measures, rec.built.contour,
                                  cfg.N, cfg.telescoping_points, cfg.telescoping_gate, cfg.seed);
            rec.mean_value = run_mean_value_checks(rec, cfg);
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        // the stage that threw is the last one that started (its timer fires
        // on unwind, so it is the last timed entry in stage order)
        rec.failure_stage = "input";
        for (const char* stage : {"contour", "conclusions", "split", "measures", "discretize",
                                  "verify"})
            if (rec.timings.count(stage)) rec.failure_stage = stage;
        rec.failure_stage += std::string(": ") + e.what();
        rec.ok = false;
    }

    rec.hash = record_hash(rec.to_json());
    if (!cfg.out_dir.empty()) write_outputs(rec, B);
    return rec;
}

PipelineRecord run_pipeline(const RunConfig& cfg) {
    BlaschkeProduct B;
    if (!cfg.input_path.empty())
        B = zero_set_from_json(load_json(cfg.input_path));
    else if (!cfg.generator.empty())
        B = generate_from_spec(cfg.generator);
    else
        throw std::invalid_argument("run config needs an input path or a generator spec");
    return run_pipeline(B, cfg);
}

Json PipelineRecord::to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "pipeline_record";
    j["config"] = Json{{"input", config.input_path},
                       {"generator", config.generator},
                       {"epsilon", config.epsilon},
                       {"N", config.N},
                       {"contour_k", config.contour_k},
                       {"mesh", config.mesh},
                       {"dmax", config.d_max},
                       {"walks", config.walks_per_source},
                       {"seed", config.seed},
                       {"workers", config.workers}};
    j["ok"] = ok;
    j["failure_stage"] = failure_stage;
    j["degree"] = degree;
    j["distinct_zeros"] = distinct_zeros;

    j["contour"] = Json{{"components", built.contour.components.size()},
                        {"delta", built.delta},
                        {"delta_halvings", built.delta_halvings},
                        {"selected_bad", built.selected_bad.size()},
                        {"selected_good", built.selected_good.size()},
                        {"dropped_inner_cycles", built.dropped_inner_cycles},
                        {"net_points", built.net_points},
                        {"carleson_dyadic_sup", conclusions.norm.dyadic_sup},
                        {"carleson_norm_bound", conclusions.norm.norm_bound}};
    j["conclusions"] = Json{{"samples_a", conclusions.samples_a},
                            {"max_mod_near", conclusions.max_mod_near},
                            {"ok_a", conclusions.ok_a},
                            {"samples_b", conclusions.samples_b},
                            {"min_ball_sup", conclusions.min_ball_sup},
                            {"ok_b", conclusions.ok_b},
                            {"radius_b", conclusions.radius_b},
                            {"ok_c", conclusions.ok_c},
                            {"ok_scaling", conclusions.ok_scaling},
                            {"ok_boundary_17", conclusions.ok_boundary_17},
                            {"max_boundary_ratio", conclusions.max_boundary_ratio}};
    j["split"] = Json{{"b1_degree", split.b1.degree()},
                      {"b2_degree", split.b2.degree()},
                      {"witness_coverage", split.witness_coverage}};
    Json ms = Json::array();
    for (const auto& [cid, mu] : measures)
        ms.push_back(Json{{"component", cid},
                          {"total", mu.total},
                          {"bins", mu.bins()},
                          {"pre_renorm_total", mu.pre_renorm_total},
                          {"renorm_factor", mu.renorm_factor},
                          {"stuck_walks", mu.stuck_walks}});
    j["measures"] = ms;
    j["discretization"] = Json{{"arcs", disc.arcs.size()},
                               {"min_hyp_length", disc.min_hyp_length},
                               {"max_moment_residual_rel", disc.max_moment_residual_rel},
                               {"length_floor_log", disc.length_floor.log_value}};
    j["verification"] =
        Json{{"sup_diff", supdiff.sup_diff},
             {"slack", supdiff.slack},
             {"identical_products", supdiff.identical},
             {"tail_floor", supdiff.tail_floor},
             {"tail_certified", supdiff.tail_certified},
             {"separation_odd", interp_odd.separation},
             {"separation_even", interp_even.separation},
             {"carleson_norm_odd", interp_odd.carleson_norm},
             {"carleson_norm_even", interp_even.carleson_norm},
             {"carleson_norm_b2", interp_b2.carleson_norm},
             {"floor_ok", floor_check.ok},
             {"min_b1_on_contour", floor_check.min_modulus},
             {"telescoping_max_residual", telescoping.max_residual},
             {"telescoping_ok", telescoping.ok},
             {"mean_value_max_residual", mean_value.max_residual},
             {"mean_value_ok", mean_value.ok}};
    j["timings"] = timings;
    j["hash"] = hash;
    return j;
}

void write_outputs(const PipelineRecord& rec, const BlaschkeProduct& B) {
    namespace fs = std::filesystem;
    fs::path dir(rec.config.out_dir);
    fs::create_directories(dir);
    save_json(dir / "zeros.json", zero_set_to_json(B));
    save_json(dir / "contour.json", contour_to_json(rec.built.contour, &rec.built));
    Json ms = Json::array();
    for (const auto& [cid, mu] : rec.measures) ms.push_back(measure_to_json(mu));
    Json mdoc;
    mdoc["schema_version"] = kSchemaVersion;
    mdoc["kind"] = "boundary_measures";
    mdoc["measures"] = ms;
    save_json(dir / "measures.json", mdoc);
    save_json(dir / "discretization.json", discretization_to_json(rec.disc));
    Json record = rec.to_json();
    save_json(dir / "record.json", record);

    std::ofstream csv(dir / "summary.csv");
    csv << "degree,components,delta,arcs,sup_diff,slack,carleson_norm,witness_coverage,"
           "telescoping_max,mean_value_max,ok\n";
    csv << rec.degree << ',' << rec.built.contour.components.size() << ',' << rec.built.delta
        << ',' << rec.disc.arcs.size() << ',' << rec.supdiff.sup_diff << ',' << rec.supdiff.slack
        << ',' << rec.conclusions.norm.norm_bound << ',' << rec.split.witness_coverage << ','
        << rec.telescoping.max_residual << ',' << rec.mean_value.max_residual << ','
        << (rec.ok ? 1 : 0) << '\n';

    if (rec.config.render) {
        std::ofstream svg(dir / "figure.svg");
        svg << render_svg(B, rec.built, &rec.disc);
    }
}

} // namespace blaschke_approx
