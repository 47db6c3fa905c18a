// bapx: build Carleson-style contours for finite Blaschke products, discretize
// harmonic measure along them, and verify the modulus approximation.
#include "blaschke_approx/generators.hpp"
#include "blaschke_approx/pipeline.hpp"
#include "blaschke_approx/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace blaschke_approx;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key=value config file, flags override");
    cmd->add_option("--input", cfg.input_path, "zero-set JSON file");
    cmd->add_option("--generator", cfg.generator, "generator spec, e.g. cluster:count=200,...");
    cmd->add_option("--epsilon", cfg.epsilon, "target accuracy in (0,1)");
    cmd->add_option("--bign", cfg.N, "dyadic margin N (K = 2N)");
    cmd->add_option("--contour-k", cfg.contour_k, "override the neighborhood radius K directly");
    cmd->add_option("--mesh", cfg.mesh, "hyperbolic net mesh");
    cmd->add_option("--dmax", cfg.d_max, "maximum dyadic depth");
    cmd->add_option("--walks", cfg.walks_per_source, "Monte Carlo walks per source");
    cmd->add_option("--seed", cfg.seed, "run seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_flag("--render", cfg.render, "write figure.svg");
    cmd->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
}

RunConfig merge_config(const RunConfig& flags, const std::string& config_path, CLI::App* cmd) {
    if (config_path.empty()) return flags;
    RunConfig cfg = config_from_file(config_path);
    // flags that were actually given override the file
    auto take = [&](const char* name, auto member) {
        if (cmd->count(name) > 0) cfg.*member = flags.*member;
    };
    take("--input", &RunConfig::input_path);
    take("--generator", &RunConfig::generator);
    take("--epsilon", &RunConfig::epsilon);
    take("--bign", &RunConfig::N);
    take("--contour-k", &RunConfig::contour_k);
    take("--mesh", &RunConfig::mesh);
    take("--dmax", &RunConfig::d_max);
    take("--walks", &RunConfig::walks_per_source);
    take("--seed", &RunConfig::seed);
    take("--out", &RunConfig::out_dir);
    take("--render", &RunConfig::render);
    take("--workers", &RunConfig::workers);
    return cfg;
}

BlaschkeProduct load_input(const RunConfig& cfg) {
    if (!cfg.input_path.empty()) return zero_set_from_json(load_json(cfg.input_path));
    if (!cfg.generator.empty()) return generate_from_spec(cfg.generator);
    throw std::runtime_error("need --input or --generator");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blaschke product modulus approximation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string gen_spec, out_file;

    auto* c_gen = app.add_subcommand("generate", "write a zero-set file from a generator spec");
    c_gen->add_option("spec", gen_spec, "generator spec")->required();
    c_gen->add_option("--out", out_file, "output file")->required();

    auto* c_contour = app.add_subcommand("contour", "build the contour for a zero set");
    add_common(c_contour, cfg, config_path);

    auto* c_disc = app.add_subcommand("discretize",
                                      "split + harmonic measures + zero placement for a zero set");
    add_common(c_disc, cfg, config_path);

    auto* c_verify = app.add_subcommand("verify", "full verification report for a zero set");
    add_common(c_verify, cfg, config_path);

    auto* c_run = app.add_subcommand("run", "full pipeline");
    add_common(c_run, cfg, config_path);

    auto* c_render = app.add_subcommand("render", "render figure.svg from a finished run");
    std::string run_dir;
    c_render->add_option("dir", run_dir, "output directory of a previous run")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_gen->parsed()) {
            BlaschkeProduct B = generate_from_spec(gen_spec);
            save_json(out_file, zero_set_to_json(B));
            std::cout << "wrote " << out_file << " (degree " << B.degree() << ")\n";
            return 0;
        }
        if (c_render->parsed()) {
            RunConfig rcfg;
            rcfg.input_path = run_dir + "/zeros.json";
            rcfg.out_dir = run_dir;
            rcfg.render = true;
            // re-run of the cheap stages is avoided: render from saved files
            BlaschkeProduct B = zero_set_from_json(load_json(rcfg.input_path));
            Json cj = load_json(run_dir + "/contour.json");
            Contour contour = contour_from_json(cj);
            DiscretizationResult disc =
                discretization_from_json(load_json(run_dir + "/discretization.json"));
            ContourBuildResult built;
            built.contour = contour;
            selected_squares_from_json(cj, built.selected_bad, built.selected_good);
            std::ofstream svg(run_dir + "/figure.svg");
            svg << render_svg(B, built, &disc);
            std::cout << "wrote " << run_dir << "/figure.svg\n";
            return 0;
        }

        CLI::App* active = c_contour->parsed()   ? c_contour
                           : c_disc->parsed()    ? c_disc
                           : c_verify->parsed()  ? c_verify
                                                 : c_run;
        RunConfig run_cfg = merge_config(cfg, config_path, active);
        BlaschkeProduct B = load_input(run_cfg);

        if (c_contour->parsed()) {
            ContourOptions opts;
            opts.mesh = run_cfg.mesh;
            opts.d_max = run_cfg.d_max;
            opts.workers = run_cfg.workers;
            ContourBuildResult res =
                run_cfg.contour_k > 0.0
                    ? build_contour_with_k(B, run_cfg.epsilon, run_cfg.contour_k, run_cfg.N, opts)
                    : build_contour(B, run_cfg.epsilon, run_cfg.N, opts);
            std::cout << "components: " << res.contour.components.size()
                      << "  delta: " << res.delta << "  bad squares: " << res.selected_bad.size()
                      << "\n";
            if (!run_cfg.out_dir.empty())
                save_json(std::filesystem::path(run_cfg.out_dir) / "contour.json",
                          contour_to_json(res.contour, &res));
            return 0;
        }

        // discretize / verify / run share the pipeline; the subcommands differ
        // in how much of the record is reported
        PipelineRecord rec = run_pipeline(B, run_cfg);
        if (c_disc->parsed()) {
            std::cout << "arcs: " << rec.disc.arcs.size()
                      << "  max moment residual: " << rec.disc.max_moment_residual_rel
                      << "  min arc hyp length: " << rec.disc.min_hyp_length << "\n";
        } else if (c_verify->parsed()) {
            std::cout << rec.to_json()["verification"].dump(2) << "\n";
        } else {
            std::cout << "ok: " << (rec.ok ? "yes" : "no")
                      << "  components: " << rec.built.contour.components.size()
                      << "  arcs: " << rec.disc.arcs.size()
                      << "  sup_diff: " << rec.supdiff.sup_diff << " + slack "
                      << rec.supdiff.slack << "\n";
            if (!rec.ok) std::cout << "failure: " << rec.failure_stage << "\n";
        }
        return rec.ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
