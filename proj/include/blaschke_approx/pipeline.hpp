#pragma once
#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/discretize.hpp"
#include "blaschke_approx/harmonic.hpp"
#include "blaschke_approx/io.hpp"
#include "blaschke_approx/split.hpp"
#include "blaschke_approx/verify.hpp"

#include <map>
#include <string>

namespace blaschke_approx {

struct RunConfig {
    std::string input_path;  // zero-set file; empty when generator is set
    std::string generator;   // generator spec (see generators.hpp)
    double epsilon = 0.25;
    int N = 4;
    double contour_k = 0.0;    // 0: K = 2N; otherwise the construction radius is set directly
    double mesh = 0.1;
    int d_max = 16;
    int walks_per_source = 100000;
    std::uint64_t seed = 1;
    std::string out_dir;
    bool render = false;
    int workers = 0;
    int conclusion_samples = 300;
    int telescoping_points = 20;
    double telescoping_gate = 0.02;
    int mean_value_points = 10;
};

RunConfig config_from_file(const std::string& path); // flat key=value lines
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

struct MeanValueSummary {
    int points = 0;
    double max_residual = 0.0;
    double max_allowance = 0.0; // largest 0.01|log B1| + 3 sigma over the samples
    bool ok = true;
};

struct PipelineRecord {
    RunConfig config;
    bool ok = false;
    std::string failure_stage; // empty on success

    int degree = 0;
    int distinct_zeros = 0;

    ContourBuildResult built;
    ContourConclusions conclusions;
    SplitResult split;
    std::map<int, BoundaryMeasure> measures;
    DiscretizationResult disc;
    BlaschkeProduct approximant; // I = I1 * B2
    SupDiffReport supdiff;
    InterpolationReport interp_odd, interp_even, interp_b2;
    DeltaFloorReport floor_check;
    TelescopingCheck telescoping;
    MeanValueSummary mean_value;

    std::map<std::string, double> timings; // seconds per stage
    std::uint64_t hash = 0;

    Json to_json() const;
};

// Full pipeline: contour -> split -> harmonic measures -> discretize ->
// verify; writes the stage files, record and summary into out_dir when set.
PipelineRecord run_pipeline(const BlaschkeProduct& B, const RunConfig& cfg);
PipelineRecord run_pipeline(const RunConfig& cfg); // loads or generates the input

void write_outputs(const PipelineRecord& rec, const BlaschkeProduct& B);

} // namespace blaschke_approx
