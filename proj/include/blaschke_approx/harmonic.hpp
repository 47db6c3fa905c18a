#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace blaschke_approx {

struct WeightedSource {
    DiskPoint position;
    int multiplicity = 1;
};

struct HarmonicDomain {
    const Component* boundary = nullptr;
    std::vector<WeightedSource> sources; // strictly interior
};

struct MeasureConfig {
    int walks_per_source = 100000;
    std::uint64_t seed = 1;
    double exit_tol_factor = 1e-6; // times the component diameter
    int workers = 0;
    int min_bins = 1024;
    double max_bin_width = 0.01;
    int bins_per_unit_mass = 8; // extra refinement for heavily loaded components
    int max_bins = 1 << 17;
    int max_steps = 100000;
};

// Discretized exit distribution along the component, binned by arclength from
// the anchor. Total mass is renormalized to the integer source count.
struct BoundaryMeasure {
    int component_id = 0;
    std::vector<double> bin_edges;  // size bins()+1
    std::vector<double> bin_masses; // size bins()
    double total = 0.0;
    double pre_renorm_total = 0.0;
    double renorm_factor = 1.0;
    double stat_error = 0.0; // standard error of the total (0: every walk exits)
    std::uint64_t seed = 0;
    int walks_per_source = 0;
    double sum_sq_multiplicity = 0.0;
    long stuck_walks = 0;
    std::string method = "monte_carlo";

    std::size_t bins() const { return bin_masses.size(); }
    double bin_width() const;
    double length() const { return bin_edges.empty() ? 0.0 : bin_edges.back(); }
    // cumulative mass with in-bin linear interpolation
    double mass_up_to(double s) const;
};

// Brownian exit distribution of the interior, summed over the sources with
// multiplicity weights: walk-on-spheres with euclidean steps, exit tolerance
// exit_tol_factor * diameter. Deterministic for fixed (seed, workers).
BoundaryMeasure harmonic_measure(const HarmonicDomain& dom, const MeasureConfig& cfg);

// Quadrature of f over the measure restricted to arclength [s_lo, s_hi):
// per-bin midpoint rule, partial bins evaluated at the partial midpoint.
double measure_integrate(const BoundaryMeasure& mu, const Component& comp, double s_lo,
                         double s_hi, const std::function<double(const DiskPoint&)>& f);

// Standard error estimate of measure_integrate over the whole curve for a
// boundary function with the given per-bin values.
double quadrature_stat_error(const BoundaryMeasure& mu, const std::vector<double>& f_bins);

// |log|B1_i(z)| - ∫ log rho(z, .) dmu| for z strictly outside the closed
// component; the primary end-to-end oracle for the measure.
double mean_value_check(const BlaschkeProduct& b1_component, const BoundaryMeasure& mu,
                        const Component& comp, const DiskPoint& z);

} // namespace blaschke_approx
