#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/harmonic.hpp"

#include <map>
#include <vector>

namespace blaschke_approx {

struct ArcSegment {
    int component_id = 0;
    int k = 0; // 1-based along the component from its anchor
    double s_lo = 0.0, s_hi = 0.0;
    double mass = 1.0;
    double hyp_length = 0.0;
    DiskPoint placed_zero;
    double moment_target = 0.0;   // right side of the placement identity
    double moment_residual = 0.0; // |(1-|xi|^2) - target|, absolute
};

struct LogValue {
    double log_value = 0.0;
    double value = 0.0; // exp(log_value), 0 when underflowed
};

struct DiscretizationResult {
    std::vector<ArcSegment> arcs;
    BlaschkeProduct i1, i1_odd, i1_even;
    LogValue length_floor;
    double min_hyp_length = 0.0;
    double max_moment_residual_rel = 0.0;
};

// Arclength cut positions splitting the component into unit-mass arcs: the
// M-1 solutions of cumulative mass = 1, ..., M-1 by in-bin linear
// interpolation. Empty when the measure carries no mass.
std::vector<double> split_component(const Component& comp, const BoundaryMeasure& mu);

// Smallest arclength s in [s_lo, s_hi) where 1-|xi(s)|^2 equals the unit-mass
// average of 1-|xi|^2 over the arc; existence by the intermediate value
// theorem, located by per-edge scan plus bisection.
DiskPoint place_zero(const Component& comp, const BoundaryMeasure& mu, double s_lo, double s_hi,
                     double* moment_target = nullptr, double* moment_residual = nullptr);

double arc_hyp_length(const Component& comp, double s_lo, double s_hi);

// delta^(2 e^(2 (K+14))), kept in log form; underflows to 0 for realistic
// parameters.
LogValue length_floor(double delta, double K);

// Full discretization over all components carrying mass: unit arcs, placed
// zeros, odd/even factorization by arc parity within each component.
DiscretizationResult discretize(const Contour& contour,
                                const std::map<int, BoundaryMeasure>& measures);

} // namespace blaschke_approx
