#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/discretize.hpp"
#include "blaschke_approx/harmonic.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace blaschke_approx {

struct InterpolationReport {
    double separation = 1.0; // inf over distinct pairs of rho; 1 when fewer than 2 zeros
    double carleson_dyadic_sup = 0.0;
    double carleson_norm = 0.0; // 4 x dyadic sup of sum (1-|z|) point masses
    long pairs_examined = 0;
};

InterpolationReport interpolation_report(const std::vector<BlaschkeProduct::Zero>& zeros,
                                         int d_max);

struct SupDiffReport {
    double sup_diff = 0.0;
    double mesh = 0.0;
    double slack = 0.0; // 2 tanh(mesh)
    DiskPoint argmax;
    int tail_depth = 0;       // circle at 1-r = 2^-tail_depth
    double tail_floor = 1.0;  // min(|B|, |I|) there
    double tail_bound = 0.0;  // 1 - tail_floor
    bool tail_certified = false; // no zeros of either product beyond the tail circle
    bool identical = false;      // same zero multiset: diff is identically zero
};

// max over the net of ||B|-|I||; the true sup over the covered region exceeds
// it by at most 2 tanh(mesh). Beyond depth tail_depth = d_max+2 the minimum
// principle for log|.| bounds the difference by 1 - tail_floor when neither
// product has zeros that deep.
SupDiffReport sup_modulus_diff(const BlaschkeProduct& B, const BlaschkeProduct& I,
                               const HyperbolicNet& net, int d_max, int workers = 0);

struct ArcClassEntry {
    int arc_index = 0;
    int cls = 0;      // 0 = boundary class, 1 = short, 2 = long
    int dilation = 0; // first n with the arc inside 2^n Q_z (N for class 0)
    double h = 0.0;   // H_{i,k}(z)
};

struct ArcClassDiagnostics {
    DiskPoint z;
    CarlesonSquare q_z;
    std::vector<ArcClassEntry> entries;
    int n_boundary = 0, n_short = 0, n_long = 0;
    double e_boundary = 0.0, e_short = 0.0, e_long = 0.0; // |class sums|
    double total = 0.0;    // sum of all H_{i,k}(z)
    double direct = 0.0;   // log|B1(z)| - log|I1(z)|
    double residual = 0.0; // |total - direct|
};

// Classifies every arc against the dilated squares 2^n Q_z and evaluates the
// decomposition of log|B1| - log|I1| into per-arc terms by bin quadrature.
// Requires beta(z, interiors) >= 2N.
ArcClassDiagnostics arc_class_diagnostics(const DiskPoint& z, const DiscretizationResult& disc,
                                          const std::map<int, BoundaryMeasure>& measures,
                                          const Contour& contour, const BlaschkeProduct& b1,
                                          int N);

struct DeltaFloorReport {
    double min_modulus = 1.0; // min |B1| over sampled contour points
    double log_min = 0.0;
    LogValue floor;
    bool ok = true;
    long samples = 0;
};

DeltaFloorReport delta_floor_check(const BlaschkeProduct& b1, const Contour& contour);

struct ContourConclusions {
    // (a) |B| <= epsilon + tanh(mesh) on sampled points of Omega_K(interiors)
    int samples_a = 0;
    double max_mod_near = 0.0;
    bool ok_a = true;
    // (b) for sampled exterior points, a probe over the K+14 ball finds |B| > delta
    int samples_b = 0;
    double min_ball_sup = 1.0;
    bool ok_b = true;
    double radius_b = 0.0;
    // (c) arclength Carleson norm
    CarlesonNormResult norm;
    bool ok_c = true;
    // (d) scaling rows from the build
    bool ok_scaling = true;
    // per-region boundary bound |dR(Q)| <= 17 l(Q)
    bool ok_boundary_17 = true;
    double max_boundary_ratio = 0.0;
};

ContourConclusions verify_contour_conclusions(const BlaschkeProduct& B,
                                              const ContourBuildResult& built, int samples,
                                              std::uint64_t seed);

struct TelescopingCheck {
    int n_points = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double gate = 0.02;
    bool ok = true;
};

// total-vs-direct residual of the arc decomposition on sampled admissible
// points (beta(z, interiors) >= min_beta, pushed a few units further out so
// the Monte-Carlo noise of the measure stays inside the gate).
TelescopingCheck telescoping_check(const BlaschkeProduct& b1, const DiscretizationResult& disc,
                                   const std::map<int, BoundaryMeasure>& measures,
                                   const Contour& contour, int N, int n_points, double gate,
                                   std::uint64_t seed);

} // namespace blaschke_approx
