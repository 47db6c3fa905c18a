#pragma once
#include "blaschke_approx/geometry.hpp"

#include <vector>

namespace blaschke_approx {

// Finite Blaschke product  B(z) = e^{i*const} * z^m * prod_n rho-factor(z_n).
// Zeros are stored as distinct positions with multiplicities; the z^m factor
// is kept separately.
struct BlaschkeProduct {
    int origin_multiplicity = 0;
    struct Zero {
        DiskPoint position;
        int multiplicity = 1;
    };
    std::vector<Zero> zeros;         // all positions nonzero, strictly inside the disk
    double unimodular_angle = 0.0;   // in [0, 2*pi); irrelevant to the modulus

    int degree() const;              // m + sum of multiplicities
    bool empty() const { return origin_multiplicity == 0 && zeros.empty(); }
    // flattened zero list including the origin factor (with multiplicities)
    std::vector<Zero> all_zeros_with_origin() const;
};

BlaschkeProduct make_product(std::vector<BlaschkeProduct::Zero> zeros,
                             int origin_multiplicity = 0,
                             double unimodular_angle = 0.0);

// Convenience for tests: one simple zero per listed point.
BlaschkeProduct product_from_points(const std::vector<DiskPoint>& points);

// |B(z)| = |z|^m * prod rho(z, z_n)^mult. For more than 32 zeros the value is
// computed in log space to avoid underflow near zero clusters.
double eval_modulus(const BlaschkeProduct& B, const DiskPoint& z);

// log|B(z)| = m log|z| + sum mult * log rho(z, z_n); returns -infinity when z
// coincides with a zero.
double log_modulus(const BlaschkeProduct& B, const DiskPoint& z);

// Product-space evaluation with explicit exponent tracking; algebraically the
// same value as exp(log_modulus) but along an independent code path. Used for
// bulk net sweeps.
double eval_modulus_stable(const BlaschkeProduct& B, const DiskPoint& z);

BlaschkeProduct multiply(const BlaschkeProduct& a, const BlaschkeProduct& b);

// Max of |B| over a coarse hyperbolic lattice inside the ball
// beta(., center) <= radius, scanned nearest-first with early exit once the
// threshold is exceeded. Full balls of large radius are far too big to
// enumerate at net resolution; the lattice step trades coverage for cost.
struct BallProbe {
    double best = 0.0;
    DiskPoint argmax;
    double dist = 0.0;   // beta(argmax, center)
    bool exceeded = false;
};
BallProbe probe_ball(const BlaschkeProduct& B, const DiskPoint& center, double radius,
                     double stop_above, double step = 0.5);

} // namespace blaschke_approx
