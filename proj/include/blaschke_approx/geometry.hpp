#pragma once
#include <complex>
#include <cstdint>
#include <vector>

namespace blaschke_approx {

using Complex = std::complex<double>;

/// A point strictly inside the unit disk.
struct DiskPoint {
    double re = 0.0;
    double im = 0.0;

    Complex c() const { return {re, im}; }
    double abs2() const { return re * re + im * im; }
    double abs() const;
    double angle() const; // in [0, 2*pi)
};

/// Validating constructor; throws std::domain_error unless re^2+im^2 < 1.
DiskPoint make_disk_point(double re, double im);
DiskPoint make_disk_point(Complex z);

double artanh(double x);

/// rho(z,w) = |(z-w)/(1 - conj(w) z)|, in [0,1).
double pseudo_dist(const DiskPoint& z, const DiskPoint& w);

/// beta(z,w) = artanh(rho(z,w)) = (1/2) log((1+rho)/(1-rho)).
double hyp_dist(const DiskPoint& z, const DiskPoint& w);

/// Disk automorphism phi_a(z) = (a - z)/(1 - conj(a) z); sends a to 0 and
/// preserves pseudo_dist/hyp_dist.
DiskPoint mobius_to_origin(const DiskPoint& a, const DiskPoint& z);

// Net of points on concentric circles with artanh-radius spacing `mesh` and
// along-circle spacing at most `mesh` of hyperbolic arclength. Every z with
// 1-|z| >= 2^-depth_limit is within hyperbolic distance `mesh` of a net point.
// Angular counts are powers of two so that halving the mesh exactly doubles
// each circle's count.
struct HyperbolicNet {
    struct Circle {
        double t;             // artanh of the radius
        double radius;
        std::uint64_t count;  // points on this circle (power of two, or 1 at the origin)
        std::size_t offset;   // index of the circle's first point
    };

    double mesh = 0.0;
    int depth_limit = 0;
    std::vector<Circle> circles;
    std::size_t total = 0;

    std::size_t size() const { return total; }
    DiskPoint point(std::size_t circle_idx, std::uint64_t k) const;
    DiskPoint point(std::size_t flat_index) const;
    // circle index of a flat index
    std::size_t circle_of(std::size_t flat_index) const;
};

HyperbolicNet build_net(double mesh, int depth_limit);

} // namespace blaschke_approx
