#pragma once
#include "blaschke_approx/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace blaschke_approx {

// Angles are carried as 64-bit fixed-point fractions of a full turn, so all
// dyadic grid geometry is exact integer arithmetic.
using Angle64 = std::uint64_t;

Angle64 to_angle64(double theta);
double from_angle64(Angle64 a);

// Dyadic Carleson square Q_{n,j} = { r e^{i theta} : 1 - 2^-n < r < 1,
//   2 pi j 2^-n < theta < 2 pi (j+1) 2^-n },  n >= 1, 0 <= j < 2^n.
struct DyadicSquare {
    int level = 1;
    std::uint64_t index = 0;

    double side() const;          // 2^-n
    double inner_radius() const;  // 1 - 2^-n
    Angle64 angle_lo() const;     // exact
    Angle64 angle_width() const;
    double theta_lo() const;
    double theta_hi() const;
    // representative point in the middle of the top half
    DiskPoint top_center() const;

    bool contains(const DiskPoint& z) const;
    bool top_half_contains(const DiskPoint& z) const;

    std::array<DyadicSquare, 2> children() const;
    std::optional<DyadicSquare> parent() const;

    friend bool operator==(const DyadicSquare&, const DyadicSquare&) = default;
};

// The square whose top half contains z, when 1-|z| < 1/2; top halves tile the
// disk outside |z| <= 1/2 (up to grid lines).
std::optional<DyadicSquare> home_square(const DiskPoint& z, int max_level = 62);

// Polar box in (t, theta) coordinates with t = artanh(r); used as the region
// descriptor for top halves and synthetic regions.
struct PolarBox {
    double t_lo = 0.0, t_hi = 0.0;
    double theta_lo = 0.0, theta_hi = 0.0; // theta_hi > theta_lo, width <= 2*pi

    bool contains(const DiskPoint& z) const;
    static PolarBox point(const DiskPoint& z);
};

PolarBox top_half_box(const DyadicSquare& q);

// Hyperbolic distance from a point to a polar box (0 when inside).
double dist_to_box(const DiskPoint& z, const PolarBox& box);

// General Carleson square of side l anchored at the boundary, used for the
// Carleson-norm definition and for the dilations 2^n Q_z.
struct CarlesonSquare {
    double center_angle = 0.0;
    double side = 0.0;

    bool whole_disk() const { return side >= 1.0; }
    bool contains(const DiskPoint& z) const;
};

// Carleson square with z as the midpoint of its top side: side 1-|z|.
CarlesonSquare square_of_point(const DiskPoint& z);
// Same center angle, side min(1, 2^n * side).
CarlesonSquare dilate(const CarlesonSquare& q, int n);

} // namespace blaschke_approx
