#pragma once
#include "blaschke_approx/dyadic.hpp"
#include "blaschke_approx/geometry.hpp"

#include <cstdint>
#include <vector>

namespace blaschke_approx {

// Open polar rectangle with dyadic bounds:
//   r in (1 - 2^-base_level, 1 - 2^-top_level), theta in (a_lo, a_lo + a_len).
// All region geometry is exact in (Angle64, level) integer coordinates.
struct PolarRect {
    Angle64 a_lo = 0;
    std::uint64_t a_len = 0; // never a full turn
    int base_level = 0;      // < top_level
    int top_level = 0;
    int region_id = 0;       // which construction region produced it
};

// Oriented boundary edge of a union of polar rectangles. Radial edges run
// along fixed dyadic angles, arc edges along fixed dyadic radii.
struct Edge {
    enum class Kind { Radial, Arc };
    Kind kind = Kind::Arc;

    // radial: fixed angle, levels lev_from -> lev_to (different)
    Angle64 angle = 0;
    int lev_from = 0, lev_to = 0;

    // arc: fixed level, from angle a_from, length a_len, dir = +1 (ccw) / -1
    int level = 0;
    Angle64 a_from = 0;
    std::uint64_t a_len = 0;
    int dir = +1;

    double radius() const;             // arc radius or radial edge's radius at u (unused for radial)
    double theta() const;              // radial edge angle
    double euclid_length() const;
    double hyp_length() const;
    DiskPoint point_at(double u) const;       // u in [0,1] along orientation
    double euclid_dist(const DiskPoint& z) const;     // distance to the segment/arc
    double euclid_dist(const DiskPoint& z, double* u_nearest) const;
};

struct Cycle {
    std::vector<Edge> edges; // closed, interior on the left
    double signed_area = 0;  // disk area, positive for ccw outer boundaries
    int component = -1;      // connectivity class of the generating rectangles
};

struct RegionExtraction {
    std::vector<Cycle> cycles;
    int n_components = 0;
};

// Boundary of the regularized union of the rectangles (shared edges between
// touching rectangles are interior and cancel). Rectangle interiors must be
// pairwise disjoint.
RegionExtraction extract_boundaries(const std::vector<PolarRect>& rects);

} // namespace blaschke_approx
