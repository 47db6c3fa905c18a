#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/dyadic.hpp"
#include "blaschke_approx/net_eval.hpp"
#include "blaschke_approx/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace blaschke_approx {

struct ContourParams {
    double epsilon = 0.25;
    double K = 2.0;
    double delta = 0.0; // adapted, final value
    int N = 1;          // dyadic margin; pipeline couples K = 2N
    double mesh = 0.1;
    int d_max = 16;
};

enum class SquareKind { Good, Bad, Neutral };

struct ClassifiedSquare {
    DyadicSquare square;
    SquareKind kind = SquareKind::Neutral;
    double sup_estimate = 0.0;
};

enum class Location { Interior, Boundary, Exterior };

// One closed boundary curve, positively oriented with the interior on its
// left, edges ordered along the curve starting from the anchor (the boundary
// point of minimal angle, ties broken by minimal radius).
struct Component {
    int id = 0;
    std::vector<Edge> edges;
    std::vector<double> cum_len; // cumulative euclidean length after each edge
    double arclength = 0.0;
    double signed_area = 0.0;
    DiskPoint anchor;
    double diameter = 0.0;

    DiskPoint point_at_arclength(double s) const;
    // euclidean distance to the curve; optionally reports the arclength
    // position of the nearest boundary point (ties resolve to the lower one)
    double euclid_dist(const DiskPoint& z, double* s_nearest = nullptr) const;
    // hyperbolic distance to the curve (mesh-0.05 scan + golden section)
    double hyp_dist_to_boundary(const DiskPoint& z) const;
    Location locate(const DiskPoint& z) const;
    bool interior_contains(const DiskPoint& z) const { return locate(z) == Location::Interior; }

    void finalize(); // orders edges from the anchor, fills caches

  private:
    std::vector<std::vector<int>> buckets_; // angular buckets over edge indices
};

struct ScalingRow {
    DyadicSquare good;
    double sum_bad_sides = 0.0; // sum of l(Q) over selected maximal bad children
    bool ok = true;
};

struct BadRegionRow {
    DyadicSquare bad;
    double boundary_length = 0.0; // |∂R(Q)|, euclidean
    int good_children = 0;
};

struct Contour {
    std::vector<Component> components;
    ContourParams params;
    bool empty() const { return components.empty(); }
};

struct ContourBuildResult {
    Contour contour;
    double delta = 0.0;
    int delta_halvings = 0;
    std::vector<ClassifiedSquare> selected_bad;
    std::vector<ClassifiedSquare> selected_good;
    std::vector<ScalingRow> scaling;
    std::vector<BadRegionRow> regions;
    int dropped_inner_cycles = 0;
    std::size_t net_points = 0;
};

struct ContourOptions {
    double mesh = 0.1;
    int d_max = 16;
    int workers = 0;
    double delta_min = 1e-12;
};

// Corona-style construction: alternates maximal bad / maximal good dyadic
// squares starting from the whole disk, extracts the regions of the selected
// bad squares, and merges them into boundary components. delta starts at
// epsilon/4 and is halved until every selected good square satisfies the
// scaling estimate sum l(bad children) <= l(good)/2.
ContourBuildResult build_contour(const BlaschkeProduct& B, double epsilon, int N,
                                 const ContourOptions& opts = {});
// Same construction with a directly chosen neighborhood radius K.
ContourBuildResult build_contour_with_k(const BlaschkeProduct& B, double epsilon, double K,
                                        int N, const ContourOptions& opts = {});

// Classification of one square against thresholds (delta, epsilon) at
// neighborhood radius params.K, using a shared net evaluation.
ClassifiedSquare classify(const NetEvaluation& eval, const DyadicSquare& q,
                          const ContourParams& params);

// min over components of the hyperbolic distance to the curve; +infinity for
// an empty contour.
double dist_to_contour(const DiskPoint& z, const Contour& c);

bool point_in_interior(const DiskPoint& z, const Component& c);

// hyperbolic distance from z to the union of the closed interiors (0 inside).
double dist_to_interiors(const DiskPoint& z, const Contour& c);

// ---- Carleson norms ------------------------------------------------------

struct MassAtom {
    enum class Kind { Point, ArcPiece, RadialPiece };
    Kind kind = Kind::Point;
    double mass = 0.0;   // for pieces, filled from their length if <= 0
    DiskPoint point;     // Point
    double radius = 0.0; // ArcPiece: circle radius
    double th_lo = 0.0, th_hi = 0.0;
    double angle = 0.0;  // RadialPiece: fixed angle
    double r_lo = 0.0, r_hi = 0.0;
};

struct CarlesonNormResult {
    double dyadic_sup = 0.0;  // max over dyadic squares of mu(Q)/l(Q), closed squares
    double norm_bound = 0.0;  // 4 * dyadic_sup, an upper bound over all Carleson squares
    DyadicSquare argmax{1, 0};
};

CarlesonNormResult carleson_norm(const std::vector<MassAtom>& atoms, int d_max);

// Exact dyadic accounting of arclength restricted to the contour.
CarlesonNormResult carleson_norm_arclength(const Contour& c, int d_max);

} // namespace blaschke_approx
