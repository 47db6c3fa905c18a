#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"

#include <optional>
#include <vector>

namespace blaschke_approx {

struct ZeroAssignment {
    DiskPoint position;
    int multiplicity = 1;
    bool is_origin = false;
    int component = -1;       // interior component when deep, else -1
    double dist_to_contour = 0.0;
    bool deep = false;        // in some interior at hyperbolic distance > 1
};

struct Witness {
    DiskPoint zero;
    bool found = false;
    DiskPoint point;     // where |B2| > delta
    double value = 0.0;  // |B2| there
    double dist = 0.0;   // beta(point, zero)
};

struct SplitResult {
    BlaschkeProduct b1; // zeros deep inside some component
    BlaschkeProduct b2; // everything else
    std::vector<ZeroAssignment> assignments;
    std::vector<Witness> witnesses; // one per distinct b2 zero
    double witness_coverage = 1.0;  // fraction of b2 zeros with a witness
};

struct SplitOptions {
    double witness_radius = 0.0; // 0: use 2N + 15
    double probe_step = 0.5;     // hyperbolic step of the witness probe
    int workers = 0;
};

// B1 takes the zeros lying in the interior of some component at hyperbolic
// distance more than 1 from the whole contour; B2 takes the rest. For each B2
// zero a witness point w with beta(w, zero) <= 2N+15 and |B2(w)| > delta is
// searched along a coarse local probe net, radially first.
SplitResult split_by_contour(const BlaschkeProduct& B, const Contour& contour, double delta,
                             int N, const SplitOptions& opts = {});

} // namespace blaschke_approx
