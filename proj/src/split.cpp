#include "blaschke_approx/split.hpp"
#include "blaschke_approx/parallel.hpp"

#include <cmath>

namespace blaschke_approx {

namespace {

Witness search_witness(const BlaschkeProduct& b2, const DiskPoint& zero, double delta,
                       double radius, double step) {
    Witness w;
    w.zero = zero;
    BallProbe probe = probe_ball(b2, zero, radius, delta, step);
    if (probe.exceeded) {
        w.found = true;
        w.point = probe.argmax;
        w.value = probe.best;
        w.dist = probe.dist;
    }
    return w;
}

} // namespace

SplitResult split_by_contour(const BlaschkeProduct& B, const Contour& contour, double delta,
                             int N, const SplitOptions& opts) {
    SplitResult out;
    out.b1.unimodular_angle = B.unimodular_angle;

    auto classify_zero = [&](const DiskPoint& p, int mult, bool is_origin) {
        ZeroAssignment a;
        a.position = p;
        a.multiplicity = mult;
        a.is_origin = is_origin;
        a.dist_to_contour = dist_to_contour(p, contour);
        for (const auto& comp : contour.components) {
            if (comp.locate(p) == Location::Interior) {
                a.component = comp.id;
                break;
            }
        }
        a.deep = a.component >= 0 && a.dist_to_contour > 1.0;
        out.assignments.push_back(a);
        return a.deep;
    };

    if (B.origin_multiplicity > 0) {
        if (classify_zero(DiskPoint{0.0, 0.0}, B.origin_multiplicity, true))
            out.b1.origin_multiplicity = B.origin_multiplicity;
        else
            out.b2.origin_multiplicity = B.origin_multiplicity;
    }
    for (const auto& z : B.zeros) {
        if (classify_zero(z.position, z.multiplicity, false))
            out.b1.zeros.push_back(z);
        else
            out.b2.zeros.push_back(z);
    }

    double radius = opts.witness_radius > 0 ? opts.witness_radius : 2.0 * N + 15.0;
    std::vector<DiskPoint> probes;
    if (out.b2.origin_multiplicity > 0) probes.push_back(DiskPoint{0.0, 0.0});
    for (const auto& z : out.b2.zeros) probes.push_back(z.position);
    out.witnesses.resize(probes.size());
    parallel_for(probes.size(), opts.workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out.witnesses[i] = search_witness(out.b2, probes[i], delta, radius, opts.probe_step);
    });
    std::size_t found = 0;
    for (const auto& w : out.witnesses)
        if (w.found) ++found;
    out.witness_coverage =
        probes.empty() ? 1.0 : static_cast<double>(found) / static_cast<double>(probes.size());
    return out;
}

} // namespace blaschke_approx
