#include "blaschke_approx/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blaschke_approx {

std::vector<double> split_component(const Component& comp, const BoundaryMeasure& mu) {
    (void)comp;
    double M_real = mu.total;
    long M = std::lround(M_real);
    if (std::fabs(M_real - static_cast<double>(M)) > 1e-9)
        throw std::invalid_argument("measure total is not an integer");
    std::vector<double> cuts;
    if (M <= 0) return cuts;
    cuts.reserve(static_cast<std::size_t>(M) - 1);
    double w = mu.bin_width();
    double cum = 0.0;
    std::size_t b = 0;
    for (long k = 1; k < M; ++k) {
        double target = static_cast<double>(k);
        while (b < mu.bins() && cum + mu.bin_masses[b] < target) {
            cum += mu.bin_masses[b];
            ++b;
        }
        if (b >= mu.bins()) {
            cuts.push_back(mu.length());
            continue;
        }
        double frac = (target - cum) / mu.bin_masses[b];
        cuts.push_back(mu.bin_edges[b] + frac * w);
    }
    return cuts;
}

namespace {

// pieces of [s_lo, s_hi) split at edge boundaries, with 1-r^2 monotone on each
struct Piece {
    double a, b; // arclength span
};

std::vector<Piece> arc_pieces(const Component& comp, double s_lo, double s_hi) {
    std::vector<Piece> out;
    double prev = s_lo;
    for (double c : comp.cum_len) {
        if (c <= s_lo || c >= s_hi) continue;
        out.push_back({prev, c});
        prev = c;
    }
    out.push_back({prev, s_hi});
    return out;
}

double one_minus_r2(const Component& comp, double s) {
    double r = comp.point_at_arclength(s).abs();
    return 1.0 - r * r;
}

} // namespace

DiskPoint place_zero(const Component& comp, const BoundaryMeasure& mu, double s_lo, double s_hi,
                     double* moment_target, double* moment_residual) {
    double target = measure_integrate(mu, comp, s_lo, s_hi, [](const DiskPoint& xi) {
        return 1.0 - xi.abs2();
    });
    if (moment_target) *moment_target = target;

    auto pieces = arc_pieces(comp, s_lo, s_hi);
    const double tol = 1e-10 * comp.arclength;
    double best_s = s_lo;
    double best_err = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) {
        double ga = one_minus_r2(comp, p.a);
        double gb = one_minus_r2(comp, p.b);
        if (ga == target) { // includes the constant-on-arc case: take the start
            best_s = p.a;
            best_err = 0.0;
            break;
        }
        if ((ga - target) * (gb - target) <= 0.0) {
            double lo = p.a, hi = p.b;
            double glo = ga;
            while (hi - lo > tol) {
                double mid = 0.5 * (lo + hi);
                double gm = one_minus_r2(comp, mid);
                if ((glo - target) * (gm - target) <= 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    glo = gm;
                }
            }
            double err_lo = std::fabs(one_minus_r2(comp, lo) - target);
            double err_hi = std::fabs(one_minus_r2(comp, hi) - target);
            best_s = err_lo <= err_hi ? lo : hi;
            best_err = std::min(err_lo, err_hi);
            break;
        }
        double err = std::min(std::fabs(ga - target), std::fabs(gb - target));
        if (err < best_err) {
            best_err = err;
            best_s = std::fabs(ga - target) <= std::fabs(gb - target) ? p.a : p.b;
        }
    }
    DiskPoint xi = comp.point_at_arclength(best_s);
    if (moment_residual) *moment_residual = std::fabs((1.0 - xi.abs2()) - target);
    return xi;
}

double arc_hyp_length(const Component& comp, double s_lo, double s_hi) {
    double acc = 0.0;
    for (const auto& p : arc_pieces(comp, s_lo, s_hi)) {
        double ra = comp.point_at_arclength(p.a).abs();
        double rb = comp.point_at_arclength(p.b).abs();
        if (std::fabs(rb - ra) > 1e-15) {
            acc += std::fabs(artanh(rb) - artanh(ra)); // radial piece
        } else {
            double r = 0.5 * (ra + rb);
            acc += (p.b - p.a) / (1.0 - r * r); // circular piece
        }
    }
    return acc;
}

LogValue length_floor(double delta, double K) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0,1)");
    double exponent = 2.0 * std::exp(2.0 * (K + 14.0));
    LogValue v;
    v.log_value = exponent * std::log(delta);
    v.value = std::exp(v.log_value);
    return v;
}

DiscretizationResult discretize(const Contour& contour,
                                const std::map<int, BoundaryMeasure>& measures) {
    DiscretizationResult out;
    out.length_floor = length_floor(contour.params.delta > 0 ? contour.params.delta : 0.5,
                                    contour.params.K);
    out.min_hyp_length = std::numeric_limits<double>::infinity();

    for (const auto& comp : contour.components) {
        auto it = measures.find(comp.id);
        if (it == measures.end()) continue;
        const BoundaryMeasure& mu = it->second;
        if (mu.total < 0.5) continue;

        auto cuts = split_component(comp, mu);
        std::vector<double> bounds;
        bounds.push_back(0.0);
        for (double c : cuts) bounds.push_back(c);
        bounds.push_back(comp.arclength);

        for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
            ArcSegment arc;
            arc.component_id = comp.id;
            arc.k = static_cast<int>(k) + 1;
            arc.s_lo = bounds[k];
            arc.s_hi = bounds[k + 1];
            arc.mass = mu.mass_up_to(arc.s_hi) - mu.mass_up_to(arc.s_lo);
            arc.hyp_length = arc_hyp_length(comp, arc.s_lo, arc.s_hi);
            arc.placed_zero = place_zero(comp, mu, arc.s_lo, arc.s_hi, &arc.moment_target,
                                         &arc.moment_residual);
            out.min_hyp_length = std::min(out.min_hyp_length, arc.hyp_length);
            double rel = arc.moment_residual / std::max(arc.moment_target, 1e-300);
            out.max_moment_residual_rel = std::max(out.max_moment_residual_rel, rel);

            BlaschkeProduct::Zero z{arc.placed_zero, 1};
            out.i1.zeros.push_back(z);
            if (arc.k % 2 == 1)
                out.i1_odd.zeros.push_back(z);
            else
                out.i1_even.zeros.push_back(z);
            out.arcs.push_back(arc);
        }
    }
    if (out.arcs.empty()) out.min_hyp_length = 0.0;
    return out;
}

} // namespace blaschke_approx
