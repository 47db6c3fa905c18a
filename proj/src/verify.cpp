#include "blaschke_approx/verify.hpp"
#include "blaschke_approx/parallel.hpp"
#include "blaschke_approx/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blaschke_approx {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

InterpolationReport interpolation_report(const std::vector<BlaschkeProduct::Zero>& zeros,
                                         int d_max) {
    InterpolationReport rep;
    std::vector<MassAtom> atoms;
    atoms.reserve(zeros.size());
    for (const auto& z : zeros) {
        MassAtom a;
        a.kind = MassAtom::Kind::Point;
        a.point = z.position;
        a.mass = z.multiplicity * (1.0 - z.position.abs());
        atoms.push_back(a);
    }
    auto norm = carleson_norm(atoms, d_max);
    rep.carleson_dyadic_sup = norm.dyadic_sup;
    rep.carleson_norm = norm.norm_bound;

    double sep = 1.0;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (zeros[i].multiplicity > 1) sep = 0.0;
        for (std::size_t j = i + 1; j < zeros.size(); ++j) {
            sep = std::min(sep, pseudo_dist(zeros[i].position, zeros[j].position));
            ++rep.pairs_examined;
        }
    }
    rep.separation = sep;
    return rep;
}

SupDiffReport sup_modulus_diff(const BlaschkeProduct& B, const BlaschkeProduct& I,
                               const HyperbolicNet& net, int d_max, int workers) {
    SupDiffReport rep;
    rep.mesh = net.mesh;
    rep.slack = 2.0 * std::tanh(net.mesh);
    rep.tail_depth = d_max + 2;

    auto sorted_zeros = [](const BlaschkeProduct& p) {
        auto zs = p.all_zeros_with_origin();
        std::sort(zs.begin(), zs.end(), [](const auto& a, const auto& b) {
            if (a.position.re != b.position.re) return a.position.re < b.position.re;
            if (a.position.im != b.position.im) return a.position.im < b.position.im;
            return a.multiplicity < b.multiplicity;
        });
        return zs;
    };
    auto za = sorted_zeros(B), zb = sorted_zeros(I);
    rep.identical = za.size() == zb.size();
    if (rep.identical)
        for (std::size_t i = 0; i < za.size(); ++i)
            if (za[i].position.re != zb[i].position.re ||
                za[i].position.im != zb[i].position.im ||
                za[i].multiplicity != zb[i].multiplicity) {
                rep.identical = false;
                break;
            }

    if (!rep.identical) {
        if (workers <= 0) workers = default_workers();
        std::size_t n = net.size();
        std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(workers) * 4, n);
        if (chunks == 0) chunks = 1;
        std::vector<double> cmax(chunks, 0.0);
        std::vector<std::size_t> carg(chunks, 0);
        std::size_t per = (n + chunks - 1) / chunks;
        parallel_for(chunks, workers, [&](std::size_t c_lo, std::size_t c_hi) {
            for (std::size_t c = c_lo; c < c_hi; ++c) {
                std::size_t lo = c * per, hi = std::min(n, lo + per);
                double best = -1.0;
                std::size_t arg = lo;
                for (std::size_t i = lo; i < hi; ++i) {
                    DiskPoint p = net.point(i);
                    double d = std::fabs(eval_modulus_stable(B, p) - eval_modulus_stable(I, p));
                    if (d > best) {
                        best = d;
                        arg = i;
                    }
                }
                cmax[c] = best;
                carg[c] = arg;
            }
        });
        for (std::size_t c = 0; c < chunks; ++c) {
            if (cmax[c] > rep.sup_diff) {
                rep.sup_diff = cmax[c];
                rep.argmax = net.point(carg[c]);
            }
        }
    }

    double r_tail = 1.0 - std::ldexp(1.0, -rep.tail_depth);
    double floor_min = 1.0;
    const int n_ang = 4096;
    for (int k = 0; k < n_ang; ++k) {
        double th = 2.0 * M_PI * k / n_ang;
        DiskPoint p{r_tail * std::cos(th), r_tail * std::sin(th)};
        floor_min = std::min(floor_min, std::min(eval_modulus_stable(B, p),
                                                 eval_modulus_stable(I, p)));
    }
    rep.tail_floor = floor_min;
    rep.tail_bound = 1.0 - floor_min;
    double max_gap_needed = std::ldexp(1.0, -rep.tail_depth);
    rep.tail_certified = true;
    for (const auto& zs : {za, zb})
        for (const auto& z : zs)
            if (1.0 - z.position.abs() <= max_gap_needed) rep.tail_certified = false;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// a curve stretch lies in a Carleson square iff all its monotone pieces do;
// pieces are sampled at endpoints and midpoint
bool arc_in_square(const Component& comp, double s_lo, double s_hi, const CarlesonSquare& q) {
    if (q.whole_disk()) return true;
    double prev = s_lo;
    auto check = [&](double a, double b) {
        for (double s : {a, 0.5 * (a + b), b})
            if (!q.contains(comp.point_at_arclength(s))) return false;
        return true;
    };
    for (double c : comp.cum_len) {
        if (c <= s_lo || c >= s_hi) continue;
        if (!check(prev, c)) return false;
        prev = c;
    }
    return check(prev, s_hi);
}

} // namespace

ArcClassDiagnostics arc_class_diagnostics(const DiskPoint& z, const DiscretizationResult& disc,
                                          const std::map<int, BoundaryMeasure>& measures,
                                          const Contour& contour, const BlaschkeProduct& b1,
                                          int N) {
    double d = dist_to_interiors(z, contour);
    if (d < 2.0 * N - 1e-9)
        throw std::invalid_argument("diagnostics point too close to the contour");

    ArcClassDiagnostics out;
    out.z = z;
    out.q_z = square_of_point(z);

    double sum_b = 0.0, sum_s = 0.0, sum_l = 0.0, total = 0.0;
    for (std::size_t ai = 0; ai < disc.arcs.size(); ++ai) {
        const auto& arc = disc.arcs[ai];
        const Component& comp = contour.components.at(arc.component_id);
        const BoundaryMeasure& mu = measures.at(arc.component_id);

        double integral = measure_integrate(mu, comp, arc.s_lo, arc.s_hi, [&](const DiskPoint& xi) {
            return std::log(pseudo_dist(z, xi));
        });
        double h = integral - std::log(pseudo_dist(z, arc.placed_zero));

        ArcClassEntry entry;
        entry.arc_index = static_cast<int>(ai);
        entry.h = h;
        if (arc_in_square(comp, arc.s_lo, arc.s_hi, dilate(out.q_z, N))) {
            entry.cls = 0;
            entry.dilation = N;
            sum_b += h;
            ++out.n_boundary;
        } else {
            int n = N + 1;
            while (!arc_in_square(comp, arc.s_lo, arc.s_hi, dilate(out.q_z, n))) {
                ++n;
                if (n > 64) throw std::logic_error("arc escaped every dilation");
            }
            entry.dilation = n;
            if (arc.hyp_length < 1.0) {
                entry.cls = 1;
                sum_s += h;
                ++out.n_short;
            } else {
                entry.cls = 2;
                sum_l += h;
                ++out.n_long;
            }
        }
        total += h;
        out.entries.push_back(entry);
    }
    out.e_boundary = std::fabs(sum_b);
    out.e_short = std::fabs(sum_s);
    out.e_long = std::fabs(sum_l);
    out.total = total;
    double log_b1 = b1.empty() ? 0.0 : log_modulus(b1, z);
    double log_i1 = disc.i1.empty() ? 0.0 : log_modulus(disc.i1, z);
    out.direct = log_b1 - log_i1;
    out.residual = std::fabs(out.total - out.direct);
    return out;
}

DeltaFloorReport delta_floor_check(const BlaschkeProduct& b1, const Contour& contour) {
    DeltaFloorReport rep;
    rep.floor = length_floor(contour.params.delta > 0 ? contour.params.delta : 0.5,
                             contour.params.K);
    double min_mod = 1.0;
    for (const auto& comp : contour.components) {
        for (const auto& e : comp.edges) {
            int n = std::max(1, static_cast<int>(std::ceil(e.hyp_length() / 0.05)));
            n = std::min(n, 512);
            for (int k = 0; k <= n; ++k) {
                DiskPoint p = e.point_at(static_cast<double>(k) / n);
                min_mod = std::min(min_mod, b1.empty() ? 1.0 : eval_modulus_stable(b1, p));
                ++rep.samples;
            }
        }
    }
    rep.min_modulus = min_mod;
    rep.log_min = min_mod > 0 ? std::log(min_mod) : -kInf;
    rep.ok = rep.log_min >= rep.floor.log_value;
    return rep;
}

ContourConclusions verify_contour_conclusions(const BlaschkeProduct& B,
                                              const ContourBuildResult& built, int samples,
                                              std::uint64_t seed) {
    ContourConclusions out;
    const Contour& contour = built.contour;
    const ContourParams& p = contour.params;
    Xoshiro256 rng(derive_seed(seed, 0xC0C1));

    out.ok_scaling = true;
    for (const auto& row : built.scaling)
        if (!row.ok) out.ok_scaling = false;

    out.max_boundary_ratio = 0.0;
    for (const auto& row : built.regions) {
        double ratio = row.boundary_length / row.bad.side();
        out.max_boundary_ratio = std::max(out.max_boundary_ratio, ratio);
        if (ratio > 17.0 + 1e-9) out.ok_boundary_17 = false;
    }

    out.norm = carleson_norm_arclength(contour, p.d_max);
    out.ok_c = out.norm.norm_bound <= 68.0;
    out.radius_b = p.K + 14.0;

    if (!contour.empty()) {
        // (a): points within K of the interiors
        double gate = p.epsilon + std::tanh(p.mesh) + 1e-12;
        for (int i = 0; i < samples; ++i) {
            const Component& comp =
                contour.components[rng.below(contour.components.size())];
            double s = rng.uniform() * comp.arclength;
            DiskPoint bp = comp.point_at_arclength(s);
            DiskPoint w;
            if (i % 4 == 3) {
                // interior chord sample
                double s2 = rng.uniform() * comp.arclength;
                DiskPoint b2 = comp.point_at_arclength(s2);
                double lam = rng.uniform();
                w = DiskPoint{bp.re + lam * (b2.re - bp.re), bp.im + lam * (b2.im - bp.im)};
                if (comp.locate(w) != Location::Interior) continue;
            } else {
                double u = rng.uniform();
                double t = 0.5 * std::acosh(1.0 + u * (std::cosh(2.0 * p.K) - 1.0));
                double phi = 2.0 * M_PI * rng.uniform();
                double rr = std::tanh(t);
                DiskPoint zeta{rr * std::cos(phi), rr * std::sin(phi)};
                Complex num = bp.c() - zeta.c();
                Complex den = 1.0 - std::conj(bp.c()) * zeta.c();
                Complex wc = num / den;
                if (!(std::norm(wc) < 1.0)) continue;
                w = DiskPoint{wc.real(), wc.imag()};
            }
            ++out.samples_a;
            double v = eval_modulus_stable(B, w);
            out.max_mod_near = std::max(out.max_mod_near, v);
            if (v > gate) out.ok_a = false;
        }
    }

    // (b): exterior points see |B| > delta within K + 14
    double t_max = artanh(1.0 - std::ldexp(1.0, -p.d_max));
    int tries = 0;
    while (out.samples_b < samples && tries < samples * 50) {
        ++tries;
        double t = rng.uniform() * t_max;
        double th = 2.0 * M_PI * rng.uniform();
        double r = std::tanh(t);
        DiskPoint z{r * std::cos(th), r * std::sin(th)};
        bool exterior = true;
        for (const auto& comp : contour.components)
            if (comp.locate(z) != Location::Exterior) {
                exterior = false;
                break;
            }
        if (!exterior) continue;
        ++out.samples_b;
        BallProbe probe = probe_ball(B, z, out.radius_b, built.delta, 0.5);
        out.min_ball_sup = std::min(out.min_ball_sup, probe.best);
        if (!(probe.best > built.delta)) out.ok_b = false;
    }
    return out;
}

TelescopingCheck telescoping_check(const BlaschkeProduct& b1, const DiscretizationResult& disc,
                                   const std::map<int, BoundaryMeasure>& measures,
                                   const Contour& contour, int N, int n_points, double gate,
                                   std::uint64_t seed) {
    TelescopingCheck out;
    out.gate = gate;
    Xoshiro256 rng(derive_seed(seed, 0x7E1E));
    double sum = 0.0;
    int tries = 0;
    while (out.n_points < n_points && tries < n_points * 200) {
        ++tries;
        DiskPoint z;
        if (contour.empty()) {
            double t = rng.uniform() * 5.0;
            double th = 2.0 * M_PI * rng.uniform();
            double r = std::tanh(t);
            z = DiskPoint{r * std::cos(th), r * std::sin(th)};
        } else {
            const Component& comp =
                contour.components[rng.below(contour.components.size())];
            double s = rng.uniform() * comp.arclength;
            DiskPoint bp = comp.point_at_arclength(s);
            // push outward radially a few units past the admissibility radius
            double t = artanh(bp.abs()) + 2.0 * N + 2.0 + 3.0 * rng.uniform();
            double r = std::tanh(t);
            if (!(r < 1.0)) continue;
            z = DiskPoint{r * std::cos(bp.angle()), r * std::sin(bp.angle())};
            bool exterior = true;
            for (const auto& c : contour.components)
                if (c.locate(z) != Location::Exterior) {
                    exterior = false;
                    break;
                }
            if (!exterior || dist_to_interiors(z, contour) < 2.0 * N) continue;
        }
        auto diag = arc_class_diagnostics(z, disc, measures, contour, b1, N);
        out.max_residual = std::max(out.max_residual, diag.residual);
        sum += diag.residual;
        ++out.n_points;
    }
    out.mean_residual = out.n_points > 0 ? sum / out.n_points : 0.0;
    out.ok = out.max_residual <= gate;
    return out;
}

} // namespace blaschke_approx
