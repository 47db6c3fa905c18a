#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace blaschke_approx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double level_radius(int level) { return 1.0 - std::ldexp(1.0, -level); }

std::uint64_t square_key(const DyadicSquare& q) {
    return (static_cast<std::uint64_t>(q.level) << 57) | q.index;
}

// |B| over a coarse direct sample of a polar box (lower bound for the sup)
double direct_box_sup(const BlaschkeProduct& B, const PolarBox& box, double step) {
    int nt = box.t_hi > box.t_lo
                 ? std::min(8, 1 + static_cast<int>((box.t_hi - box.t_lo) / step))
                 : 1;
    int na = box.theta_hi > box.theta_lo ? 9 : 1;
    double best = 0.0;
    for (int i = 0; i < nt; ++i) {
        double t = nt == 1 ? box.t_lo : box.t_lo + (box.t_hi - box.t_lo) * i / (nt - 1);
        double r = std::tanh(t);
        for (int j = 0; j < na; ++j) {
            double th = na == 1 ? box.theta_lo
                                : box.theta_lo + (box.theta_hi - box.theta_lo) * j / (na - 1);
            best = std::max(best, eval_modulus_stable(B, DiskPoint{r * std::cos(th), r * std::sin(th)}));
        }
    }
    return best;
}

} // namespace

// ---------------------------------------------------------------------------
// Component
// ---------------------------------------------------------------------------

namespace {

struct ExactVertex {
    Angle64 a;
    int level;
};

ExactVertex edge_start(const Edge& e) {
    if (e.kind == Edge::Kind::Radial) return {e.angle, e.lev_from};
    return {e.a_from, e.level};
}

void reverse_cycle(std::vector<Edge>& edges) {
    std::reverse(edges.begin(), edges.end());
    for (auto& e : edges) {
        if (e.kind == Edge::Kind::Radial) {
            std::swap(e.lev_from, e.lev_to);
        } else {
            e.a_from = e.dir > 0 ? e.a_from + e.a_len : e.a_from - e.a_len;
            e.dir = -e.dir;
        }
    }
}

} // namespace

void Component::finalize() {
    if (edges.empty()) throw std::invalid_argument("component without edges");

    long double area2 = 0.0L;
    for (const auto& e : edges) {
        if (e.kind != Edge::Kind::Arc) continue;
        long double r = level_radius(e.level);
        long double sweep = static_cast<long double>(e.a_len) * (2.0L * M_PI) / 18446744073709551616.0L;
        area2 += r * r * sweep * e.dir;
    }
    if (area2 < 0) {
        reverse_cycle(edges);
        area2 = -area2;
    }
    signed_area = static_cast<double>(area2 / 2.0L);

    // rotate so the walk starts at the vertex of minimal angle (ties: minimal
    // radius, i.e. minimal level)
    std::size_t best = 0;
    ExactVertex bv = edge_start(edges[0]);
    for (std::size_t i = 1; i < edges.size(); ++i) {
        ExactVertex v = edge_start(edges[i]);
        if (v.a < bv.a || (v.a == bv.a && v.level < bv.level)) {
            bv = v;
            best = i;
        }
    }
    std::rotate(edges.begin(), edges.begin() + best, edges.end());
    anchor = edges.front().point_at(0.0);

    cum_len.resize(edges.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        acc += edges[i].euclid_length();
        cum_len[i] = acc;
    }
    arclength = acc;

    double xmin = 1, xmax = -1, ymin = 1, ymax = -1;
    for (const auto& e : edges) {
        for (double u : {0.0, 0.5, 1.0}) {
            DiskPoint p = e.point_at(u);
            xmin = std::min(xmin, p.re);
            xmax = std::max(xmax, p.re);
            ymin = std::min(ymin, p.im);
            ymax = std::max(ymax, p.im);
        }
    }
    diameter = std::hypot(xmax - xmin, ymax - ymin);

    const int nb = 256;
    buckets_.assign(nb, {});
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        auto bucket_of = [&](Angle64 a) {
            return static_cast<int>(a >> 56); // 2^56 = 2^64 / 256
        };
        if (e.kind == Edge::Kind::Radial) {
            buckets_[bucket_of(e.angle)].push_back(static_cast<int>(i));
        } else {
            Angle64 lo = e.dir > 0 ? e.a_from : e.a_from - e.a_len;
            int b0 = bucket_of(lo);
            auto span_buckets = static_cast<std::uint64_t>(e.a_len >> 56) + 2;
            span_buckets = std::min<std::uint64_t>(span_buckets, nb);
            for (std::uint64_t k = 0; k < span_buckets; ++k)
                buckets_[(b0 + k) % nb].push_back(static_cast<int>(i));
        }
    }
}

DiskPoint Component::point_at_arclength(double s) const {
    s = std::fmod(s, arclength);
    if (s < 0) s += arclength;
    auto it = std::lower_bound(cum_len.begin(), cum_len.end(), s);
    std::size_t i = static_cast<std::size_t>(it - cum_len.begin());
    if (i >= edges.size()) i = edges.size() - 1;
    double prev = i == 0 ? 0.0 : cum_len[i - 1];
    double len = cum_len[i] - prev;
    double u = len > 0 ? (s - prev) / len : 0.0;
    return edges[i].point_at(u);
}

double Component::euclid_dist(const DiskPoint& z, double* s_nearest) const {
    const int nb = static_cast<int>(buckets_.size());
    double bucket_width = 2.0 * M_PI / nb;
    int b0 = static_cast<int>(to_angle64(z.angle()) >> 56);
    double best = kInf, best_s = 0.0;
    double rz = z.abs();
    auto visit = [&](int b) {
        for (int i : buckets_[(b % nb + nb) % nb]) {
            double u;
            double d = edges[i].euclid_dist(z, &u);
            double prev = i == 0 ? 0.0 : cum_len[i - 1];
            double s = prev + u * (cum_len[i] - prev);
            if (d < best - 1e-15) {
                best = d;
                best_s = s;
            } else if (d <= best + 1e-15) { // tie: keep the lower arclength
                best = std::min(best, d);
                best_s = std::min(best_s, s);
            }
        }
    };
    // ring search with an angular lower bound
    for (int ring = 0; ring <= nb / 2 + 1; ++ring) {
        if (ring >= 2) {
            double gap = std::min((ring - 1) * bucket_width, M_PI / 2.0);
            if (rz * std::sin(gap) >= best) break;
        }
        if (ring == 0) {
            visit(b0);
        } else {
            visit(b0 + ring);
            if (2 * ring != nb) visit(b0 - ring);
        }
    }
    if (s_nearest) *s_nearest = best_s;
    return best;
}

double Component::hyp_dist_to_boundary(const DiskPoint& z) const {
    double tz = artanh(z.abs());
    struct Cand {
        double lb;
        int idx;
    };
    std::vector<Cand> cands;
    cands.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        double de = e.euclid_dist(z);
        double lb = artanh(std::min(de, 1.999999) / 2.0);
        double t1, t2;
        if (e.kind == Edge::Kind::Radial) {
            t1 = artanh(level_radius(std::min(e.lev_from, e.lev_to)));
            t2 = artanh(level_radius(std::max(e.lev_from, e.lev_to)));
        } else {
            t1 = t2 = artanh(e.radius());
        }
        double radial_gap = tz < t1 ? t1 - tz : (tz > t2 ? tz - t2 : 0.0);
        cands.push_back({std::max(lb, radial_gap), static_cast<int>(i)});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.lb < b.lb; });

    double best = kInf;
    for (const auto& c : cands) {
        if (c.lb >= best) break;
        const Edge& e = edges[c.idx];
        // coarse scan at hyperbolic spacing 0.05, then golden section
        int n = std::max(2, static_cast<int>(std::ceil(e.hyp_length() / 0.05)) + 1);
        int bi = 0;
        double bv = kInf;
        for (int k = 0; k <= n; ++k) {
            double v = hyp_dist(z, e.point_at(static_cast<double>(k) / n));
            if (v < bv) {
                bv = v;
                bi = k;
            }
        }
        double lo = std::max(0.0, (bi - 1.0) / n), hi = std::min(1.0, (bi + 1.0) / n);
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = hyp_dist(z, e.point_at(x1)), f2 = hyp_dist(z, e.point_at(x2));
        for (int it = 0; it < 30; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = hyp_dist(z, e.point_at(x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = hyp_dist(z, e.point_at(x2));
            }
        }
        best = std::min({best, bv, f1, f2});
    }
    return best;
}

Location Component::locate(const DiskPoint& z) const {
    if (euclid_dist(z) < 1e-13) return Location::Boundary;
    Angle64 a = to_angle64(z.angle());
    bool bumped = true;
    while (bumped) { // avoid grazing rays exactly along radial edges
        bumped = false;
        for (const auto& e : edges)
            if (e.kind == Edge::Kind::Radial && e.angle == a) {
                ++a;
                bumped = true;
            }
    }
    double rz = z.abs();
    int crossings = 0;
    for (const auto& e : edges) {
        if (e.kind != Edge::Kind::Arc) continue;
        if (!(e.radius() > rz)) continue;
        Angle64 lo = e.dir > 0 ? e.a_from : e.a_from - e.a_len;
        if (a - lo < e.a_len) ++crossings; // modular half-open containment
    }
    return (crossings % 2 == 1) ? Location::Interior : Location::Exterior;
}

bool point_in_interior(const DiskPoint& z, const Component& c) {
    return c.locate(z) == Location::Interior;
}

double dist_to_contour(const DiskPoint& z, const Contour& c) {
    double best = kInf;
    for (const auto& comp : c.components)
        best = std::min(best, comp.hyp_dist_to_boundary(z));
    return best;
}

double dist_to_interiors(const DiskPoint& z, const Contour& c) {
    double best = kInf;
    for (const auto& comp : c.components) {
        Location loc = comp.locate(z);
        if (loc != Location::Exterior) return 0.0;
        best = std::min(best, comp.hyp_dist_to_boundary(z));
    }
    return best;
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

namespace {

class SquareClassifier {
  public:
    SquareClassifier(const NetEvaluation& eval, double K) : eval_(eval), K_(K) {}

    double sup_estimate(const DyadicSquare& q) {
        auto key = square_key(q);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        PolarBox box = top_half_box(q);
        double best = direct_box_sup(eval_.product(), box, 0.5 * eval_.net().mesh);
        const auto& win = windows_for(q.level);
        const auto& net = eval_.net();
        for (std::size_t c = 0; c < net.circles.size(); ++c) {
            double w = win[c];
            if (w < 0.0) continue;
            const auto& circ = net.circles[c];
            if (circ.count == 1) {
                best = std::max(best, eval_.value(circ.offset));
                continue;
            }
            double span = box.theta_hi - box.theta_lo;
            if (w >= 2.0 * M_PI || span + 2.0 * w >= 2.0 * M_PI) {
                best = std::max(best, eval_.circle_max(c));
                continue;
            }
            double step = 2.0 * M_PI / static_cast<double>(circ.count);
            auto wrap = [](double th) {
                th = std::fmod(th, 2.0 * M_PI);
                return th < 0 ? th + 2.0 * M_PI : th;
            };
            double wa = wrap(box.theta_lo - w), wb = wrap(box.theta_hi + w);
            std::uint64_t k_lo = static_cast<std::uint64_t>(std::ceil(wa / step));
            std::uint64_t k_hi = static_cast<std::uint64_t>(std::floor(wb / step));
            if (k_hi >= circ.count) k_hi = circ.count - 1;
            if (wa <= wb) {
                if (k_lo <= k_hi) best = std::max(best, eval_.circle_range_max(c, k_lo, k_hi));
            } else {
                if (k_lo <= circ.count - 1)
                    best = std::max(best, eval_.circle_range_max(c, k_lo, circ.count - 1));
                best = std::max(best, eval_.circle_range_max(c, 0, k_hi));
            }
        }
        memo_.emplace(key, best);
        return best;
    }

  private:
    const std::vector<double>& windows_for(int level) {
        auto it = windows_.find(level);
        if (it != windows_.end()) return it->second;
        PolarBox box = top_half_box(DyadicSquare{level, 0});
        const auto& net = eval_.net();
        double reach = K_ + net.mesh;
        std::vector<double> win(net.circles.size(), -1.0);
        for (std::size_t c = 0; c < net.circles.size(); ++c) {
            double t = net.circles[c].t;
            if (t < box.t_lo - reach || t > box.t_hi + reach) continue;
            win[c] = omega_window(t, box, reach);
        }
        return windows_.emplace(level, std::move(win)).first->second;
    }

    const NetEvaluation& eval_;
    double K_;
    std::unordered_map<std::uint64_t, double> memo_;
    std::unordered_map<int, std::vector<double>> windows_;
};

SquareKind kind_from(double sup, double delta, double epsilon) {
    if (sup > epsilon) return SquareKind::Good;
    if (sup < delta) return SquareKind::Bad;
    return SquareKind::Neutral;
}

// per-level tables of min |B| over net points strictly inside each square,
// used to prune subtrees that cannot contain bad squares
// Tables go at most to level 26; deeper queries clamp to the level-26
// ancestor, whose min is a lower bound, so pruning stays sound.
constexpr int kMinTableCap = 26;

std::vector<std::vector<double>> build_min_tables(const NetEvaluation& eval, int d_max) {
    int cap = std::min(d_max, kMinTableCap);
    std::vector<std::vector<double>> tab(static_cast<std::size_t>(cap) + 1);
    for (int n = 1; n <= cap; ++n) tab[n].assign(std::size_t{1} << n, kInf);
    const auto& net = eval.net();
    for (std::size_t c = 0; c < net.circles.size(); ++c) {
        const auto& circ = net.circles[c];
        double gap = 1.0 - circ.radius;
        if (!(gap > 0.0) || gap >= 0.5) continue;
        int depth = static_cast<int>(std::floor(-std::log2(gap)));
        depth = std::min(depth, cap);
        for (std::uint64_t k = 0; k < circ.count; ++k) {
            double v = eval.value(circ.offset + k);
            Angle64 a = static_cast<Angle64>((static_cast<long double>(k) /
                                              static_cast<long double>(circ.count)) *
                                             18446744073709551616.0L);
            for (int n = 1; n <= depth; ++n) {
                auto& row = tab[n];
                std::uint64_t j = a >> (64 - n);
                if (v < row[j]) row[j] = v;
            }
        }
    }
    return tab;
}

struct GoodNode {
    DyadicSquare q;
    double sup;
    double sum_bad_sides = 0.0;
    bool fallback = false;
};

struct BadNode {
    DyadicSquare q;
    double sup;
    std::vector<std::pair<DyadicSquare, double>> goods; // staircase squares with sup
};

struct Selector {
    SquareClassifier& cls;
    const NetEvaluation& eval;
    const std::vector<std::vector<double>>& min_tab;
    double epsilon, delta;
    int d_max;

    std::vector<BadNode> bads;
    std::vector<GoodNode> goods;

    double subtree_min(const DyadicSquare& q) const {
        if (q.level > d_max) return kInf;
        int lev = std::min(q.level, kMinTableCap);
        return min_tab[lev][q.index >> (q.level - lev)];
    }

    void seek_bad_in(const DyadicSquare& q, int good_idx) {
        for (const auto& ch : q.children()) visit_bad_candidate(ch, good_idx);
    }

    void seek_bad_at_root() {
        visit_bad_candidate(DyadicSquare{1, 0}, -1);
        visit_bad_candidate(DyadicSquare{1, 1}, -1);
    }

    void visit_bad_candidate(const DyadicSquare& q, int good_idx) {
        if (q.level > d_max) return;
        if (subtree_min(q) >= delta) return; // nothing below can be bad
        double sup = cls.sup_estimate(q);
        if (kind_from(sup, delta, epsilon) == SquareKind::Bad) {
            if (q.level >= d_max)
                throw std::runtime_error("contour construction: bad square reached d_max");
            bads.push_back(BadNode{q, sup, {}});
            std::size_t idx = bads.size() - 1;
            if (good_idx >= 0) goods[good_idx].sum_bad_sides += q.side();
            seek_good_inside(idx, q);
            return;
        }
        if (q.level < d_max) seek_bad_in(q, good_idx);
    }

    void seek_good_inside(std::size_t bad_idx, const DyadicSquare& q) {
        for (const auto& ch : q.children()) descend_for_good(bad_idx, ch);
    }

    void descend_for_good(std::size_t bad_idx, const DyadicSquare& q) {
        double sup = cls.sup_estimate(q);
        if (kind_from(sup, delta, epsilon) == SquareKind::Good) {
            goods.push_back(GoodNode{q, sup, 0.0, false});
            bads[bad_idx].goods.push_back({q, sup});
            seek_bad_in(q, static_cast<int>(goods.size() - 1));
            return;
        }
        if (q.level >= d_max) {
            // resolution floor: certify by direct evaluation on the square's
            // closure, including radii past the net depth
            double deep = sup;
            double th_mid = 0.5 * (q.theta_lo() + q.theta_hi());
            for (int e = 0; e <= 8; ++e) {
                double gap = q.side() * std::ldexp(1.0, -e);
                double r = 1.0 - gap * 0.75;
                for (double th : {q.theta_lo() + 1e-12, th_mid, q.theta_hi() - 1e-12})
                    deep = std::max(deep, eval_modulus_stable(
                                              eval.product(),
                                              DiskPoint{r * std::cos(th), r * std::sin(th)}));
            }
            if (deep > epsilon) {
                goods.push_back(GoodNode{q, deep, 0.0, true});
                bads[bad_idx].goods.push_back({q, deep});
                return;
            }
            throw std::runtime_error("contour construction: no good cover at d_max");
        }
        for (const auto& ch : q.children()) descend_for_good(bad_idx, ch);
    }
};

} // namespace

ClassifiedSquare classify(const NetEvaluation& eval, const DyadicSquare& q,
                          const ContourParams& params) {
    double sup = omega_k_sup(eval, top_half_box(q), params.K);
    return ClassifiedSquare{q, kind_from(sup, params.delta, params.epsilon), sup};
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

ContourBuildResult build_contour_with_k(const BlaschkeProduct& B, double epsilon, double K,
                                        int N, const ContourOptions& opts) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    if (!(K > 0.0)) throw std::invalid_argument("K must be positive");
    if (opts.d_max < 2 || opts.d_max > 56) throw std::invalid_argument("d_max out of range");
    double delta0 = epsilon / 4.0;
    if (delta0 + std::tanh(opts.mesh) > epsilon)
        throw std::invalid_argument("mesh too coarse for the good/bad gap");

    ContourBuildResult out;
    out.net_points = 0;

    NetEvaluation eval(B, build_net(opts.mesh, opts.d_max + 1), opts.workers);
    out.net_points = eval.net().size();
    auto min_tab = build_min_tables(eval, opts.d_max);
    SquareClassifier cls(eval, K);

    double delta = delta0;
    int halvings = 0;
    std::vector<BadNode> bads;
    std::vector<GoodNode> goods;
    while (true) {
        Selector sel{cls, eval, min_tab, epsilon, delta, opts.d_max, {}, {}};
        sel.seek_bad_at_root();
        bool ok = true;
        for (const auto& g : sel.goods)
            if (g.sum_bad_sides > 0.5 * g.q.side()) {
                ok = false;
                break;
            }
        if (ok) {
            bads = std::move(sel.bads);
            goods = std::move(sel.goods);
            break;
        }
        delta *= 0.5;
        ++halvings;
        if (delta < opts.delta_min)
            throw std::runtime_error("contour construction: delta adaptation exhausted");
    }

    out.delta = delta;
    out.delta_halvings = halvings;
    out.contour.params = ContourParams{epsilon, K, delta, N, opts.mesh, opts.d_max};

    for (const auto& g : goods) {
        out.selected_good.push_back({g.q, SquareKind::Good, g.sup});
        out.scaling.push_back({g.q, g.sum_bad_sides, g.sum_bad_sides <= 0.5 * g.q.side()});
    }

    // regions: each selected bad square minus its staircase of good squares
    std::vector<PolarRect> rects;
    for (std::size_t bi = 0; bi < bads.size(); ++bi) {
        auto& b = bads[bi];
        out.selected_bad.push_back({b.q, SquareKind::Bad, b.sup});
        std::sort(b.goods.begin(), b.goods.end(),
                  [&](const auto& x, const auto& y) {
                      return (x.first.angle_lo() - b.q.angle_lo()) <
                             (y.first.angle_lo() - b.q.angle_lo());
                  });
        // the staircase must partition the angular span
        Angle64 cursor = b.q.angle_lo();
        double boundary = b.q.inner_radius() * b.q.side() * 2.0 * M_PI; // base arc
        double prev_r = b.q.inner_radius();
        for (const auto& [g, gsup] : b.goods) {
            (void)gsup;
            if (g.angle_lo() != cursor)
                throw std::logic_error("good staircase does not tile the bad square");
            rects.push_back(PolarRect{g.angle_lo(), g.angle_width(), b.q.level, g.level,
                                      static_cast<int>(bi)});
            double top_r = g.inner_radius();
            boundary += std::fabs(top_r - prev_r);              // staircase jump
            boundary += top_r * g.side() * 2.0 * M_PI;          // staircase top arc
            prev_r = top_r;
            cursor += g.angle_width();
        }
        boundary += std::fabs(b.q.inner_radius() - prev_r); // closing side
        if (cursor != b.q.angle_lo() + b.q.angle_width())
            throw std::logic_error("good staircase does not tile the bad square");
        out.regions.push_back({b.q, boundary, static_cast<int>(b.goods.size())});
    }

    if (rects.empty()) return out;

    RegionExtraction ext = extract_boundaries(rects);
    std::vector<std::vector<Cycle*>> per_comp(ext.n_components);
    for (auto& cyc : ext.cycles) per_comp[cyc.component].push_back(&cyc);

    for (auto& cycles : per_comp) {
        Cycle* outer = nullptr;
        for (Cycle* c : cycles) {
            if (c->signed_area > 0) {
                if (outer) throw std::logic_error("component with two outer boundary cycles");
                outer = c;
            } else {
                ++out.dropped_inner_cycles; // enclosed cycle; interior kept by the outer one
            }
        }
        if (!outer) throw std::logic_error("component without an outer boundary cycle");
        Component comp;
        comp.edges = std::move(outer->edges);
        comp.finalize();
        out.contour.components.push_back(std::move(comp));
    }
    std::sort(out.contour.components.begin(), out.contour.components.end(),
              [](const Component& a, const Component& b) {
                  double aa = a.anchor.angle(), ba = b.anchor.angle();
                  if (aa != ba) return aa < ba;
                  return a.anchor.abs() < b.anchor.abs();
              });
    for (std::size_t i = 0; i < out.contour.components.size(); ++i)
        out.contour.components[i].id = static_cast<int>(i);
    return out;
}

ContourBuildResult build_contour(const BlaschkeProduct& B, double epsilon, int N,
                                 const ContourOptions& opts) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    return build_contour_with_k(B, epsilon, 2.0 * N, N, opts);
}

// ---------------------------------------------------------------------------
// Carleson norms
// ---------------------------------------------------------------------------

namespace {

struct NormAccum {
    std::unordered_map<std::uint64_t, double> mass;
    int d_max;

    void add(int level, std::uint64_t j, double m) {
        mass[(static_cast<std::uint64_t>(level) << 57) | j] += m;
    }

    // point mass, closed-square convention
    void add_point(const DiskPoint& p, double m) {
        double gap = 1.0 - p.abs();
        if (!(gap > 0.0)) return;
        int n_max = std::min(d_max, static_cast<int>(std::floor(-std::log2(gap) + 1e-12)));
        Angle64 a = to_angle64(p.angle());
        for (int n = 1; n <= n_max; ++n) {
            std::uint64_t j = a >> (64 - n);
            add(n, j, m);
            if ((a & ((1ULL << (64 - n)) - 1)) == 0) // exactly on a grid ray
                add(n, (j + (1ULL << n) - 1) & ((1ULL << n) - 1), m);
        }
    }

    // circular arc of the given radius, angles in angle64 units
    void add_arc(double radius, Angle64 lo, std::uint64_t len, double density_mass) {
        double gap = 1.0 - radius;
        if (!(gap > 0.0) || len == 0) return;
        int n_max = std::min(d_max, static_cast<int>(std::floor(-std::log2(gap) + 1e-9)));
        double unit = density_mass / static_cast<double>(len); // mass per angle64 tick
        for (int n = 1; n <= n_max; ++n) {
            std::uint64_t width = 1ULL << (64 - n);
            Angle64 cur = lo;
            std::uint64_t remaining = len;
            while (remaining > 0) {
                std::uint64_t room = width - (cur & (width - 1));
                std::uint64_t take = std::min(room, remaining);
                add(n, cur >> (64 - n), unit * static_cast<double>(take));
                cur += take;
                remaining -= take;
            }
        }
    }

    void add_radial(double angle, double r_lo, double r_hi, double mass_per_unit_len) {
        Angle64 a = to_angle64(angle);
        for (int n = 1; n <= d_max; ++n) {
            double inner = 1.0 - std::ldexp(1.0, -n);
            double lo = std::max(r_lo, inner);
            if (lo >= r_hi) continue;
            double m = (r_hi - lo) * mass_per_unit_len;
            std::uint64_t j = a >> (64 - n);
            add(n, j, m);
            if ((a & ((1ULL << (64 - n)) - 1)) == 0)
                add(n, (j + (1ULL << n) - 1) & ((1ULL << n) - 1), m);
        }
    }

    CarlesonNormResult result() const {
        CarlesonNormResult r;
        for (const auto& [key, m] : mass) {
            int level = static_cast<int>(key >> 57);
            double ratio = m * std::ldexp(1.0, level);
            if (ratio > r.dyadic_sup) {
                r.dyadic_sup = ratio;
                r.argmax = DyadicSquare{level, key & ((1ULL << 57) - 1)};
            }
        }
        r.norm_bound = 4.0 * r.dyadic_sup;
        return r;
    }
};

} // namespace

CarlesonNormResult carleson_norm(const std::vector<MassAtom>& atoms, int d_max) {
    NormAccum acc;
    acc.d_max = d_max;
    for (const auto& a : atoms) {
        switch (a.kind) {
            case MassAtom::Kind::Point:
                acc.add_point(a.point, a.mass);
                break;
            case MassAtom::Kind::ArcPiece: {
                Angle64 lo = to_angle64(a.th_lo);
                std::uint64_t len = to_angle64(a.th_hi) - lo;
                double m = a.mass > 0 ? a.mass : a.radius * (a.th_hi - a.th_lo);
                acc.add_arc(a.radius, lo, len, m);
                break;
            }
            case MassAtom::Kind::RadialPiece: {
                double total = a.r_hi - a.r_lo;
                double m = a.mass > 0 ? a.mass : total;
                acc.add_radial(a.angle, a.r_lo, a.r_hi, total > 0 ? m / total : 0.0);
                break;
            }
        }
    }
    return acc.result();
}

CarlesonNormResult carleson_norm_arclength(const Contour& c, int d_max) {
    NormAccum acc;
    acc.d_max = d_max;
    for (const auto& comp : c.components) {
        for (const auto& e : comp.edges) {
            if (e.kind == Edge::Kind::Arc) {
                Angle64 lo = e.dir > 0 ? e.a_from : e.a_from - e.a_len;
                acc.add_arc(e.radius(), lo, e.a_len, e.euclid_length());
            } else {
                double r1 = level_radius(std::min(e.lev_from, e.lev_to));
                double r2 = level_radius(std::max(e.lev_from, e.lev_to));
                acc.add_radial(e.theta(), r1, r2, 1.0);
            }
        }
    }
    return acc.result();
}

} // namespace blaschke_approx
