#include "blaschke_approx/region.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace blaschke_approx {

namespace {

double level_radius(int level) { return 1.0 - std::ldexp(1.0, -level); }

} // namespace

double Edge::radius() const { return level_radius(level); }
double Edge::theta() const { return from_angle64(angle); }

double Edge::euclid_length() const {
    if (kind == Kind::Radial)
        return std::fabs(level_radius(lev_to) - level_radius(lev_from));
    return radius() * static_cast<double>(a_len) * (2.0 * M_PI) * 0x1.0p-64;
}

double Edge::hyp_length() const {
    if (kind == Kind::Radial)
        return std::fabs(artanh(level_radius(lev_to)) - artanh(level_radius(lev_from)));
    double r = radius();
    return euclid_length() / (1.0 - r * r);
}

DiskPoint Edge::point_at(double u) const {
    if (kind == Kind::Radial) {
        double r = level_radius(lev_from) + u * (level_radius(lev_to) - level_radius(lev_from));
        double th = theta();
        return DiskPoint{r * std::cos(th), r * std::sin(th)};
    }
    double sweep = static_cast<double>(a_len) * (2.0 * M_PI) * 0x1.0p-64;
    double th = from_angle64(a_from) + dir * u * sweep;
    double r = radius();
    return DiskPoint{r * std::cos(th), r * std::sin(th)};
}

double Edge::euclid_dist(const DiskPoint& z) const {
    double u;
    return euclid_dist(z, &u);
}

double Edge::euclid_dist(const DiskPoint& z, double* u_nearest) const {
    if (kind == Kind::Radial) {
        // segment from r1 to r2 along angle theta
        double th = theta();
        double c = std::cos(th), s = std::sin(th);
        double proj = z.re * c + z.im * s; // coordinate along the ray
        double perp = -z.re * s + z.im * c;
        double r1 = level_radius(lev_from), r2 = level_radius(lev_to);
        double lo = std::min(r1, r2), hi = std::max(r1, r2);
        double clamped = std::clamp(proj, lo, hi);
        double u = (clamped - r1) / (r2 - r1);
        *u_nearest = std::clamp(u, 0.0, 1.0);
        double dx = proj - clamped;
        return std::hypot(dx, perp);
    }
    double R = radius();
    double rz = z.abs();
    double thz = z.angle();
    double a0 = from_angle64(a_from);
    double sweep = static_cast<double>(a_len) * (2.0 * M_PI) * 0x1.0p-64;
    // offset of z's angle from the arc start, measured along the arc direction
    double off = dir > 0 ? thz - a0 : a0 - thz;
    off = std::fmod(off, 2.0 * M_PI);
    if (off < 0) off += 2.0 * M_PI;
    if (off <= sweep) {
        *u_nearest = sweep > 0 ? off / sweep : 0.0;
        return std::fabs(rz - R);
    }
    DiskPoint e0 = point_at(0.0), e1 = point_at(1.0);
    double d0 = std::hypot(z.re - e0.re, z.im - e0.im);
    double d1 = std::hypot(z.re - e1.re, z.im - e1.im);
    if (d0 <= d1) {
        *u_nearest = 0.0;
        return d0;
    }
    *u_nearest = 1.0;
    return d1;
}

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// directions in the (r, theta) frame, which maps to the disk preserving
// orientation; cycles are walked with the interior on the left
enum class Dir { PlusTheta, MinusTheta, PlusR, MinusR };

Dir right_of(Dir d) {
    switch (d) {
        case Dir::PlusR: return Dir::MinusTheta;
        case Dir::MinusTheta: return Dir::MinusR;
        case Dir::MinusR: return Dir::PlusTheta;
        case Dir::PlusTheta: return Dir::PlusR;
    }
    return Dir::PlusR;
}

Dir left_of(Dir d) { return right_of(right_of(right_of(d))); }

struct Vertex {
    Angle64 a;
    int level;
    bool operator==(const Vertex&) const = default;
};

struct VertexHash {
    std::size_t operator()(const Vertex& v) const {
        std::uint64_t x = v.a ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(v.level + 7));
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 29;
        return static_cast<std::size_t>(x);
    }
};

struct DirectedPiece {
    Edge edge;
    Vertex from, to;
    Dir dir;
    int rect_owner;
    bool used = false;
};

// half-open angular interval [lo, lo+len) on the 2^64 circle, owner rect
struct AInterval {
    Angle64 lo;
    std::uint64_t len;
    int rect;
};

bool contains_angle(const AInterval& iv, Angle64 x) {
    std::uint64_t off = x - iv.lo; // wraps
    return off < iv.len;
}

} // namespace

RegionExtraction extract_boundaries(const std::vector<PolarRect>& rects) {
    RegionExtraction out;
    if (rects.empty()) return out;

    for (const auto& r : rects) {
        if (r.base_level >= r.top_level)
            throw std::invalid_argument("degenerate polar rectangle");
        if (r.a_len == 0) throw std::invalid_argument("zero-width polar rectangle");
    }

    DisjointSets uf(rects.size());
    std::vector<DirectedPiece> pieces;

    // --- vertical (radial) boundary pieces -------------------------------
    struct VEvent {
        int lev_lo, lev_hi;
        int rect;
    };
    std::map<Angle64, std::pair<std::vector<VEvent>, std::vector<VEvent>>> verticals;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        const auto& r = rects[i];
        verticals[r.a_lo].first.push_back({r.base_level, r.top_level, static_cast<int>(i)});
        verticals[r.a_lo + r.a_len].second.push_back({r.base_level, r.top_level, static_cast<int>(i)});
    }
    for (auto& [angle, sides] : verticals) {
        auto& left = sides.first;   // rects starting here: interior at +theta
        auto& right = sides.second; // rects ending here: interior at -theta
        std::vector<int> cuts;
        for (auto& e : left) {
            cuts.push_back(e.lev_lo);
            cuts.push_back(e.lev_hi);
        }
        for (auto& e : right) {
            cuts.push_back(e.lev_lo);
            cuts.push_back(e.lev_hi);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            int l1 = cuts[k], l2 = cuts[k + 1];
            const VEvent* inl = nullptr;
            const VEvent* inr = nullptr;
            for (auto& e : left)
                if (e.lev_lo <= l1 && l2 <= e.lev_hi) {
                    if (inl) throw std::logic_error("overlapping rectangle interiors");
                    inl = &e;
                }
            for (auto& e : right)
                if (e.lev_lo <= l1 && l2 <= e.lev_hi) {
                    if (inr) throw std::logic_error("overlapping rectangle interiors");
                    inr = &e;
                }
            if (inl && inr) {
                uf.unite(inl->rect, inr->rect); // interior passage, edge cancels
                continue;
            }
            if (!inl && !inr) continue;
            DirectedPiece p;
            p.edge.kind = Edge::Kind::Radial;
            p.edge.angle = angle;
            p.rect_owner = inl ? inl->rect : inr->rect;
            if (inl) {
                // interior at +theta: walk outward (increasing r)
                p.edge.lev_from = l1;
                p.edge.lev_to = l2;
                p.dir = Dir::PlusR;
                p.from = {angle, l1};
                p.to = {angle, l2};
            } else {
                p.edge.lev_from = l2;
                p.edge.lev_to = l1;
                p.dir = Dir::MinusR;
                p.from = {angle, l2};
                p.to = {angle, l1};
            }
            pieces.push_back(p);
        }
    }

    // --- horizontal (arc) boundary pieces --------------------------------
    std::map<int, std::pair<std::vector<AInterval>, std::vector<AInterval>>> horizontals;
    for (std::size_t i = 0; i < rects.size(); ++i) {
        const auto& r = rects[i];
        horizontals[r.top_level].first.push_back({r.a_lo, r.a_len, static_cast<int>(i)});
        horizontals[r.base_level].second.push_back({r.a_lo, r.a_len, static_cast<int>(i)});
    }
    for (auto& [level, sides] : horizontals) {
        auto& tops = sides.first;   // interior below (toward the center)
        auto& bases = sides.second; // interior above
        std::vector<Angle64> cuts;
        cuts.push_back(0); // split everything at angle 0 so no piece wraps
        for (auto list : {&tops, &bases})
            for (auto& iv : *list) {
                cuts.push_back(iv.lo);
                cuts.push_back(iv.lo + iv.len);
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::size_t n = cuts.size();
        for (std::size_t k = 0; k < n; ++k) {
            Angle64 s = cuts[k];
            Angle64 e = (k + 1 < n) ? cuts[k + 1] : 0; // wraps to angle 0
            std::uint64_t len = e - s;                 // modular difference
            if (len == 0) continue;
            Angle64 mid = s + len / 2;
            const AInterval* int_below = nullptr;
            const AInterval* int_above = nullptr;
            for (auto& iv : tops)
                if (contains_angle(iv, mid)) {
                    if (int_below) throw std::logic_error("overlapping rectangle interiors");
                    int_below = &iv;
                }
            for (auto& iv : bases)
                if (contains_angle(iv, mid)) {
                    if (int_above) throw std::logic_error("overlapping rectangle interiors");
                    int_above = &iv;
                }
            if (int_below && int_above) {
                uf.unite(int_below->rect, int_above->rect);
                continue;
            }
            if (!int_below && !int_above) continue;
            DirectedPiece p;
            p.edge.kind = Edge::Kind::Arc;
            p.edge.level = level;
            p.edge.a_len = len;
            p.rect_owner = int_below ? int_below->rect : int_above->rect;
            if (int_below) {
                // interior toward the center: walk counterclockwise
                p.edge.a_from = s;
                p.edge.dir = +1;
                p.dir = Dir::PlusTheta;
                p.from = {s, level};
                p.to = {e, level};
            } else {
                p.edge.a_from = e;
                p.edge.dir = -1;
                p.dir = Dir::MinusTheta;
                p.from = {e, level};
                p.to = {s, level};
            }
            pieces.push_back(p);
        }
    }

    // --- stitch directed pieces into cycles ------------------------------
    std::unordered_map<Vertex, std::vector<std::size_t>, VertexHash> outgoing;
    for (std::size_t i = 0; i < pieces.size(); ++i) outgoing[pieces[i].from].push_back(i);

    auto pick_next = [&](const DirectedPiece& cur) -> std::size_t {
        auto it = outgoing.find(cur.to);
        if (it == outgoing.end()) throw std::logic_error("dangling boundary piece");
        // first outgoing direction clockwise from the reversed incoming one:
        // keeps the same face at 4-valent pinch vertices
        const Dir prefs[3] = {left_of(cur.dir), cur.dir, right_of(cur.dir)};
        for (Dir want : prefs)
            for (std::size_t j : it->second)
                if (!pieces[j].used && pieces[j].dir == want) return j;
        throw std::logic_error("no outgoing boundary piece (open cycle)");
    };

    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].used) continue;
        Cycle cyc;
        std::size_t cur = i;
        int comp = uf.find(pieces[i].rect_owner);
        while (!pieces[cur].used) {
            pieces[cur].used = true;
            cyc.edges.push_back(pieces[cur].edge);
            if (uf.find(pieces[cur].rect_owner) != comp)
                throw std::logic_error("cycle crosses components");
            if (pieces[cur].to == pieces[i].from) break;
            cur = pick_next(pieces[cur]);
        }
        if (!(pieces[cur].to == pieces[i].from))
            throw std::logic_error("boundary walk did not close");
        long double area2 = 0.0L; // ∮ r^2 dθ over arc edges (radial edges contribute 0)
        for (const auto& e : cyc.edges) {
            if (e.kind != Edge::Kind::Arc) continue;
            long double r = level_radius(e.level);
            long double sweep = static_cast<long double>(e.a_len) * (2.0L * M_PI) / 18446744073709551616.0L;
            area2 += r * r * sweep * e.dir;
        }
        cyc.signed_area = static_cast<double>(area2 / 2.0L);
        cyc.component = comp;
        out.cycles.push_back(std::move(cyc));
    }

    std::vector<int> comp_ids;
    for (auto& c : out.cycles) comp_ids.push_back(c.component);
    std::sort(comp_ids.begin(), comp_ids.end());
    comp_ids.erase(std::unique(comp_ids.begin(), comp_ids.end()), comp_ids.end());
    for (auto& c : out.cycles)
        c.component = static_cast<int>(std::lower_bound(comp_ids.begin(), comp_ids.end(),
                                                        c.component) -
                                       comp_ids.begin());
    out.n_components = static_cast<int>(comp_ids.size());
    return out;
}

} // namespace blaschke_approx
