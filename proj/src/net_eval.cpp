#include "blaschke_approx/net_eval.hpp"
#include "blaschke_approx/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace blaschke_approx {

NetEvaluation::NetEvaluation(BlaschkeProduct product, HyperbolicNet net, int workers)
    : product_(std::move(product)), net_(std::move(net)) {
    values_.resize(net_.size());
    if (workers <= 0) workers = default_workers();
    const auto& B = product_;
    const auto& N = net_;
    parallel_for(net_.size(), workers, [&](std::size_t lo, std::size_t hi) {
        std::size_t ci = N.circle_of(lo);
        for (std::size_t i = lo; i < hi; ++i) {
            while (ci + 1 < N.circles.size() && N.circles[ci + 1].offset <= i) ++ci;
            values_[i] = eval_modulus_stable(B, N.point(ci, i - N.circles[ci].offset));
        }
    });

    block_offset_.resize(net_.circles.size());
    std::size_t nblocks = 0;
    for (std::size_t c = 0; c < net_.circles.size(); ++c) {
        block_offset_[c] = nblocks;
        nblocks += (net_.circles[c].count + kBlock - 1) / kBlock;
    }
    block_max_.assign(nblocks, 0.0);
    for (std::size_t c = 0; c < net_.circles.size(); ++c) {
        const auto& circ = net_.circles[c];
        for (std::uint64_t k = 0; k < circ.count; ++k) {
            double& slot = block_max_[block_offset_[c] + k / kBlock];
            slot = std::max(slot, values_[circ.offset + k]);
        }
    }
}

double NetEvaluation::circle_max(std::size_t circle) const {
    const auto& circ = net_.circles[circle];
    std::size_t b0 = block_offset_[circle];
    std::size_t b1 = b0 + (circ.count + kBlock - 1) / kBlock;
    double m = 0.0;
    for (std::size_t b = b0; b < b1; ++b) m = std::max(m, block_max_[b]);
    return m;
}

double NetEvaluation::circle_range_max(std::size_t circle, std::uint64_t k_lo,
                                       std::uint64_t k_hi) const {
    const auto& circ = net_.circles[circle];
    if (k_hi >= circ.count) k_hi = circ.count - 1;
    if (k_lo > k_hi) return 0.0;
    std::size_t base = circ.offset;
    std::uint64_t b_lo = k_lo / kBlock, b_hi = k_hi / kBlock;
    double m = 0.0;
    if (b_lo == b_hi) {
        for (std::uint64_t k = k_lo; k <= k_hi; ++k) m = std::max(m, values_[base + k]);
        return m;
    }
    for (std::uint64_t k = k_lo; k < (b_lo + 1) * kBlock; ++k)
        m = std::max(m, values_[base + k]);
    for (std::uint64_t b = b_lo + 1; b < b_hi; ++b)
        m = std::max(m, block_max_[block_offset_[circle] + b]);
    for (std::uint64_t k = b_hi * kBlock; k <= k_hi; ++k)
        m = std::max(m, values_[base + k]);
    return m;
}

namespace {

double dist_at_gap(double t, double gap, const PolarBox& box) {
    // by rotational symmetry, measure from the high edge
    double r = std::tanh(t);
    double th = box.theta_hi + gap;
    DiskPoint p{r * std::cos(th), r * std::sin(th)};
    return dist_to_box(p, box);
}

} // namespace

double omega_window(double t_circle, const PolarBox& box, double K) {
    double span = box.theta_hi - box.theta_lo;
    double d0 = (t_circle < box.t_lo)   ? box.t_lo - t_circle
                : (t_circle > box.t_hi) ? t_circle - box.t_hi
                                        : 0.0;
    if (d0 > K) return -1.0; // even aligned points are too far
    double max_gap = 2.0 * M_PI - span;
    if (max_gap <= 0.0) return 2.0 * M_PI;
    if (dist_at_gap(t_circle, max_gap * 0.5, box) <= K) return 2.0 * M_PI; // opposite point within reach
    double lo = 0.0, hi = max_gap * 0.5;
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        if (dist_at_gap(t_circle, mid, box) <= K)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double omega_k_sup(const NetEvaluation& eval, const PolarBox& box, double K) {
    const auto& net = eval.net();
    const auto& B = eval.product();

    // direct sample of the box itself (covers the K = 0 point case exactly
    // and keeps deep boxes classified even past net coverage)
    double best = 0.0;
    {
        int nt = box.t_hi > box.t_lo ? std::min(8, 1 + static_cast<int>((box.t_hi - box.t_lo) / (0.5 * net.mesh))) : 1;
        int na = box.theta_hi > box.theta_lo ? 9 : 1;
        for (int i = 0; i < nt; ++i) {
            double t = nt == 1 ? box.t_lo : box.t_lo + (box.t_hi - box.t_lo) * i / (nt - 1);
            double r = std::tanh(t);
            for (int j = 0; j < na; ++j) {
                double th = na == 1 ? box.theta_lo
                                    : box.theta_lo + (box.theta_hi - box.theta_lo) * j / (na - 1);
                DiskPoint p{r * std::cos(th), r * std::sin(th)};
                best = std::max(best, eval_modulus_stable(B, p));
            }
        }
    }

    double reach = K + net.mesh;
    for (std::size_t c = 0; c < net.circles.size(); ++c) {
        const auto& circ = net.circles[c];
        if (circ.t < box.t_lo - reach || circ.t > box.t_hi + reach) continue;
        if (circ.count == 1) {
            if (dist_to_box(net.point(c, 0), box) <= reach)
                best = std::max(best, eval.value(circ.offset));
            continue;
        }
        double w = omega_window(circ.t, box, reach);
        if (w < 0.0) continue;
        double span = box.theta_hi - box.theta_lo;
        if (w >= 2.0 * M_PI || span + 2.0 * w >= 2.0 * M_PI) {
            best = std::max(best, eval.circle_max(c));
            continue;
        }
        double step = 2.0 * M_PI / static_cast<double>(circ.count);
        double a = box.theta_lo - w, b = box.theta_hi + w;
        auto wrap = [&](double th) {
            th = std::fmod(th, 2.0 * M_PI);
            if (th < 0) th += 2.0 * M_PI;
            return th;
        };
        double wa = wrap(a), wb = wrap(b);
        std::uint64_t k_lo = static_cast<std::uint64_t>(std::ceil(wa / step));
        std::uint64_t k_hi = static_cast<std::uint64_t>(std::floor(wb / step));
        if (k_hi >= circ.count) k_hi = circ.count - 1;
        if (wa <= wb) {
            if (k_lo <= k_hi)
                best = std::max(best, eval.circle_range_max(c, k_lo, k_hi));
        } else { // window passes through angle 0
            if (k_lo <= circ.count - 1)
                best = std::max(best, eval.circle_range_max(c, k_lo, circ.count - 1));
            best = std::max(best, eval.circle_range_max(c, 0, k_hi));
        }
    }
    return best;
}

double omega_k_sup(const BlaschkeProduct& B, const PolarBox& box, double K,
                   double mesh, int depth_limit) {
    NetEvaluation eval(B, build_net(mesh, depth_limit), 0);
    return omega_k_sup(eval, box, K);
}

} // namespace blaschke_approx
