#include "blaschke_approx/harmonic.hpp"
#include "blaschke_approx/parallel.hpp"
#include "blaschke_approx/rng.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace blaschke_approx {

double BoundaryMeasure::bin_width() const {
    return bins() == 0 ? 0.0 : bin_edges.back() / static_cast<double>(bins());
}

double BoundaryMeasure::mass_up_to(double s) const {
    if (bins() == 0) return 0.0;
    double w = bin_width();
    if (s <= 0.0) return 0.0;
    if (s >= bin_edges.back()) return total;
    std::size_t idx = std::min(bins() - 1, static_cast<std::size_t>(s / w));
    double acc = 0.0;
    for (std::size_t i = 0; i < idx; ++i) acc += bin_masses[i];
    double frac = (s - bin_edges[idx]) / w;
    return acc + frac * bin_masses[idx];
}

BoundaryMeasure harmonic_measure(const HarmonicDomain& dom, const MeasureConfig& cfg) {
    if (!dom.boundary) throw std::invalid_argument("harmonic domain without boundary");
    const Component& comp = *dom.boundary;

    BoundaryMeasure mu;
    mu.component_id = comp.id;
    mu.seed = cfg.seed;
    mu.walks_per_source = cfg.walks_per_source;

    double M = 0.0;
    for (const auto& s : dom.sources) {
        if (comp.locate(s.position) != Location::Interior)
            throw std::invalid_argument("harmonic source is not interior");
        M += s.multiplicity;
        mu.sum_sq_multiplicity += static_cast<double>(s.multiplicity) * s.multiplicity;
    }

    double L = comp.arclength;
    std::size_t nbins = static_cast<std::size_t>(cfg.min_bins);
    nbins = std::max(nbins, static_cast<std::size_t>(std::ceil(L / cfg.max_bin_width)));
    nbins = std::max(nbins, static_cast<std::size_t>(cfg.bins_per_unit_mass * M));
    nbins = std::min(nbins, static_cast<std::size_t>(cfg.max_bins));
    mu.bin_edges.resize(nbins + 1);
    for (std::size_t i = 0; i <= nbins; ++i)
        mu.bin_edges[i] = L * static_cast<double>(i) / static_cast<double>(nbins);
    mu.bin_masses.assign(nbins, 0.0);
    if (dom.sources.empty()) return mu;

    double tol = cfg.exit_tol_factor * comp.diameter;
    int W = cfg.walks_per_source;
    std::size_t total_walks = dom.sources.size() * static_cast<std::size_t>(W);

    int workers = cfg.workers > 0 ? cfg.workers : default_workers();
    std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(workers) * 4, total_walks);
    if (chunks == 0) chunks = 1;
    std::vector<std::vector<double>> part(chunks, std::vector<double>(nbins, 0.0));
    std::vector<long> stuck(chunks, 0);
    std::size_t per = (total_walks + chunks - 1) / chunks;

    parallel_for(chunks, workers, [&](std::size_t c_lo, std::size_t c_hi) {
        for (std::size_t c = c_lo; c < c_hi; ++c) {
            auto& bins = part[c];
            std::size_t lo = c * per, hi = std::min(total_walks, lo + per);
            for (std::size_t wi = lo; wi < hi; ++wi) {
                std::size_t src = wi / static_cast<std::size_t>(W);
                std::size_t walk = wi % static_cast<std::size_t>(W);
                const auto& source = dom.sources[src];
                double weight = static_cast<double>(source.multiplicity) / W;
                Xoshiro256 rng(derive_seed(cfg.seed, src, walk));
                DiskPoint p = source.position;
                bool exited = false;
                for (int step = 0; step < cfg.max_steps; ++step) {
                    double s_near;
                    double d = comp.euclid_dist(p, &s_near);
                    if (d < tol) {
                        std::size_t b = std::min(nbins - 1,
                                                 static_cast<std::size_t>(s_near / L * nbins));
                        bins[b] += weight;
                        exited = true;
                        break;
                    }
                    double phi = 2.0 * M_PI * rng.uniform();
                    p.re += d * std::cos(phi);
                    p.im += d * std::sin(phi);
                }
                if (!exited) {
                    double s_near;
                    comp.euclid_dist(p, &s_near);
                    std::size_t b = std::min(nbins - 1,
                                             static_cast<std::size_t>(s_near / L * nbins));
                    bins[b] += weight;
                    ++stuck[c];
                }
            }
        }
    });

    for (std::size_t c = 0; c < chunks; ++c) {
        mu.stuck_walks += stuck[c];
        for (std::size_t b = 0; b < nbins; ++b) mu.bin_masses[b] += part[c][b];
    }

    double pre = 0.0;
    for (double m : mu.bin_masses) pre += m;
    mu.pre_renorm_total = pre;
    mu.renorm_factor = pre > 0 ? M / pre : 1.0;
    for (double& m : mu.bin_masses) m *= mu.renorm_factor;
    // force the conserved total bit-exactly onto the heaviest bin
    double sum = 0.0;
    for (double m : mu.bin_masses) sum += m;
    double resid = M - sum;
    if (!mu.bin_masses.empty()) {
        auto it = std::max_element(mu.bin_masses.begin(), mu.bin_masses.end());
        *it += resid;
    }
    mu.total = M;
    mu.stat_error = 0.0; // every walk exits; the total carries no sampling noise
    return mu;
}

double measure_integrate(const BoundaryMeasure& mu, const Component& comp, double s_lo,
                         double s_hi, const std::function<double(const DiskPoint&)>& f) {
    if (mu.bins() == 0 || s_hi <= s_lo) return 0.0;
    double w = mu.bin_width();
    double acc = 0.0;
    std::size_t b_lo = std::min(mu.bins() - 1, static_cast<std::size_t>(std::max(0.0, s_lo) / w));
    std::size_t b_hi = std::min(mu.bins() - 1, static_cast<std::size_t>((s_hi - 1e-15) / w));
    for (std::size_t b = b_lo; b <= b_hi; ++b) {
        double lo = std::max(s_lo, mu.bin_edges[b]);
        double hi = std::min(s_hi, mu.bin_edges[b + 1]);
        if (hi <= lo) continue;
        double frac = (hi - lo) / w; // uniform in-bin mass model
        double mid = 0.5 * (lo + hi);
        acc += f(comp.point_at_arclength(mid)) * mu.bin_masses[b] * frac;
    }
    return acc;
}

double quadrature_stat_error(const BoundaryMeasure& mu, const std::vector<double>& f_bins) {
    if (mu.bins() == 0 || mu.total <= 0.0 || mu.walks_per_source <= 0) return 0.0;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t b = 0; b < mu.bins(); ++b) {
        m1 += f_bins[b] * mu.bin_masses[b];
        m2 += f_bins[b] * f_bins[b] * mu.bin_masses[b];
    }
    double mean = m1 / mu.total;
    double var = std::max(0.0, m2 / mu.total - mean * mean);
    return std::sqrt(var * mu.sum_sq_multiplicity / mu.walks_per_source);
}

double mean_value_check(const BlaschkeProduct& b1_component, const BoundaryMeasure& mu,
                        const Component& comp, const DiskPoint& z) {
    if (comp.locate(z) != Location::Exterior)
        throw std::invalid_argument("mean value check requires an exterior point");
    double lhs = b1_component.empty() ? 0.0 : log_modulus(b1_component, z);
    double rhs = measure_integrate(mu, comp, 0.0, comp.arclength,
                                   [&](const DiskPoint& xi) { return std::log(pseudo_dist(z, xi)); });
    return std::fabs(lhs - rhs);
}

} // namespace blaschke_approx
