#include "blaschke_approx/blaschke.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blaschke_approx {

int BlaschkeProduct::degree() const {
    int d = origin_multiplicity;
    for (const auto& z : zeros) d += z.multiplicity;
    return d;
}

std::vector<BlaschkeProduct::Zero> BlaschkeProduct::all_zeros_with_origin() const {
    std::vector<Zero> out = zeros;
    if (origin_multiplicity > 0)
        out.push_back(Zero{DiskPoint{0.0, 0.0}, origin_multiplicity});
    return out;
}

BlaschkeProduct make_product(std::vector<BlaschkeProduct::Zero> zeros,
                             int origin_multiplicity, double unimodular_angle) {
    if (origin_multiplicity < 0) throw std::invalid_argument("negative origin multiplicity");
    for (const auto& z : zeros) {
        if (z.multiplicity < 1) throw std::invalid_argument("zero multiplicity must be >= 1");
        if (!(z.position.abs2() < 1.0))
            throw std::invalid_argument("zero outside the open unit disk");
        if (z.position.re == 0.0 && z.position.im == 0.0)
            throw std::invalid_argument("origin zeros belong in origin_multiplicity");
    }
    BlaschkeProduct B;
    B.origin_multiplicity = origin_multiplicity;
    B.zeros = std::move(zeros);
    B.unimodular_angle = unimodular_angle;
    return B;
}

BlaschkeProduct product_from_points(const std::vector<DiskPoint>& points) {
    std::vector<BlaschkeProduct::Zero> zs;
    int m = 0;
    zs.reserve(points.size());
    for (const auto& p : points) {
        if (p.re == 0.0 && p.im == 0.0)
            ++m;
        else
            zs.push_back({p, 1});
    }
    return make_product(std::move(zs), m);
}

double log_modulus(const BlaschkeProduct& B, const DiskPoint& z) {
    double acc = 0.0;
    if (B.origin_multiplicity > 0) {
        double a = z.abs();
        if (a == 0.0) return -std::numeric_limits<double>::infinity();
        acc += B.origin_multiplicity * std::log(a);
    }
    for (const auto& zn : B.zeros) {
        double rho = pseudo_dist(z, zn.position);
        if (rho == 0.0) return -std::numeric_limits<double>::infinity();
        acc += zn.multiplicity * std::log(rho);
    }
    return acc;
}

double eval_modulus_stable(const BlaschkeProduct& B, const DiskPoint& z) {
    // running product of the squared factors, renormalized through frexp so
    // huge zero counts cannot underflow; one square root at the end
    double mant = 1.0;
    long exp2 = 0;
    auto renorm = [&] {
        if (mant != 0.0 && mant < 0x1.0p-256) {
            int e;
            mant = std::frexp(mant, &e);
            exp2 += e;
        }
    };
    auto mulpow = [&](double f2, int count) { // f2 = squared factor in [0, 1]
        if (!(f2 > 0.0)) {
            mant = 0.0;
            return;
        }
        if (count <= 4) {
            for (int i = 0; i < count; ++i) {
                mant *= f2;
                renorm();
            }
        } else {
            double l2 = count * std::log2(f2);
            if (l2 < -6e8) {
                mant = 0.0;
                return;
            }
            double fl = std::floor(l2);
            exp2 += static_cast<long>(fl);
            mant *= std::exp2(l2 - fl);
            renorm();
        }
    };
    const double zr = z.re, zi = z.im;
    if (B.origin_multiplicity > 0) mulpow(zr * zr + zi * zi, B.origin_multiplicity);
    for (const auto& zn : B.zeros) {
        if (mant == 0.0) return 0.0;
        double wr = zn.position.re, wi = zn.position.im;
        double nr = zr - wr, ni = zi - wi;
        double dr = 1.0 - (wr * zr + wi * zi), di = wr * zi - wi * zr;
        double n2 = nr * nr + ni * ni;
        double d2 = dr * dr + di * di;
        mulpow(n2 / d2, zn.multiplicity);
    }
    if (mant == 0.0) return 0.0;
    if (exp2 & 1) {
        mant *= 2.0;
        exp2 -= 1;
    }
    long half = std::clamp(exp2 / 2, -20000L, 20000L);
    double v = std::sqrt(mant) * std::ldexp(1.0, static_cast<int>(half));
    return std::min(v, 1.0);
}

double eval_modulus(const BlaschkeProduct& B, const DiskPoint& z) {
    if (B.degree() > 32) {
        double lm = log_modulus(B, z);
        return std::isinf(lm) ? 0.0 : std::min(std::exp(lm), 1.0);
    }
    double acc = 1.0;
    if (B.origin_multiplicity > 0)
        acc *= std::pow(z.abs(), B.origin_multiplicity);
    for (const auto& zn : B.zeros) {
        double rho = pseudo_dist(z, zn.position);
        for (int i = 0; i < zn.multiplicity; ++i) acc *= rho;
    }
    return std::min(acc, 1.0);
}

BlaschkeProduct multiply(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    BlaschkeProduct out = a;
    out.origin_multiplicity += b.origin_multiplicity;
    out.zeros.insert(out.zeros.end(), b.zeros.begin(), b.zeros.end());
    out.unimodular_angle = std::fmod(a.unimodular_angle + b.unimodular_angle, 2.0 * M_PI);
    return out;
}

BallProbe probe_ball(const BlaschkeProduct& B, const DiskPoint& center, double radius,
                     double stop_above, double step) {
    BallProbe out;
    double t0 = artanh(center.abs());
    double th0 = center.angle();
    auto try_point = [&](const DiskPoint& p) {
        if (!(p.abs2() < 1.0)) return false;
        double d = hyp_dist(p, center);
        if (d > radius) return false;
        double v = eval_modulus_stable(B, p);
        if (v > out.best) {
            out.best = v;
            out.argmax = p;
            out.dist = d;
        }
        return v > stop_above;
    };
    // radial sweep first: toward the boundary a finite product always
    // recovers, so this usually ends the search in a handful of evaluations
    for (double s = 0.0; s <= radius + 1e-9; s += step) {
        double r = std::tanh(t0 + s);
        if (try_point(DiskPoint{r * std::cos(th0), r * std::sin(th0)})) {
            out.exceeded = true;
            return out;
        }
    }
    // ring sizes grow like e^{2s}; cap them and visit each ring outward-first
    // (phi near 0 points toward the boundary), so the early exit fires long
    // before the cap matters
    constexpr long kRingCap = 20000;
    for (double s = 0.0; s <= radius + 1e-9; s += step) {
        long n_ang = 1;
        if (s > 0.0) {
            double need = M_PI * std::sinh(2.0 * s) / step;
            n_ang = need > static_cast<double>(kRingCap)
                        ? kRingCap
                        : std::max(4L, static_cast<long>(std::ceil(need)));
        }
        for (long m = 0; m < n_ang; ++m) {
            // two-pointer order: 0, n-1, 1, n-2, ... starts at the outward
            // direction from both sides
            long k = (m % 2 == 0) ? m / 2 : n_ang - 1 - m / 2;
            double phi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_ang);
            double t = t0 + s * std::cos(phi);
            if (t < 0.0) t = 0.0;
            double r = std::tanh(t);
            double side = s * std::sin(phi);
            double dth = r > 1e-12 ? side * (1.0 - r * r) / r : 0.0;
            if (std::fabs(dth) > M_PI) continue;
            if (try_point(DiskPoint{r * std::cos(th0 + dth), r * std::sin(th0 + dth)})) {
                out.exceeded = true;
                return out;
            }
        }
    }
    return out;
}

} // namespace blaschke_approx
