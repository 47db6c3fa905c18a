#include "blaschke_approx/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace blaschke_approx {

Angle64 to_angle64(double theta) {
    double f = theta / (2.0 * M_PI);
    f -= std::floor(f);
    long double scaled = static_cast<long double>(f) * 18446744073709551616.0L; // 2^64
    if (scaled >= 18446744073709551615.0L) return 0; // wrapped
    return static_cast<Angle64>(scaled);
}

double from_angle64(Angle64 a) {
    return static_cast<double>(a) * (2.0 * M_PI) * 0x1.0p-64;
}

double DyadicSquare::side() const { return std::ldexp(1.0, -level); }
double DyadicSquare::inner_radius() const { return 1.0 - side(); }

Angle64 DyadicSquare::angle_lo() const { return index << (64 - level); }
Angle64 DyadicSquare::angle_width() const { return 1ULL << (64 - level); }

double DyadicSquare::theta_lo() const { return from_angle64(angle_lo()); }
double DyadicSquare::theta_hi() const {
    return 2.0 * M_PI * (static_cast<double>(index + 1) * side());
}

DiskPoint DyadicSquare::top_center() const {
    double r = 1.0 - 0.75 * side();
    double th = 2.0 * M_PI * ((static_cast<double>(index) + 0.5) * side());
    return DiskPoint{r * std::cos(th), r * std::sin(th)};
}

bool DyadicSquare::contains(const DiskPoint& z) const {
    double gap = 1.0 - z.abs();
    if (!(gap > 0.0 && gap < side())) return false;
    return (to_angle64(z.angle()) >> (64 - level)) == index;
}

bool DyadicSquare::top_half_contains(const DiskPoint& z) const {
    double gap = 1.0 - z.abs();
    if (!(gap > 0.5 * side() && gap < side())) return false;
    return (to_angle64(z.angle()) >> (64 - level)) == index;
}

std::array<DyadicSquare, 2> DyadicSquare::children() const {
    if (level >= 62) throw std::domain_error("dyadic level too deep");
    return {DyadicSquare{level + 1, 2 * index}, DyadicSquare{level + 1, 2 * index + 1}};
}

std::optional<DyadicSquare> DyadicSquare::parent() const {
    if (level <= 1) return std::nullopt;
    return DyadicSquare{level - 1, index / 2};
}

std::optional<DyadicSquare> home_square(const DiskPoint& z, int max_level) {
    double gap = 1.0 - z.abs();
    if (!(gap > 0.0) || gap >= 0.5) return std::nullopt;
    // level n with 2^-(n+1) < gap < 2^-n
    int n = static_cast<int>(std::floor(-std::log2(gap)));
    if (n < 1) n = 1;
    if (n > max_level) return std::nullopt;
    std::uint64_t j = to_angle64(z.angle()) >> (64 - n);
    return DyadicSquare{n, j};
}

bool PolarBox::contains(const DiskPoint& z) const {
    double t = artanh(z.abs());
    if (t < t_lo || t > t_hi) return false;
    double th = z.angle();
    if (th >= theta_lo && th <= theta_hi) return true;
    double th2 = th + 2.0 * M_PI;
    return th2 >= theta_lo && th2 <= theta_hi;
}

PolarBox PolarBox::point(const DiskPoint& z) {
    double t = artanh(z.abs());
    double th = z.angle();
    return PolarBox{t, t, th, th};
}

PolarBox top_half_box(const DyadicSquare& q) {
    double r_lo = q.inner_radius();
    double r_hi = 1.0 - 0.5 * q.side();
    return PolarBox{artanh(r_lo), artanh(r_hi), q.theta_lo(), q.theta_hi()};
}

namespace {

// beta between points given in polar form
double beta_polar(double t1, double th1, double t2, double th2) {
    double r1 = std::tanh(t1), r2 = std::tanh(t2);
    DiskPoint a{r1 * std::cos(th1), r1 * std::sin(th1)};
    DiskPoint b{r2 * std::cos(th2), r2 * std::sin(th2)};
    return hyp_dist(a, b);
}

// distance to the radial segment {angle th, t in [t_lo, t_hi]} by golden
// section (the distance along the segment is unimodal)
double dist_to_radial_segment(const DiskPoint& z, double th, double t_lo, double t_hi) {
    double tz = artanh(z.abs());
    double thz = z.angle();
    double lo = t_lo, hi = t_hi;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = beta_polar(tz, thz, x1, th), f2 = beta_polar(tz, thz, x2, th);
    for (int it = 0; it < 48 && hi - lo > 1e-12; ++it) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = beta_polar(tz, thz, x1, th);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = beta_polar(tz, thz, x2, th);
        }
    }
    return std::min(f1, f2);
}

} // namespace

double dist_to_box(const DiskPoint& z, const PolarBox& box) {
    double t = artanh(z.abs());
    double th = z.angle();
    bool in_span = (th >= box.theta_lo && th <= box.theta_hi) ||
                   (th + 2.0 * M_PI >= box.theta_lo && th + 2.0 * M_PI <= box.theta_hi);
    if (in_span) {
        // nearest point is the radial clamp; exact since radial distance is
        // 1-Lipschitz in t and the aligned radial segment lies in the box
        if (t < box.t_lo) return box.t_lo - t;
        if (t > box.t_hi) return t - box.t_hi;
        return 0.0;
    }
    // outside the angular span: nearest point sits on the closer radial edge
    double d1 = dist_to_radial_segment(z, box.theta_lo, box.t_lo, box.t_hi);
    double d2 = dist_to_radial_segment(z, box.theta_hi, box.t_lo, box.t_hi);
    return std::min(d1, d2);
}

bool CarlesonSquare::contains(const DiskPoint& z) const {
    if (whole_disk()) return true;
    double gap = 1.0 - z.abs();
    if (!(gap > 0.0 && gap < side)) return false;
    double d = std::remainder(z.angle() - center_angle, 2.0 * M_PI);
    return std::fabs(d) < M_PI * side;
}

CarlesonSquare square_of_point(const DiskPoint& z) {
    return CarlesonSquare{z.angle(), 1.0 - z.abs()};
}

CarlesonSquare dilate(const CarlesonSquare& q, int n) {
    double s = std::ldexp(q.side, n);
    return CarlesonSquare{q.center_angle, std::min(s, 1.0)};
}

} // namespace blaschke_approx
